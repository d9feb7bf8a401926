#ifndef MISE_RNG_HPP
#define MISE_RNG_HPP

#include <cstdint>
#include <utility>

namespace mise {

// Fully specified 64-bit mixing generator (splitmix64). Every random choice
// in the simulator flows through this so that runs are reproducible across
// platforms and toolchains; no std::random engine is ever used.
struct RngState {
  std::uint64_t state = 0;
};

inline std::pair<RngState, std::uint64_t> splitmix_next(RngState s) {
  s.state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = s.state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return {s, z ^ (z >> 31)};
}

// Convenience wrapper: advances the state in place.
inline std::uint64_t rng_next(RngState& s) {
  auto [ns, v] = splitmix_next(s);
  s = ns;
  return v;
}

// Uniform double in [0, 1).
inline double rng_unit(RngState& s) {
  return static_cast<double>(rng_next(s)) * 0x1.0p-64;
}

// Uniform integer in [0, n). n must be > 0. Modulo bias is irrelevant at
// the ranges used here (n << 2^64).
inline std::uint64_t rng_below(RngState& s, std::uint64_t n) {
  return rng_next(s) % n;
}

}  // namespace mise

#endif  // MISE_RNG_HPP
