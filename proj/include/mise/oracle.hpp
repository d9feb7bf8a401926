#ifndef MISE_ORACLE_HPP
#define MISE_ORACLE_HPP

#include <span>
#include <vector>

#include "mise/metrics.hpp"
#include "mise/sim.hpp"

namespace mise {

class InsufficientDataError : public std::runtime_error {
 public:
  explicit InsufficientDataError(const std::string& what)
      : std::runtime_error(what) {}
};

struct AloneReplay {
  std::vector<cycle_t> mark_cycles;  // retire cycle per requested mark
  bool complete = false;             // all marks reached within the horizon
};

// Re-runs one app alone on the same memory system and stream, recording the
// cycle at which each instruction mark retires. Marks must be sorted
// non-decreasing. Both runs use identical streams because the stream seed is
// position-derived from the shared run's seed.
AloneReplay replay_alone(const AppSpec& app, const SimConfig& shared_cfg,
                         std::uint64_t stream_seed,
                         std::span<const std::uint64_t> marks);

struct OracleAppResult {
  double alone_ipc = 0.0;
  double shared_ipc = 0.0;
  double actual_slowdown = 1.0;
  double mise_err_pct = 0.0;  // mean over this app's scored intervals
  double stfm_err_pct = 0.0;
  bool valid = false;  // app retired instructions in the post-warmup window
};

struct OracleResult {
  std::vector<OracleAppResult> apps;
  double mise_mape = 0.0;     // mean abs. percentage error, apps x intervals
  double stfm_mape = 0.0;
  std::size_t samples = 0;    // (app, interval) pairs behind the means
};

// Replays every app alone against the shared run's per-interval instruction
// marks, fills actual_slowdown into the shared estimates, and computes the
// alone/shared IPCs plus both models' estimation errors. The first interval
// is warmup: its estimates get an actual filled in but are excluded from the
// error means. Windows are instruction-aligned on both sides, so a
// single-app "shared" run yields actual_slowdown of exactly 1.
OracleResult run_oracle(const SimConfig& cfg, const std::vector<AppSpec>& apps,
                        SimResult& shared);

}  // namespace mise

#endif  // MISE_ORACLE_HPP
