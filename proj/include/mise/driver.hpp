#ifndef MISE_DRIVER_HPP
#define MISE_DRIVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "mise/types.hpp"

namespace mise {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<cycle_t> horizon;
  std::optional<std::string> out;
  std::vector<double> bounds;  // sweep-bounds only
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;

// The three experiment commands behind the CLI. Each loads the config,
// applies overrides, runs, and writes one CSV file; errors are reported on
// stderr and mapped to the exit codes above.
int cmd_run(const std::string& config_path, const Overrides& ov);
int cmd_compare_models(const std::string& config_path, const Overrides& ov);
int cmd_sweep_bounds(const std::string& config_path, const Overrides& ov);

}  // namespace mise

#endif  // MISE_DRIVER_HPP
