#ifndef MISE_TYPES_HPP
#define MISE_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mise {

using cycle_t = std::uint64_t;
using app_id_t = std::uint32_t;

inline constexpr int kNoOwner = -1;

// Thrown for invalid configurations (bad parameter ranges, missing files,
// inconsistent experiment setups). The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown for malformed input files; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Simplified three-latency open-page DRAM timing. A request hits if its row
// is open in the bank, pays the closed latency on an idle precharged bank,
// and the conflict latency when a different row is open. The shared data
// bus admits one service start per channel per bus_occupancy cycles.
struct DramConfig {
  std::uint32_t num_channels = 1;
  std::uint32_t banks_per_channel = 8;
  cycle_t row_hit_latency = 50;
  cycle_t row_closed_latency = 100;
  cycle_t row_conflict_latency = 150;
  cycle_t bus_occupancy = 4;

  void validate() const {
    if (num_channels < 1 || banks_per_channel < 1)
      throw ConfigError("DramConfig: need at least one channel and one bank");
    if (row_hit_latency < 1 || bus_occupancy < 1)
      throw ConfigError("DramConfig: latencies and bus_occupancy must be >= 1");
    if (!(row_hit_latency < row_closed_latency &&
          row_closed_latency < row_conflict_latency))
      throw ConfigError(
          "DramConfig: require row_hit_latency < row_closed_latency < "
          "row_conflict_latency");
  }
};

struct MemRequest {
  app_id_t app_id = 0;
  std::uint32_t channel = 0;
  std::uint32_t bank = 0;
  std::uint64_t row = 0;
  cycle_t arrival_cycle = 0;
  cycle_t completion_cycle = 0;  // meaningful once serviced
};

struct BankState {
  std::uint64_t open_row = 0;
  bool row_open = false;       // false: bank closed (precharged)
  cycle_t busy_until = 0;      // bank is servicing while busy_until > now
  int current_owner = kNoOwner;

  bool busy(cycle_t now) const { return busy_until > now; }
};

struct CoreState {
  app_id_t app_id = 0;
  std::uint64_t instructions_retired = 0;
  std::uint32_t outstanding_requests = 0;
  bool stalled = false;
  cycle_t stall_cycles = 0;
  cycle_t total_cycles = 0;
};

}  // namespace mise

#endif  // MISE_TYPES_HPP
