#ifndef MISE_WORKLOAD_HPP
#define MISE_WORKLOAD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mise/types.hpp"

namespace mise {

enum class AppKind { Synthetic, Trace };

// Behavioral description of one application. Synthetic apps are closed-form
// generators with two knobs that matter to the slowdown model: memory
// intensity (compute_gap) and row-buffer locality (row_locality). Trace apps
// replay a recorded request stream from a file.
struct AppSpec {
  AppKind kind = AppKind::Synthetic;
  std::uint64_t compute_gap = 100;   // instructions between memory requests
  double row_locality = 0.9;         // P(next request reuses the current row)
  std::uint32_t working_rows = 64;   // distinct rows cycled through
  std::uint32_t mlp_limit = 1;       // max outstanding requests
  std::uint64_t instruction_budget = 0;  // 0: sized to the run horizon
  std::string trace_path;

  void validate() const {
    if (row_locality < 0.0 || row_locality > 1.0)
      throw ConfigError("AppSpec: row_locality must be in [0,1]");
    if (mlp_limit < 1) throw ConfigError("AppSpec: mlp_limit must be >= 1");
    if (kind == AppKind::Synthetic && working_rows < 1)
      throw ConfigError("AppSpec: working_rows must be >= 1");
    if (kind == AppKind::Trace && trace_path.empty())
      throw ConfigError("AppSpec: trace app needs a trace_path");
  }
};

// One memory access preceded by instruction_gap compute instructions.
struct StreamEntry {
  std::uint64_t instruction_gap;
  std::uint32_t channel;
  std::uint32_t bank;
  std::uint64_t row;
};

// Finite, reproducible request stream. The address sequence depends only on
// (AppSpec, seed, DramConfig geometry), never on service timing, so the
// alone-run replay sees the identical stream as the shared run.
struct RequestStream {
  std::vector<StreamEntry> entries;

  std::uint64_t total_instructions() const {
    std::uint64_t n = 0;
    for (const auto& e : entries) n += e.instruction_gap + 1;
    return n;
  }
};

// Deterministic synthetic stream covering at least `budget` instructions
// (spec.instruction_budget if set, else the caller passes the run horizon).
RequestStream gen_app_stream(const AppSpec& spec, std::uint64_t seed,
                             const DramConfig& dram, std::uint64_t budget);

// Streaming microbenchmark family; higher level = higher memory intensity
// (smaller compute gap). Levels 1..8.
AppSpec microbench_spec(int intensity_level);

// Plain-text trace: one `instruction_gap,address` pair per line, decimal
// unsigned integers, `#` starts a comment line. Addresses are block
// addresses, decomposed as channel = addr % C, bank = (addr / C) % B,
// row = addr / (B*C).
RequestStream parse_trace(const std::string& path, const DramConfig& dram);

}  // namespace mise

#endif  // MISE_WORKLOAD_HPP
