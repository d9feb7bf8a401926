#ifndef MISE_SIM_HPP
#define MISE_SIM_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "mise/policy.hpp"
#include "mise/scheduler.hpp"
#include "mise/slowdown.hpp"
#include "mise/types.hpp"
#include "mise/workload.hpp"

namespace mise {

enum class PolicyKind { FrFcfs, AlwaysPrioritize, MiseQos, MiseFair };

struct SimConfig {
  DramConfig dram;
  PolicyKind policy = PolicyKind::FrFcfs;
  QosConfig qos;
  FairConfig fair;
  std::uint64_t seed = 1;
  cycle_t horizon = 2'000'000;
  cycle_t epoch_len = 10'000;
  cycle_t interval_len = 1'000'000;
  // Ablation switch: feed the policies STFM estimates instead of MISE ones.
  bool policies_use_stfm = false;

  void validate(std::size_t num_apps) const;
};

// Everything recorded at one interval boundary for one app.
struct IntervalRecord {
  EpochCounters counters;       // tallies of the finished interval
  SlowdownEstimate estimate;
  double share = 0.0;           // bandwidth weight held during the interval
  std::uint64_t instr_end = 0;  // cumulative instructions retired at the end
  cycle_t last_retire_cycle = 0;  // cycle instruction #instr_end retired
};

struct AppResult {
  std::uint64_t instructions_retired = 0;
  std::uint64_t requests_generated = 0;
  std::uint64_t requests_serviced = 0;
  std::uint64_t requests_pending = 0;
  cycle_t stall_cycles = 0;
  double shared_ipc = 0.0;  // instructions_retired / total cycles
  std::vector<IntervalRecord> intervals;
  std::vector<cycle_t> mark_cycles;  // retire cycles of requested marks
};

struct SimResult {
  std::uint64_t seed = 0;
  cycle_t total_cycles = 0;
  std::uint32_t num_intervals = 0;
  std::vector<AppResult> apps;
  std::vector<double> fair_bound_history;        // current_B per interval
  std::vector<BoundStatus> qos_status_history;   // bound status per interval
};

// One bank service, for exclusivity checks and debugging.
struct ServiceEvent {
  cycle_t start = 0;
  cycle_t latency = 0;
  app_id_t app = 0;
  std::uint32_t channel = 0;
  std::uint32_t bank = 0;
  std::uint64_t row = 0;
  bool row_hit = false;
};
using ServiceLog = std::vector<ServiceEvent>;

struct RunOptions {
  // Per-app sorted instruction counts whose retire cycles are recorded into
  // AppResult::mark_cycles (used by the alone-run oracle).
  const std::vector<std::vector<std::uint64_t>>* retire_marks = nullptr;
  ServiceLog* service_log = nullptr;
  // Overrides for the per-app stream seeds (default: derive_stream_seeds).
  const std::vector<std::uint64_t>* stream_seeds = nullptr;
  // Explicit request streams, bypassing generation entirely.
  const std::vector<RequestStream>* streams = nullptr;
};

// Per-app stream seeds derived from the run seed; position in the original
// app list is part of the derivation, so an alone replay of app i must use
// element i of the seeds derived for the shared run.
std::vector<std::uint64_t> derive_stream_seeds(std::uint64_t seed,
                                               std::size_t num_apps);

// Pure three-latency open-page timing: row hit, closed bank, or conflict.
// Requires bank.busy_until <= now; the returned bank holds the request's row
// open and is busy until now + latency.
std::pair<cycle_t, BankState> service_request(const BankState& bank,
                                              const MemRequest& req,
                                              const DramConfig& cfg,
                                              cycle_t now);

// Cycle-by-cycle simulation state. step() advances exactly one cycle: cores
// retire or stall, each channel services at most one ready request, and all
// counters advance. Tests drive this directly; everyone else goes through
// run_simulation.
class Simulation {
 public:
  Simulation(const SimConfig& cfg, const std::vector<AppSpec>& apps,
             const RunOptions& opts);
  Simulation(const SimConfig& cfg, const std::vector<AppSpec>& apps)
      : Simulation(cfg, apps, RunOptions{}) {}
  ~Simulation();

  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  void step();
  void run_to_horizon();
  SimResult finish();

  cycle_t now() const;
  CoreState core_state(app_id_t app) const;
  const BankState& bank_state(std::uint32_t channel, std::uint32_t bank) const;
  std::size_t queued_requests(std::uint32_t channel) const;
  app_id_t current_hp_app() const;
  const BandwidthShares& current_shares() const;

 private:
  struct Impl;
  Impl* impl_;
};

SimResult run_simulation(const SimConfig& cfg, const std::vector<AppSpec>& apps,
                         const RunOptions& opts);
SimResult run_simulation(const SimConfig& cfg, const std::vector<AppSpec>& apps);

}  // namespace mise

#endif  // MISE_SIM_HPP
