#ifndef MISE_SLOWDOWN_HPP
#define MISE_SLOWDOWN_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mise/types.hpp"

namespace mise {

// Per-app tallies accumulated over one interval. The hp_* fields cover the
// epochs in which the app held highest memory priority; interference and
// stall counters feed the interference-corrected service-rate estimate and
// the stall-fraction estimate respectively.
struct EpochCounters {
  std::uint64_t hp_requests = 0;         // requests serviced while highest priority
  cycle_t hp_cycles = 0;                 // cycles the app held highest priority
  cycle_t interference_cycles_hp = 0;    // hp cycles still polluted by others
  std::uint64_t shared_requests = 0;     // requests serviced over the interval
  cycle_t interval_cycles = 0;
  cycle_t stall_cycles = 0;              // core stalled waiting on memory
  cycle_t total_cycles = 0;
  cycle_t stfm_interference_cycles = 0;  // oldest request blocked by others

  void reset() { *this = EpochCounters{}; }
};

struct SlowdownEstimate {
  app_id_t app_id = 0;
  std::uint32_t interval = 0;
  double arsr = 0.0;           // alone-request-service-rate (requests/cycle)
  double srsr = 0.0;           // shared-request-service-rate
  double alpha = 0.0;          // fraction of time stalled on memory
  double mise_slowdown = 1.0;  // smoothed estimate (weight 0.5 on previous)
  double stfm_slowdown = 1.0;  // smoothed stall-time baseline estimate
  double raw_mise = 1.0;       // this interval's unsmoothed values
  double raw_stfm = 1.0;
  bool carried_forward = false;             // some estimator was unavailable
  std::optional<double> actual_slowdown;    // filled by the oracle
};

// ARSR = hp_requests / (hp_cycles - interference_cycles_hp). Empty when the
// effective denominator is zero; the caller reuses the previous interval's
// value, falling back to SRSR in the first interval.
std::optional<double> compute_arsr(const EpochCounters& c);

// SRSR = shared_requests / interval_cycles.
double compute_srsr(const EpochCounters& c);

// alpha = stall_cycles / total_cycles, clamped to [0,1].
double estimate_alpha(const EpochCounters& c);

// slowdown = (1 - alpha) + alpha * arsr / srsr. Empty when srsr is zero and
// the memory phase is non-trivial (alpha > 0).
std::optional<double> estimate_slowdown_mise(double alpha, double arsr,
                                             double srsr);

// Stall-time baseline: alone-time = shared-time minus counted interference
// cycles, so slowdown = total / (total - interference). Empty when the
// counted interference swallows the whole interval.
std::optional<double> estimate_slowdown_stfm(const EpochCounters& c);

// Carry-over state for one app's estimator between intervals.
struct EstimatorState {
  std::optional<double> prev_arsr;
  std::optional<double> prev_raw_mise;
  std::optional<double> prev_raw_stfm;
  std::optional<double> smoothed_mise;
  std::optional<double> smoothed_stfm;
};

// Applies the estimators to every app's counters, smooths against the
// previous interval (weight 0.5), resets the counters, and advances the
// per-app states. Unavailable estimates carry the previous interval's value
// forward and set the carried_forward flag.
std::vector<SlowdownEstimate> finalize_interval(std::span<EpochCounters> counters,
                                                std::span<EstimatorState> states,
                                                std::uint32_t interval_index);

}  // namespace mise

#endif  // MISE_SLOWDOWN_HPP
