#include "mise/slowdown.hpp"

#include <algorithm>
#include <cassert>

namespace mise {

std::optional<double> compute_arsr(const EpochCounters& c) {
  if (c.hp_cycles <= c.interference_cycles_hp) return std::nullopt;
  return static_cast<double>(c.hp_requests) /
         static_cast<double>(c.hp_cycles - c.interference_cycles_hp);
}

double compute_srsr(const EpochCounters& c) {
  assert(c.interval_cycles > 0);
  return static_cast<double>(c.shared_requests) /
         static_cast<double>(c.interval_cycles);
}

double estimate_alpha(const EpochCounters& c) {
  assert(c.total_cycles > 0);
  const double a = static_cast<double>(c.stall_cycles) /
                   static_cast<double>(c.total_cycles);
  return std::clamp(a, 0.0, 1.0);
}

std::optional<double> estimate_slowdown_mise(double alpha, double arsr,
                                             double srsr) {
  if (srsr <= 0.0) {
    if (alpha <= 0.0) return 1.0;  // compute-only app, no memory phase
    return std::nullopt;
  }
  return (1.0 - alpha) + alpha * (arsr / srsr);
}

std::optional<double> estimate_slowdown_stfm(const EpochCounters& c) {
  if (c.total_cycles <= c.stfm_interference_cycles) return std::nullopt;
  return static_cast<double>(c.total_cycles) /
         static_cast<double>(c.total_cycles - c.stfm_interference_cycles);
}

namespace {

double smooth(std::optional<double> prev, double raw) {
  return prev ? 0.5 * *prev + 0.5 * raw : raw;
}

}  // namespace

std::vector<SlowdownEstimate> finalize_interval(std::span<EpochCounters> counters,
                                                std::span<EstimatorState> states,
                                                std::uint32_t interval_index) {
  assert(counters.size() == states.size());
  std::vector<SlowdownEstimate> out;
  out.reserve(counters.size());

  for (std::size_t i = 0; i < counters.size(); ++i) {
    EpochCounters& c = counters[i];
    EstimatorState& st = states[i];

    SlowdownEstimate est;
    est.app_id = static_cast<app_id_t>(i);
    est.interval = interval_index;
    est.srsr = compute_srsr(c);
    est.alpha = estimate_alpha(c);

    std::optional<double> arsr = compute_arsr(c);
    if (arsr) {
      est.arsr = *arsr;
    } else if (st.prev_arsr) {
      est.arsr = *st.prev_arsr;  // reuse the previous interval's ARSR
      est.carried_forward = true;
    } else {
      est.arsr = est.srsr;  // first interval: slowdown contribution 1
      est.carried_forward = true;
    }

    std::optional<double> mise =
        estimate_slowdown_mise(est.alpha, est.arsr, est.srsr);
    if (mise) {
      est.raw_mise = *mise;
    } else {
      est.raw_mise = st.prev_raw_mise.value_or(1.0);
      est.carried_forward = true;
    }

    std::optional<double> stfm = estimate_slowdown_stfm(c);
    if (stfm) {
      est.raw_stfm = *stfm;
    } else {
      est.raw_stfm = st.prev_raw_stfm.value_or(1.0);
      est.carried_forward = true;
    }

    est.mise_slowdown = smooth(st.smoothed_mise, est.raw_mise);
    est.stfm_slowdown = smooth(st.smoothed_stfm, est.raw_stfm);

    st.prev_arsr = est.arsr;
    st.prev_raw_mise = est.raw_mise;
    st.prev_raw_stfm = est.raw_stfm;
    st.smoothed_mise = est.mise_slowdown;
    st.smoothed_stfm = est.stfm_slowdown;

    c.reset();
    out.push_back(est);
  }
  return out;
}

}  // namespace mise
