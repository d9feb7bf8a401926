#ifndef MISE_POLICY_HPP
#define MISE_POLICY_HPP

#include <optional>
#include <span>
#include <utility>

#include "mise/scheduler.hpp"
#include "mise/slowdown.hpp"
#include "mise/types.hpp"

namespace mise {

// Soft slowdown guarantee for one application of interest: give the AoI just
// enough bandwidth to meet `bound`, leave the rest to the other apps.
struct QosConfig {
  app_id_t aoi = 0;
  double bound = 2.0;                 // slowdown bound, > 1
  double step = 1.0 / 16.0;           // additive share increment
  double hysteresis = 0.05;           // dead band below the bound
  int unmeetable_patience = 3;        // intervals at full share before giving up

  void validate(std::size_t num_apps) const {
    if (aoi >= num_apps) throw ConfigError("QosConfig: aoi out of range");
    if (bound <= 1.0) throw ConfigError("QosConfig: bound must be > 1");
    if (step <= 0.0 || step > 1.0) throw ConfigError("QosConfig: bad step");
    if (hysteresis < 0.0 || hysteresis >= 1.0)
      throw ConfigError("QosConfig: hysteresis must be in [0,1)");
    if (unmeetable_patience < 1)
      throw ConfigError("QosConfig: unmeetable_patience must be >= 1");
  }
};

// Fairness controller: shares proportional to estimated slowdowns, plus a
// dynamic per-system slowdown bound B that widens when unattainable and
// tightens when easily met.
struct FairConfig {
  double initial_bound = 3.0;
  double delta = 0.1;        // bound adjustment step
  int patience = 2;          // consecutive intervals before adjusting B
  double min_share = 0.02;   // floor per app
  double exponent = 1.0;     // share_i ~ slowdown_i^exponent

  void validate(std::size_t num_apps) const {
    if (initial_bound <= 1.0)
      throw ConfigError("FairConfig: initial bound must be > 1");
    if (delta <= 0.0) throw ConfigError("FairConfig: delta must be > 0");
    if (patience < 1) throw ConfigError("FairConfig: patience must be >= 1");
    if (min_share < 0.0 || min_share * static_cast<double>(num_apps) >= 1.0)
      throw ConfigError("FairConfig: min_share * num_apps must be < 1");
  }
};

enum class BoundStatus { Met, AtRisk, Unmeetable };

struct PolicyOutcome {
  BandwidthShares shares;
  BoundStatus bound_status = BoundStatus::Met;  // QoS only
  double current_B = 0.0;                       // Fair only
};

struct QosState {
  int unmeetable_streak = 0;  // consecutive intervals at share 1.0 over bound
};

struct FairState {
  double bound_B = 3.0;
  int over_streak = 0;
  int under_streak = 0;
};

// One QoS control step for the AoI's latest estimate. Returns the next
// interval's shares plus the advanced controller state.
std::pair<PolicyOutcome, QosState> qos_adjust(const SlowdownEstimate& est,
                                              const QosConfig& cfg,
                                              const BandwidthShares& shares,
                                              QosState state);

// Predicted-met iff the mean post-warmup estimated slowdown of the AoI is
// within the bound. Empty when no post-warmup interval exists yet.
std::optional<bool> qos_bound_met_prediction(
    std::span<const SlowdownEstimate> aoi_post_warmup, const QosConfig& cfg);

// The naive baseline: full weight on the AoI. Under the work-conserving
// scheduler other apps are served only when the AoI has no ready request.
BandwidthShares always_prioritize_shares(app_id_t aoi, std::size_t num_apps);

// One fairness control step: next shares proportional to the estimated
// slowdowns (floored at min_share), and the bound B nudged by delta after
// `patience` consecutive intervals above or comfortably below it.
std::pair<PolicyOutcome, FairState> fair_adjust(
    std::span<const SlowdownEstimate> ests, const FairConfig& cfg,
    const BandwidthShares& shares, FairState state);

}  // namespace mise

#endif  // MISE_POLICY_HPP
