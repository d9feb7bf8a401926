#ifndef MISE_SCHEDULER_HPP
#define MISE_SCHEDULER_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "mise/rng.hpp"
#include "mise/types.hpp"

namespace mise {

// Per-app probability weights enforced by one lottery draw per epoch.
struct BandwidthShares {
  std::vector<double> weights;

  static BandwidthShares equal(std::size_t num_apps);
  static BandwidthShares single(app_id_t app, std::size_t num_apps);

  std::size_t size() const { return weights.size(); }
  double operator[](std::size_t i) const { return weights[i]; }

  // Weights must be non-negative and sum to 1 within 1e-9.
  void validate() const;
};

inline constexpr std::size_t kNoPick = static_cast<std::size_t>(-1);

// FR-FCFS over requests whose bank is free at `now`: row-buffer hits first,
// then oldest arrival; ties broken by lowest app_id, then queue position.
// `banks` is indexed by MemRequest::bank. Returns a queue index or kNoPick.
std::size_t frfcfs_pick(std::span<const MemRequest> queue,
                        std::span<const BankState> banks, cycle_t now);

// If hp_app has a serviceable request, pick among hp_app's requests by
// FR-FCFS order; otherwise fall back to plain FR-FCFS (work-conserving).
std::size_t priority_overlay_pick(std::span<const MemRequest> queue,
                                  std::span<const BankState> banks, cycle_t now,
                                  app_id_t hp_app);

// Selects an app with probability equal to its weight: one generator draw
// mapped onto cumulative weights in ascending app_id order.
std::pair<app_id_t, RngState> lottery_draw(const BandwidthShares& shares,
                                           RngState rng);

}  // namespace mise

#endif  // MISE_SCHEDULER_HPP
