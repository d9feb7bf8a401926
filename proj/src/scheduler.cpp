#include "mise/scheduler.hpp"

#include <cmath>

namespace mise {

BandwidthShares BandwidthShares::equal(std::size_t num_apps) {
  BandwidthShares s;
  s.weights.assign(num_apps, 1.0 / static_cast<double>(num_apps));
  return s;
}

BandwidthShares BandwidthShares::single(app_id_t app, std::size_t num_apps) {
  BandwidthShares s;
  s.weights.assign(num_apps, 0.0);
  s.weights.at(app) = 1.0;
  return s;
}

void BandwidthShares::validate() const {
  if (weights.empty()) throw ConfigError("BandwidthShares: no apps");
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0 || !std::isfinite(w))
      throw ConfigError("BandwidthShares: negative or non-finite weight");
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-9)
    throw ConfigError("BandwidthShares: weights must sum to 1");
}

namespace {

struct PickKey {
  bool row_hit;
  cycle_t arrival;
  app_id_t app;
  std::size_t position;

  // True if this request should be serviced before `other`.
  bool beats(const PickKey& other) const {
    if (row_hit != other.row_hit) return row_hit;
    if (arrival != other.arrival) return arrival < other.arrival;
    if (app != other.app) return app < other.app;
    return position < other.position;
  }
};

}  // namespace

std::size_t frfcfs_pick(std::span<const MemRequest> queue,
                        std::span<const BankState> banks, cycle_t now) {
  std::size_t best = kNoPick;
  PickKey best_key{};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const MemRequest& req = queue[i];
    const BankState& bank = banks[req.bank];
    if (bank.busy(now)) continue;
    PickKey key{bank.row_open && bank.open_row == req.row, req.arrival_cycle,
                req.app_id, i};
    if (best == kNoPick || key.beats(best_key)) {
      best = i;
      best_key = key;
    }
  }
  return best;
}

std::size_t priority_overlay_pick(std::span<const MemRequest> queue,
                                  std::span<const BankState> banks, cycle_t now,
                                  app_id_t hp_app) {
  std::size_t best = kNoPick;
  PickKey best_key{};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const MemRequest& req = queue[i];
    if (req.app_id != hp_app) continue;
    const BankState& bank = banks[req.bank];
    if (bank.busy(now)) continue;
    PickKey key{bank.row_open && bank.open_row == req.row, req.arrival_cycle,
                req.app_id, i};
    if (best == kNoPick || key.beats(best_key)) {
      best = i;
      best_key = key;
    }
  }
  if (best != kNoPick) return best;
  return frfcfs_pick(queue, banks, now);
}

std::pair<app_id_t, RngState> lottery_draw(const BandwidthShares& shares,
                                           RngState rng) {
  double total = 0.0;
  for (double w : shares.weights) total += w;
  if (total <= 0.0)
    throw ConfigError("lottery_draw: all bandwidth weights are zero");

  auto [next, value] = splitmix_next(rng);
  const double u = static_cast<double>(value) * 0x1.0p-64;

  double cum = 0.0;
  app_id_t last_nonzero = 0;
  for (std::size_t i = 0; i < shares.weights.size(); ++i) {
    if (shares.weights[i] > 0.0) last_nonzero = static_cast<app_id_t>(i);
    cum += shares.weights[i];
    if (u < cum) return {static_cast<app_id_t>(i), next};
  }
  // Rounding left u >= cum; fall back to the last app with weight.
  return {last_nonzero, next};
}

}  // namespace mise
