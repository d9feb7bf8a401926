#include "mise/policy.hpp"

#include <algorithm>
#include <cmath>

namespace mise {

std::pair<PolicyOutcome, QosState> qos_adjust(const SlowdownEstimate& est,
                                              const QosConfig& cfg,
                                              const BandwidthShares& shares,
                                              QosState state) {
  const std::size_t n = shares.size();
  cfg.validate(n);
  shares.validate();

  const double floor_share = 1.0 / static_cast<double>(n);
  double aoi_share = shares[cfg.aoi];
  const double slowdown = est.mise_slowdown;

  if (slowdown > cfg.bound) {
    aoi_share = std::min(1.0, aoi_share + cfg.step);
  } else if (slowdown < cfg.bound * (1.0 - cfg.hysteresis)) {
    aoi_share = std::max(floor_share, aoi_share - cfg.step);
  }

  PolicyOutcome out;
  out.shares.weights.assign(n, 0.0);
  out.shares.weights[cfg.aoi] = aoi_share;
  if (n > 1) {
    const double rest = (1.0 - aoi_share) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
      if (i != cfg.aoi) out.shares.weights[i] = rest;
  } else {
    out.shares.weights[cfg.aoi] = 1.0;
  }

  // Unmeetable only after the AoI has held the full share for the configured
  // patience while still exceeding the bound.
  if (shares[cfg.aoi] >= 1.0 - 1e-12 && slowdown > cfg.bound) {
    ++state.unmeetable_streak;
  } else {
    state.unmeetable_streak = 0;
  }

  if (state.unmeetable_streak >= cfg.unmeetable_patience) {
    out.bound_status = BoundStatus::Unmeetable;
  } else if (slowdown > cfg.bound) {
    out.bound_status = BoundStatus::AtRisk;
  } else {
    out.bound_status = BoundStatus::Met;
  }
  return {out, state};
}

std::optional<bool> qos_bound_met_prediction(
    std::span<const SlowdownEstimate> aoi_post_warmup, const QosConfig& cfg) {
  if (aoi_post_warmup.empty()) return std::nullopt;
  double sum = 0.0;
  for (const auto& e : aoi_post_warmup) sum += e.mise_slowdown;
  return sum / static_cast<double>(aoi_post_warmup.size()) <= cfg.bound;
}

BandwidthShares always_prioritize_shares(app_id_t aoi, std::size_t num_apps) {
  if (num_apps < 1 || aoi >= num_apps)
    throw ConfigError("always_prioritize_shares: aoi out of range");
  return BandwidthShares::single(aoi, num_apps);
}

namespace {

// Shares proportional to `weight`, floored at min_share, summing to 1.
// Apps pinned at the floor are removed and the remainder redistributed
// until every unpinned share clears the floor.
std::vector<double> proportional_with_floor(const std::vector<double>& weight,
                                            double min_share) {
  const std::size_t n = weight.size();
  std::vector<double> shares(n, 0.0);
  std::vector<bool> pinned(n, false);

  for (std::size_t round = 0; round < n; ++round) {
    double free_mass = 1.0;
    double free_weight = 0.0;
    std::size_t free_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (pinned[i]) {
        free_mass -= min_share;
      } else {
        free_weight += weight[i];
        ++free_count;
      }
    }
    if (free_count == 0) break;

    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (pinned[i]) {
        shares[i] = min_share;
        continue;
      }
      shares[i] = free_weight > 0.0
                      ? free_mass * weight[i] / free_weight
                      : free_mass / static_cast<double>(free_count);
      if (shares[i] < min_share) {
        pinned[i] = true;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return shares;
}

}  // namespace

std::pair<PolicyOutcome, FairState> fair_adjust(
    std::span<const SlowdownEstimate> ests, const FairConfig& cfg,
    const BandwidthShares& shares, FairState state) {
  const std::size_t n = shares.size();
  cfg.validate(n);
  if (ests.size() != n)
    throw ConfigError("fair_adjust: need exactly one estimate per app");

  std::vector<double> weight(n, 0.0);
  double max_est = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = std::max(ests[i].mise_slowdown, 1e-9);
    weight[i] = cfg.exponent == 1.0 ? s : std::pow(s, cfg.exponent);
    max_est = std::max(max_est, ests[i].mise_slowdown);
  }

  PolicyOutcome out;
  out.shares.weights = proportional_with_floor(weight, cfg.min_share);

  // Dynamic bound: widen when unattainable, tighten when easily met.
  if (max_est > state.bound_B) {
    ++state.over_streak;
    state.under_streak = 0;
  } else if (max_est < state.bound_B - cfg.delta) {
    ++state.under_streak;
    state.over_streak = 0;
  } else {
    state.over_streak = 0;
    state.under_streak = 0;
  }
  if (state.over_streak >= cfg.patience) {
    state.bound_B += cfg.delta;
    state.over_streak = 0;
  } else if (state.under_streak >= cfg.patience) {
    state.bound_B = std::max(1.0, state.bound_B - cfg.delta);
    state.under_streak = 0;
  }

  out.current_B = state.bound_B;
  out.bound_status =
      max_est <= state.bound_B ? BoundStatus::Met : BoundStatus::AtRisk;
  return {out, state};
}

}  // namespace mise
