#ifndef MISE_METRICS_HPP
#define MISE_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

namespace mise {

// Slowdown = alone-performance / shared-performance.
inline double actual_slowdown(double alone_ipc, double shared_ipc) {
  if (shared_ipc <= 0.0)
    throw std::domain_error("actual_slowdown: shared IPC is zero");
  return alone_ipc / shared_ipc;
}

// |estimated - actual| / actual, in percent.
inline double estimation_error(double estimated, double actual) {
  if (actual <= 0.0)
    throw std::domain_error("estimation_error: actual slowdown must be > 0");
  return std::fabs(estimated - actual) / actual * 100.0;
}

// N / sum(slowdowns): harmonic mean of the per-app speedups 1/slowdown_i.
inline double harmonic_speedup(std::span<const double> slowdowns) {
  if (slowdowns.empty())
    throw std::domain_error("harmonic_speedup: empty slowdown list");
  double sum = 0.0;
  for (double s : slowdowns) {
    if (s <= 0.0) throw std::domain_error("harmonic_speedup: slowdown <= 0");
    sum += s;
  }
  return static_cast<double>(slowdowns.size()) / sum;
}

// sum(1 / slowdown_i).
inline double weighted_speedup(std::span<const double> slowdowns) {
  if (slowdowns.empty())
    throw std::domain_error("weighted_speedup: empty slowdown list");
  double sum = 0.0;
  for (double s : slowdowns) {
    if (s <= 0.0) throw std::domain_error("weighted_speedup: slowdown <= 0");
    sum += 1.0 / s;
  }
  return sum;
}

// The fairness metric: worst per-app slowdown.
inline double max_slowdown(std::span<const double> slowdowns) {
  if (slowdowns.empty())
    throw std::domain_error("max_slowdown: empty slowdown list");
  return *std::max_element(slowdowns.begin(), slowdowns.end());
}

}  // namespace mise

#endif  // MISE_METRICS_HPP
