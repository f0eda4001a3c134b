#pragma once

#include <cstdint>
#include <iosfwd>
#include <variant>
#include <vector>

#include "paging/traffic.hpp"

namespace paging {

/// M/M/c FIFO run. Arrivals are Poisson, either at a constant rate or
/// piecewise-constant following a TrafficSeries (sample i covers
/// [i * period, (i + 1) * period); no arrivals after the last sample).
struct SimConfig {
  int channels = 1;
  double mean_service_time = 1.0;
  std::variant<double, TrafficSeries> arrivals = 1.0;
  double horizon = 1e5;
  double warmup = 1e4;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  int batches = 20;
  std::size_t min_arrivals = 1000;

  void validate() const;
  bool homogeneous() const { return std::holds_alternative<double>(arrivals); }

  /// Constant-rate run sized for roughly `arrivals_wanted` post-warmup arrivals
  /// with the conventional 10% warmup.
  static SimConfig for_arrivals(int channels, double mean_service_time, double arrival_rate,
                                std::size_t arrivals_wanted, std::uint64_t seed);
};

struct SimResult {
  std::size_t arrivals = 0;  // post-warmup arrivals, all of them served to completion
  std::size_t served = 0;
  std::size_t waited = 0;
  double wait_probability_hat = 0.0;
  double mean_system_time_hat = 0.0;
  double mean_in_system_hat = 0.0;  // time average over [warmup, horizon]
  double ci95_wait = 0.0;  // max(batch means, Wilson binomial) half-width
  double ci95_system_time = 0.0;
  double ci95_in_system = 0.0;
};

/// Runs one replication. Customers arriving in [warmup, horizon] are tracked
/// until they depart; their statistics feed batch-means 95% intervals.
/// Optionally writes `arrival,service_start,departure` per customer to `trace`.
/// Throws DegenerateHorizon when fewer than `min_arrivals` customers arrive
/// after warmup.
SimResult simulate(const SimConfig& config, std::ostream* trace = nullptr);

/// Independent replications on streams 0..count-1 of the same seed, run concurrently.
std::vector<SimResult> replicate(const SimConfig& config, int count);

/// Little's law: time-average number in system within three combined CI
/// half-widths of arrival_rate * mean system time.
bool little_check(const SimResult& result, double arrival_rate);

/// Two-sided 95% Student t quantile.
double student_t_975(int degrees_of_freedom);

}  // namespace paging
