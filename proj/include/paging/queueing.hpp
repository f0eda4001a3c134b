#pragma once

#include <concepts>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "paging/error.hpp"

namespace paging {

/// Erlang-B loss probability for `channels` servers offered `traffic` Erlang.
///
/// Evaluated with the recurrence B(0) = 1, B(k) = A B(k-1) / (k + A B(k-1)),
/// which never forms A^C or C! and stays in [0, 1] for any channel count.
template <std::floating_point Scalar>
Scalar erlang_b(int channels, Scalar traffic) {
  if (channels < 1) throw InvalidArgument("erlang_b: channels must be >= 1");
  if (!(traffic >= Scalar(0))) throw InvalidArgument("erlang_b: traffic must be >= 0");
  Scalar b = 1;
  for (int k = 1; k <= channels; ++k) b = traffic * b / (Scalar(k) + traffic * b);
  return b;
}

/// Erlang-C probability that an arrival has to queue (the quantity the paging
/// literature calls "blocking probability", although nothing is blocked in a
/// delay system). Returns exactly 1 once traffic >= channels.
template <std::floating_point Scalar>
Scalar erlang_c(int channels, Scalar traffic) {
  if (channels < 1) throw InvalidArgument("erlang_c: channels must be >= 1");
  if (!(traffic >= Scalar(0))) throw InvalidArgument("erlang_c: traffic must be >= 0");
  const Scalar c = Scalar(channels);
  if (traffic >= c) return Scalar(1);
  const Scalar b = erlang_b(channels, traffic);
  return c * b / (c - traffic * (Scalar(1) - b));
}

/// A paging scheme modelled as an M/M/C queue: C parallel paging servers,
/// each with exponential service of the given mean.
struct PagingSchemeConfig {
  std::string name;
  int channels = 1;
  double mean_service_time = 1.0;

  double service_rate() const { return 1.0 / mean_service_time; }
  /// Arrival rate at which offered traffic reaches the channel count.
  double saturation_rate() const { return channels / mean_service_time; }
  double offered_traffic(double arrival_rate) const { return arrival_rate * mean_service_time; }

  void validate() const;

  static PagingSchemeConfig sequential() { return {"seq", 7, 1.0}; }
  static PagingSchemeConfig concurrent() { return {"conc", 14, 1.5}; }
};

struct QueueMetrics {
  double wait_probability = 0.0;
  /// +infinity marks an unstable queue (offered traffic >= channels).
  double mean_system_time = 0.0;

  bool divergent() const { return mean_system_time == std::numeric_limits<double>::infinity(); }
};

/// Erlang-C wait probability and mean time in system, T = Pc / (mu (C - A)) + 1/mu,
/// at the given arrival rate. Saturated queues yield Pc = 1 and T = +inf.
QueueMetrics mean_system_time(const PagingSchemeConfig& scheme, double arrival_rate);

/// Absolute tolerance on |T_a - T_b| at the returned crossover.
inline constexpr double kCrossoverTolerance = 1e-6;

/// Arrival rate at which the two schemes' mean system times are equal,
/// located by bisection inside [bracket.first, bracket.second].
///
/// Throws NoSignChange when the time difference keeps its sign over the
/// bracket and Instability when a scheme is already saturated at the lower end
/// or the only sign change is a saturation pole rather than a crossing.
double find_crossover(const PagingSchemeConfig& a, const PagingSchemeConfig& b,
                      std::pair<double, double> bracket);

/// Crossover of the two schemes searched over their common stable region.
double default_crossover(const PagingSchemeConfig& a, const PagingSchemeConfig& b);

struct CurveRow {
  double arrival_rate = 0.0;
  std::vector<QueueMetrics> per_scheme;
};

std::vector<CurveRow> sweep_curves(std::span<const PagingSchemeConfig> schemes,
                                   std::span<const double> arrival_rates);

/// Evenly spaced grid first, first+step, ... up to last (inclusive within half a step).
std::vector<double> arrival_grid(double first, double last, double step);

/// CSV with header `lambda,<scheme>_pwait,<scheme>_T,...`.
void write_curves_csv(std::ostream& out, std::span<const PagingSchemeConfig> schemes,
                      std::span<const CurveRow> rows);

}  // namespace paging
