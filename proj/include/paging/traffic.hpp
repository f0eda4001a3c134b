#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace paging {

enum class TrafficKind { T1, T2, T3, Custom };

std::string to_string(TrafficKind kind);
TrafficKind traffic_kind_from_string(const std::string& text);

/// Offered load sampled on a regular grid. Sample values are arrival rates
/// per time unit; with the unit-service sequential scheme they coincide with
/// its offered traffic in Erlang.
struct TrafficSeries {
  std::vector<double> samples;
  double period = 1.0;  // time units per sample
  TrafficKind label = TrafficKind::Custom;

  std::size_t size() const { return samples.size(); }
  void validate() const;
};

/// Parameters of a synthetic traffic generator.
///
///   T1  one diurnal peak:       s(t) = (1 - cos(w t)) / 2
///   T2  morning/evening peaks:  s(t) = (1/2 - (cos(w t) + cos(2 w t)) / 4) / (25/32)
///   T3  ramp-and-plateau:       rises over the first quarter of the period,
///                               stays high for a quarter, falls over the third
///                               and stays low for the last; ramps are
///                               half-cosines (1 - cos(pi u)) / 2
///
/// with w = 2 pi / period_samples. Every profile spans [0, 1]; the noiseless
/// load is baseline + amplitude * s(t). Additive Gaussian noise of std
/// `noise_std` is then applied and the result clamped at 0.
struct TrafficSpec {
  TrafficKind kind = TrafficKind::T1;
  double amplitude = 5.0;
  double baseline = 4.0;
  int period_samples = 96;
  double noise_std = 0.1;
  std::uint64_t seed = 42;
  int length = 960;
  double sample_period = 1.0;
  /// Upper bound for baseline + amplitude: 1.05 x the saturation arrival rate
  /// of the concurrent scheme (14 channels, 1.5 mean service time).
  double load_ceiling = 1.05 * 14.0 / 1.5;

  void validate() const;
  static TrafficSpec defaults(TrafficKind kind);
};

/// Profile value in [0, 1] at sample index t; Custom is treated as T1.
double traffic_profile(TrafficKind kind, double t, int period_samples);

TrafficSeries generate(const TrafficSpec& spec);

/// Chronological split; the first round(train_fraction * n) samples train.
/// Both parts must hold at least min_part samples.
std::pair<TrafficSeries, TrafficSeries> split(const TrafficSeries& series, double train_fraction,
                                              std::size_t min_part);

/// CSV `t,load`, with t = index * period.
void write_series_csv(std::ostream& out, const TrafficSeries& series);
TrafficSeries read_series_csv(std::istream& in, TrafficKind label = TrafficKind::Custom);

}  // namespace paging
