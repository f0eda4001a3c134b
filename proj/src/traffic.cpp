#include "paging/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>

#include "paging/error.hpp"
#include "paging/format.hpp"
#include "paging/rng.hpp"

namespace paging {

std::string to_string(TrafficKind kind) {
  switch (kind) {
    case TrafficKind::T1: return "T1";
    case TrafficKind::T2: return "T2";
    case TrafficKind::T3: return "T3";
    case TrafficKind::Custom: return "custom";
  }
  return "custom";
}

TrafficKind traffic_kind_from_string(const std::string& text) {
  if (text == "T1") return TrafficKind::T1;
  if (text == "T2") return TrafficKind::T2;
  if (text == "T3") return TrafficKind::T3;
  if (text == "custom") return TrafficKind::Custom;
  throw InvalidArgument("unknown traffic kind '" + text + "' (expected T1, T2, T3 or custom)");
}

void TrafficSeries::validate() const {
  if (samples.size() < 2) throw InvalidArgument("traffic series: need at least 2 samples");
  if (!(period > 0.0)) throw InvalidArgument("traffic series: period must be positive");
  for (double s : samples) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw InvalidArgument("traffic series: samples must be finite and >= 0");
  }
}

void TrafficSpec::validate() const {
  if (!(baseline >= 0.0)) throw InvalidArgument("traffic spec: baseline must be >= 0");
  if (!(amplitude >= 0.0)) throw InvalidArgument("traffic spec: amplitude must be >= 0");
  if (!(baseline + amplitude <= load_ceiling))
    throw InvalidArgument("traffic spec: baseline + amplitude exceeds the load ceiling");
  if (period_samples < 1) throw InvalidArgument("traffic spec: period_samples must be >= 1");
  if (!(noise_std >= 0.0)) throw InvalidArgument("traffic spec: noise_std must be >= 0");
  if (length < 2) throw InvalidArgument("traffic spec: length must be >= 2");
  if (!(sample_period > 0.0)) throw InvalidArgument("traffic spec: sample_period must be positive");
}

TrafficSpec TrafficSpec::defaults(TrafficKind kind) {
  TrafficSpec spec;
  spec.kind = kind;
  return spec;
}

double traffic_profile(TrafficKind kind, double t, int period_samples) {
  const double w = 2.0 * std::numbers::pi / period_samples;
  switch (kind) {
    case TrafficKind::T2:
      // Peaks near w t = 1.82 and 4.46 rad, a midday dip to 0.64, night minimum 0.
      return (0.5 - (std::cos(w * t) + std::cos(2.0 * w * t)) / 4.0) / (25.0 / 32.0);
    case TrafficKind::T3: {
      const double phase = std::fmod(t, static_cast<double>(period_samples)) / period_samples;
      // Cosine-eased ramps: no slope discontinuity at the plateau edges.
      auto ease = [](double u) { return 0.5 * (1.0 - std::cos(std::numbers::pi * u)); };
      if (phase < 0.25) return ease(phase / 0.25);
      if (phase < 0.5) return 1.0;
      if (phase < 0.75) return ease((0.75 - phase) / 0.25);
      return 0.0;
    }
    case TrafficKind::T1:
    case TrafficKind::Custom:
      return 0.5 * (1.0 - std::cos(w * t));
  }
  return 0.0;
}

TrafficSeries generate(const TrafficSpec& spec) {
  spec.validate();
  TrafficSeries series;
  series.period = spec.sample_period;
  series.label = spec.kind;
  series.samples.resize(static_cast<std::size_t>(spec.length));
  Rng rng(spec.seed);
  for (int i = 0; i < spec.length; ++i) {
    double load = spec.baseline + spec.amplitude * traffic_profile(spec.kind, i, spec.period_samples);
    if (spec.noise_std > 0.0) load += spec.noise_std * rng.normal();
    series.samples[static_cast<std::size_t>(i)] = std::max(load, 0.0);
  }
  return series;
}

std::pair<TrafficSeries, TrafficSeries> split(const TrafficSeries& series, double train_fraction,
                                              std::size_t min_part) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw InvalidArgument("split: train_fraction must lie in (0, 1)");
  const auto n = series.size();
  const auto cut = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
  if (cut < min_part || n - cut < min_part)
    throw InsufficientData("split: each part needs at least " + std::to_string(min_part) + " samples (got " +
                           std::to_string(cut) + "/" + std::to_string(n - cut) + ")");
  TrafficSeries train{{series.samples.begin(), series.samples.begin() + static_cast<std::ptrdiff_t>(cut)},
                      series.period, series.label};
  TrafficSeries test{{series.samples.begin() + static_cast<std::ptrdiff_t>(cut), series.samples.end()},
                     series.period, series.label};
  return {std::move(train), std::move(test)};
}

void write_series_csv(std::ostream& out, const TrafficSeries& series) {
  out << "t,load\n";
  for (std::size_t i = 0; i < series.size(); ++i)
    out << format_number(static_cast<double>(i) * series.period) << ',' << format_number(series.samples[i]) << '\n';
}

TrafficSeries read_series_csv(std::istream& in, TrafficKind label) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("series csv: empty input");
  if (line.rfind("t,load", 0) != 0) throw ParseError("series csv: expected header 't,load'");
  TrafficSeries series;
  series.label = label;
  std::vector<double> times;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("series csv line " + std::to_string(line_no) + ": expected 't,load'");
    try {
      times.push_back(parse_number(std::string_view(line).substr(0, comma)));
      series.samples.push_back(parse_number(std::string_view(line).substr(comma + 1)));
    } catch (const ParseError& e) {
      throw ParseError("series csv line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (times.size() >= 2) series.period = times[1] - times[0];
  series.validate();
  return series;
}

}  // namespace paging
