#include "paging/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "paging/error.hpp"
#include "paging/format.hpp"

namespace paging {

std::string to_string(Scheme scheme) { return scheme == Scheme::Sequential ? "sequential" : "concurrent"; }

void StrategyConfig::validate() const {
  sequential.validate();
  concurrent.validate();
  if (!(threshold > 0.0) || !(threshold < sequential.saturation_rate()) || !(threshold < concurrent.saturation_rate()))
    throw InvalidArgument("strategy: threshold must lie inside both schemes' stable regions");
  if (!(hysteresis >= 0.0)) throw InvalidArgument("strategy: hysteresis must be >= 0");
  if (!(swap_penalty >= 0.0)) throw InvalidArgument("strategy: swap_penalty must be >= 0");
}

StrategyConfig StrategyConfig::defaults() {
  return for_schemes(PagingSchemeConfig::sequential(), PagingSchemeConfig::concurrent());
}

StrategyConfig StrategyConfig::for_schemes(PagingSchemeConfig sequential, PagingSchemeConfig concurrent) {
  StrategyConfig config;
  config.threshold = default_crossover(sequential, concurrent);
  config.sequential = std::move(sequential);
  config.concurrent = std::move(concurrent);
  return config;
}

Scheme decide(double predicted_load, const StrategyConfig& config, std::optional<Scheme> previous) {
  if (!(predicted_load >= 0.0)) throw InvalidArgument("decide: predicted load must be >= 0");
  const double h = config.hysteresis;
  if (!previous || h == 0.0) return predicted_load <= config.threshold ? Scheme::Sequential : Scheme::Concurrent;
  if (*previous == Scheme::Sequential)
    return predicted_load > config.threshold + h ? Scheme::Concurrent : Scheme::Sequential;
  return predicted_load <= config.threshold - h ? Scheme::Sequential : Scheme::Concurrent;
}

namespace {

void check_predictions(const TrafficSeries& series, std::span<const double> predictions, std::size_t window) {
  series.validate();
  if (window < 1 || series.size() <= window)
    throw InsufficientData("strategy: series needs more than `window` samples of history");
  if (predictions.size() != series.size() - window)
    throw DimensionMismatch("strategy: expected one prediction per step after the first window");
}

StrategyStep score(const TrafficSeries& series, std::size_t t, double predicted, Scheme scheme, bool swapped,
                   const StrategyConfig& config) {
  StrategyStep step{t, series.samples[t], predicted, scheme, swapped, mean_system_time(config.scheme(scheme), series.samples[t])};
  if (swapped && !step.metrics.divergent()) step.metrics.mean_system_time += config.swap_penalty;
  return step;
}

StrategyTrace pure_trace(const TrafficSeries& series, std::span<const double> predictions, std::size_t window,
                         Scheme scheme, const StrategyConfig& config) {
  StrategyTrace trace;
  trace.reserve(predictions.size());
  for (std::size_t i = 0; i < predictions.size(); ++i)
    trace.push_back(score(series, i + window, predictions[i], scheme, false, config));
  return trace;
}

}  // namespace

StrategyTrace run_strategy(const TrafficSeries& series, std::span<const double> predictions, std::size_t window,
                           const StrategyConfig& config) {
  config.validate();
  check_predictions(series, predictions, window);
  StrategyTrace trace;
  trace.reserve(predictions.size());
  std::optional<Scheme> previous;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    // Negative forecasts carry no meaning as a load; treat them as idle.
    const double forecast = std::max(predictions[i], 0.0);
    const Scheme scheme = decide(forecast, config, previous);
    const bool swapped = previous && *previous != scheme;
    trace.push_back(score(series, i + window, predictions[i], scheme, swapped, config));
    previous = scheme;
  }
  return trace;
}

StrategyTrace run_strategy(const TrafficSeries& series, const RbfModel& model, const StrategyConfig& config) {
  const auto w = static_cast<std::size_t>(model.window);
  if (series.size() <= w) throw InsufficientData("run_strategy: series shorter than the model window + 1");
  return run_strategy(series, predict_series(model, series.samples), w, config);
}

std::vector<double> perfect_predictions(const TrafficSeries& series, std::size_t window) {
  if (series.size() <= window) throw InsufficientData("perfect_predictions: series shorter than window + 1");
  return {series.samples.begin() + static_cast<std::ptrdiff_t>(window), series.samples.end()};
}

StrategySummary summarize(const StrategyTrace& trace) {
  StrategySummary s;
  s.steps = trace.size();
  double wait_sum = 0.0, time_sum = 0.0;
  for (const auto& step : trace) {
    wait_sum += step.metrics.wait_probability;
    if (step.swapped) ++s.swaps;
    if (step.metrics.divergent()) {
      ++s.divergent;
    } else {
      time_sum += step.metrics.mean_system_time;
    }
  }
  if (s.steps > 0) s.mean_wait_probability = wait_sum / static_cast<double>(s.steps);
  const std::size_t finite = s.steps - s.divergent;
  s.mean_system_time = finite > 0 ? time_sum / static_cast<double>(finite) : std::numeric_limits<double>::infinity();
  return s;
}

bool no_worse_than(const StrategySummary& a, const StrategySummary& b, double slack) {
  if (a.divergent != b.divergent) return a.divergent < b.divergent;
  return a.mean_system_time <= b.mean_system_time + slack;
}

StrategyComparison compare_strategies(const TrafficSeries& series, std::span<const double> predictions,
                                      std::size_t window, const StrategyConfig& config) {
  StrategyComparison c;
  c.intelligent = run_strategy(series, predictions, window, config);
  c.sequential = pure_trace(series, predictions, window, Scheme::Sequential, config);
  c.concurrent = pure_trace(series, predictions, window, Scheme::Concurrent, config);
  c.sequential_summary = summarize(c.sequential);
  c.concurrent_summary = summarize(c.concurrent);
  c.intelligent_summary = summarize(c.intelligent);
  return c;
}

StrategyComparison compare_strategies(const TrafficSeries& series, const RbfModel& model,
                                      const StrategyConfig& config) {
  const auto w = static_cast<std::size_t>(model.window);
  if (series.size() <= w) throw InsufficientData("compare_strategies: series shorter than the model window + 1");
  return compare_strategies(series, predict_series(model, series.samples), w, config);
}

void write_trace_csv(std::ostream& out, const StrategyTrace& trace) {
  out << "t,actual,predicted,scheme,pwait,T\n";
  for (const auto& s : trace)
    out << s.t << ',' << format_number(s.actual) << ',' << format_number(s.predicted) << ',' << to_string(s.scheme)
        << ',' << format_number(s.metrics.wait_probability) << ',' << format_number(s.metrics.mean_system_time)
        << '\n';
}

void write_comparison_csv(std::ostream& out, const StrategyComparison& c) {
  out << "t,actual,predicted,sequential_pwait,sequential_T,concurrent_pwait,concurrent_T,"
         "intelligent_scheme,intelligent_pwait,intelligent_T\n";
  for (std::size_t i = 0; i < c.intelligent.size(); ++i) {
    const auto& seq = c.sequential[i];
    const auto& conc = c.concurrent[i];
    const auto& smart = c.intelligent[i];
    out << smart.t << ',' << format_number(smart.actual) << ',' << format_number(smart.predicted) << ','
        << format_number(seq.metrics.wait_probability) << ',' << format_number(seq.metrics.mean_system_time) << ','
        << format_number(conc.metrics.wait_probability) << ',' << format_number(conc.metrics.mean_system_time)
        << ',' << to_string(smart.scheme) << ',' << format_number(smart.metrics.wait_probability) << ','
        << format_number(smart.metrics.mean_system_time) << '\n';
  }
}

}  // namespace paging
