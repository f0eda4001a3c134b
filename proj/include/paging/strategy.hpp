#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paging/queueing.hpp"
#include "paging/rbf.hpp"
#include "paging/traffic.hpp"

namespace paging {

enum class Scheme { Sequential, Concurrent };

std::string to_string(Scheme scheme);

struct StrategyConfig {
  PagingSchemeConfig sequential = PagingSchemeConfig::sequential();
  PagingSchemeConfig concurrent = PagingSchemeConfig::concurrent();
  /// Arrival rate at which paging swaps to the concurrent scheme.
  double threshold = 0.0;
  /// Half-width of the no-switch band around the threshold.
  double hysteresis = 0.0;
  /// Time added to the mean system time of a step on which the scheme changed.
  double swap_penalty = 0.0;

  void validate() const;

  /// Default scheme pair (7 x 1.0, 14 x 1.5) with the threshold at their exact mean-time crossover.
  static StrategyConfig defaults();
  /// Given scheme pair, threshold at the crossover found over the stable region.
  static StrategyConfig for_schemes(PagingSchemeConfig sequential, PagingSchemeConfig concurrent);

  const PagingSchemeConfig& scheme(Scheme s) const { return s == Scheme::Sequential ? sequential : concurrent; }
};

/// Scheme for the next step. Without a previous choice (or with zero
/// hysteresis) this is sequential iff load <= threshold. Otherwise the current
/// scheme is kept until the load leaves [threshold - h, threshold + h]:
/// sequential moves to concurrent above threshold + h, concurrent returns to
/// sequential at or below threshold - h.
Scheme decide(double predicted_load, const StrategyConfig& config, std::optional<Scheme> previous = std::nullopt);

struct StrategyStep {
  std::size_t t = 0;
  double actual = 0.0;
  double predicted = 0.0;
  Scheme scheme = Scheme::Sequential;
  bool swapped = false;
  QueueMetrics metrics;  // at the actual load under `scheme`
};

using StrategyTrace = std::vector<StrategyStep>;

/// Decides every step t >= window from predictions[t - window] (the forecast
/// for sample t made from samples t-window .. t-1), then scores the chosen
/// scheme at the actual load series.samples[t].
StrategyTrace run_strategy(const TrafficSeries& series, std::span<const double> predictions, std::size_t window,
                           const StrategyConfig& config);

/// Same, forecasting with a frozen model.
StrategyTrace run_strategy(const TrafficSeries& series, const RbfModel& model, const StrategyConfig& config);

/// Forecasts that equal the realised load (the perfect oracle).
std::vector<double> perfect_predictions(const TrafficSeries& series, std::size_t window);

/// Time averages over a trace. Wait probability is averaged over every step;
/// divergent mean system times are excluded from `mean_system_time` and
/// counted in `divergent`.
struct StrategySummary {
  std::size_t steps = 0;
  std::size_t divergent = 0;
  std::size_t swaps = 0;
  double mean_wait_probability = 0.0;
  double mean_system_time = 0.0;
};

StrategySummary summarize(const StrategyTrace& trace);

/// True when `a` is at least as good as `b`: fewer divergent steps, or as many
/// and a mean system time no larger than b's plus `slack`.
bool no_worse_than(const StrategySummary& a, const StrategySummary& b, double slack = 0.0);

struct StrategyComparison {
  StrategyTrace sequential;
  StrategyTrace concurrent;
  StrategyTrace intelligent;
  StrategySummary sequential_summary;
  StrategySummary concurrent_summary;
  StrategySummary intelligent_summary;
};

StrategyComparison compare_strategies(const TrafficSeries& series, std::span<const double> predictions,
                                      std::size_t window, const StrategyConfig& config);
StrategyComparison compare_strategies(const TrafficSeries& series, const RbfModel& model,
                                      const StrategyConfig& config);

/// `t,actual,predicted,scheme,pwait,T`
void write_trace_csv(std::ostream& out, const StrategyTrace& trace);

/// Per-step columns for pure sequential, pure concurrent and intelligent paging.
void write_comparison_csv(std::ostream& out, const StrategyComparison& comparison);

}  // namespace paging
