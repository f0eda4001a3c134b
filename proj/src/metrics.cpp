#include "paging/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "paging/error.hpp"
#include "paging/format.hpp"

namespace paging {

MetricsReport error_metrics(std::span<const double> actual, std::span<const double> predicted) {
  if (actual.size() != predicted.size())
    throw DimensionMismatch("error_metrics: series lengths differ (" + std::to_string(actual.size()) + " vs " +
                            std::to_string(predicted.size()) + ")");
  if (actual.size() < 2) throw InsufficientData("error_metrics: need at least 2 samples");

  double squared_error = 0.0;
  double energy = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double d = actual[i] - predicted[i];
    squared_error += d * d;
    energy += actual[i] * actual[i];
  }
  if (energy == 0.0) throw ZeroEnergy("error_metrics: actual series has zero energy");

  MetricsReport r;
  r.n = actual.size();
  r.mse = squared_error / static_cast<double>(r.n);
  r.nmse = squared_error / energy;
  r.rmse = std::sqrt(r.mse);
  r.nrmse = std::sqrt(r.nmse);
  r.prd = 100.0 * r.nrmse;
  r.pearson = pearson(actual, predicted);
  return r;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionMismatch("pearson: series lengths differ");
  if (x.size() < 2) return std::nullopt;
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> cross_correlation(std::span<const double> x, std::span<const double> y, std::size_t max_lag,
                                      CorrelationForm form) {
  const auto nx = static_cast<long>(x.size());
  const auto ny = static_cast<long>(y.size());
  const auto lags = static_cast<long>(max_lag);
  std::vector<double> r(2 * max_lag + 1, 0.0);
  for (long l = -lags; l <= lags; ++l) {
    double sum = 0.0;
    if (form == CorrelationForm::Lagged) {
      // x(n) y(n - l): n ranges where both indices are in bounds.
      const long lo = std::max(0L, l);
      const long hi = std::min(nx, ny + l);
      for (long n = lo; n < hi; ++n) sum += x[static_cast<std::size_t>(n)] * y[static_cast<std::size_t>(n - l)];
    } else {
      const long lo = std::max(0L, -l);
      const long hi = std::min(ny, nx - l);
      for (long n = lo; n < hi; ++n) sum += x[static_cast<std::size_t>(n + l)] * y[static_cast<std::size_t>(n)];
    }
    r[static_cast<std::size_t>(l + lags)] = sum;
  }
  return r;
}

long peak_lag(std::span<const double> correlation, std::size_t max_lag) {
  if (correlation.size() != 2 * max_lag + 1) throw DimensionMismatch("peak_lag: sequence length != 2 max_lag + 1");
  const auto best = std::max_element(correlation.begin(), correlation.end());
  return static_cast<long>(best - correlation.begin()) - static_cast<long>(max_lag);
}

std::string metrics_csv_row(const MetricsReport& r) {
  return format_number(r.mse) + ',' + format_number(r.nmse) + ',' + format_number(r.rmse) + ',' +
         format_number(r.nrmse) + ',' + format_number(r.prd) + ',' +
         (r.pearson ? format_number(*r.pearson) : std::string("undefined"));
}

}  // namespace paging
