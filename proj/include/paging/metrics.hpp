#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace paging {

/// Predictor fidelity against the actual series x(n), predicted x_m(n):
///
///   mse   = (1/N) sum (x - x_m)^2
///   nmse  = sum (x - x_m)^2 / sum x^2
///   rmse  = sqrt(mse)
///   nrmse = sqrt(nmse)
///   prd   = 100 * nrmse            (percent root mean difference)
///
/// `pearson` is the sample correlation coefficient of actual vs predicted and
/// is empty when either series has zero variance.
struct MetricsReport {
  double mse = 0.0;
  double nmse = 0.0;
  double rmse = 0.0;
  double nrmse = 0.0;
  double prd = 0.0;
  std::optional<double> pearson;
  std::size_t n = 0;
};

MetricsReport error_metrics(std::span<const double> actual, std::span<const double> predicted);

std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

enum class CorrelationForm {
  Lagged,   // r(l) = sum_n x(n) y(n - l)
  Shifted,  // r(l) = sum_n x(n + l) y(n)
};

/// Raw cross-correlation r_xy(l) for l = -max_lag .. max_lag (index l + max_lag),
/// samples outside either series taken as zero. Both forms give the same sequence.
std::vector<double> cross_correlation(std::span<const double> x, std::span<const double> y, std::size_t max_lag,
                                      CorrelationForm form = CorrelationForm::Lagged);

/// Lag at which the cross-correlation peaks (smallest lag on ties).
long peak_lag(std::span<const double> correlation, std::size_t max_lag);

/// Column order of the predictor performance table.
inline constexpr const char* kMetricsCsvHeader = "MSE,NMSE,RMSE,NRMSE,PRD,CorrelationCoefficient";

/// One CSV row in header order; an undefined Pearson prints as "undefined".
std::string metrics_csv_row(const MetricsReport& report);

}  // namespace paging
