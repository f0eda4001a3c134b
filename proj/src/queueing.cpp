#include "paging/queueing.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "paging/format.hpp"

namespace paging {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// T_a - T_b with saturation folded in: +inf when only `a` diverges, -inf when
// only `b` does, NaN when both do.
double time_difference(const PagingSchemeConfig& a, const PagingSchemeConfig& b, double rate) {
  const QueueMetrics ma = mean_system_time(a, rate);
  const QueueMetrics mb = mean_system_time(b, rate);
  if (ma.divergent() && mb.divergent()) return std::numeric_limits<double>::quiet_NaN();
  if (ma.divergent()) return kInf;
  if (mb.divergent()) return -kInf;
  return ma.mean_system_time - mb.mean_system_time;
}

}  // namespace

void PagingSchemeConfig::validate() const {
  if (channels < 1) throw InvalidArgument("scheme '" + name + "': channels must be >= 1");
  if (!(mean_service_time > 0.0) || !std::isfinite(mean_service_time))
    throw InvalidArgument("scheme '" + name + "': mean_service_time must be positive");
}

QueueMetrics mean_system_time(const PagingSchemeConfig& scheme, double arrival_rate) {
  scheme.validate();
  if (!(arrival_rate >= 0.0)) throw InvalidArgument("mean_system_time: arrival rate must be >= 0");
  const double traffic = scheme.offered_traffic(arrival_rate);
  const double c = scheme.channels;
  if (traffic >= c) return {1.0, kInf};
  const double pwait = erlang_c(scheme.channels, traffic);
  const double mu = scheme.service_rate();
  return {pwait, pwait / (mu * (c - traffic)) + scheme.mean_service_time};
}

double find_crossover(const PagingSchemeConfig& a, const PagingSchemeConfig& b,
                      std::pair<double, double> bracket) {
  auto [lo, hi] = bracket;
  if (!(lo >= 0.0) || !(hi > lo)) throw InvalidArgument("find_crossover: bracket must satisfy 0 <= lo < hi");
  if (mean_system_time(a, lo).divergent() || mean_system_time(b, lo).divergent())
    throw Instability("find_crossover: a scheme is already saturated at the lower bracket end");

  // Both saturated at the top: pull the upper end back to the first pole.
  const double first_pole = std::min(a.saturation_rate(), b.saturation_rate());
  if (hi > first_pole) hi = first_pole;

  double f_lo = time_difference(a, b, lo);
  double f_hi = time_difference(a, b, hi);
  if (std::isnan(f_hi)) throw Instability("find_crossover: both schemes saturate at the same rate");
  if (f_lo == 0.0 && f_hi == 0.0)
    throw NoSignChange("find_crossover: mean system times coincide on the bracket");
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi))
    throw NoSignChange("find_crossover: no sign change of T_a - T_b on the bracket");

  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = time_difference(a, b, mid);
    if (std::isfinite(f_mid) && std::abs(f_mid) <= kCrossoverTolerance) return mid;
    if (mid <= lo || mid >= hi) break;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  // The interval collapsed onto a jump, not a root: a saturation pole.
  throw Instability("find_crossover: a scheme saturates inside the bracket before the curves cross");
}

double default_crossover(const PagingSchemeConfig& a, const PagingSchemeConfig& b) {
  return find_crossover(a, b, {0.0, std::min(a.saturation_rate(), b.saturation_rate())});
}

std::vector<CurveRow> sweep_curves(std::span<const PagingSchemeConfig> schemes,
                                   std::span<const double> arrival_rates) {
  for (std::size_t i = 0; i < arrival_rates.size(); ++i) {
    if (!(arrival_rates[i] >= 0.0)) throw InvalidArgument("sweep_curves: arrival rates must be >= 0");
    if (i > 0 && !(arrival_rates[i] > arrival_rates[i - 1]))
      throw InvalidArgument("sweep_curves: grid must be strictly increasing");
  }
  std::vector<CurveRow> rows;
  rows.reserve(arrival_rates.size());
  for (double rate : arrival_rates) {
    CurveRow row{rate, {}};
    row.per_scheme.reserve(schemes.size());
    for (const auto& scheme : schemes) row.per_scheme.push_back(mean_system_time(scheme, rate));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> arrival_grid(double first, double last, double step) {
  if (!(step > 0.0) || !(last >= first) || !(first >= 0.0))
    throw InvalidArgument("arrival_grid: need 0 <= first <= last and step > 0");
  const auto count = static_cast<std::size_t>(std::floor((last - first) / step + 0.5)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = first + static_cast<double>(i) * step;
  return grid;
}

void write_curves_csv(std::ostream& out, std::span<const PagingSchemeConfig> schemes,
                      std::span<const CurveRow> rows) {
  out << "lambda";
  for (const auto& s : schemes) out << ',' << s.name << "_pwait," << s.name << "_T";
  out << '\n';
  for (const auto& row : rows) {
    out << format_number(row.arrival_rate);
    for (const auto& m : row.per_scheme)
      out << ',' << format_number(m.wait_probability) << ',' << format_number(m.mean_system_time);
    out << '\n';
  }
}

}  // namespace paging
