#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "paging/error.hpp"
#include "paging/metrics.hpp"

using namespace paging;

namespace {

std::vector<double> random_series(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> u(-2.0, 5.0);
  std::vector<double> x(n);
  for (double& v : x) v = u(gen);
  return x;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("identical series") {
  const std::vector<double> x{1.0, 2.0, 4.0, 3.0};
  const auto m = error_metrics(x, x);
  CHECK(m.mse == 0.0);
  CHECK(m.prd == 0.0);
  REQUIRE(m.pearson.has_value());
  CHECK(*m.pearson == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("hand-evaluated two-sample example") {
  const std::vector<double> actual{3.0, 4.0};
  const std::vector<double> predicted{3.0, 3.0};
  // by hand: errors {0, 1}; sum sq 1; N 2; energy 9 + 16 = 25
  const double sq = 0.0 * 0.0 + 1.0 * 1.0;
  const double energy = 3.0 * 3.0 + 4.0 * 4.0;
  const auto m = error_metrics(actual, predicted);
  CHECK(m.mse == doctest::Approx(sq / 2).epsilon(1e-15));
  CHECK(m.mse == 0.5);
  CHECK(m.rmse == doctest::Approx(0.70710678118654752).epsilon(1e-15));
  CHECK(m.nmse == doctest::Approx(sq / energy).epsilon(1e-15));
  CHECK(m.nmse == doctest::Approx(0.04).epsilon(1e-15));
  CHECK(m.nrmse == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(m.prd == doctest::Approx(20.0).epsilon(1e-14));
  CHECK_FALSE(m.pearson.has_value());  // predicted has zero variance
  CHECK(m.n == 2);
}

TEST_CASE("error conditions") {
  const std::vector<double> zeros(5, 0.0);
  const std::vector<double> ones(5, 1.0);
  CHECK_THROWS_AS(error_metrics(zeros, ones), ZeroEnergy);
  const std::vector<double> four(4, 1.0);
  CHECK_THROWS_AS(error_metrics(ones, four), DimensionMismatch);
  const std::vector<double> single{1.0};
  CHECK_THROWS_AS(error_metrics(single, single), InsufficientData);
}

TEST_CASE("metric identities on random pairs") {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(2 + trial % 50);
    const auto x = random_series(gen, n);
    const auto y = random_series(gen, n);
    const auto m = error_metrics(x, y);
    CHECK(std::abs(m.rmse - std::sqrt(m.mse)) < 1e-12);
    CHECK(std::abs(m.prd - 100.0 * m.nrmse) < 1e-12);
    CHECK(std::abs(m.nmse - m.nrmse * m.nrmse) < 1e-12);
  }
}

TEST_CASE("pearson against a two-pass formula and its invariances") {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_series(gen, 40);
    const auto y = random_series(gen, 40);
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / 40;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / 40;
    double sxy = 0, sxx = 0, syy = 0;
    for (int i = 0; i < 40; ++i) {
      sxy += (x[i] - mx) * (y[i] - my);
      sxx += (x[i] - mx) * (x[i] - mx);
      syy += (y[i] - my) * (y[i] - my);
    }
    const double r = *pearson(x, y);
    CHECK(r == doctest::Approx(sxy / std::sqrt(sxx * syy)).epsilon(1e-12));
    std::vector<double> scaled = x;
    for (double& v : scaled) v = 3.7 * v + 11.0;
    CHECK(std::abs(*pearson(scaled, y) - r) < 1e-12);
  }
  const std::vector<double> flat(10, 2.0), other(10, 1.0);
  CHECK_FALSE(pearson(flat, other).has_value());
}

TEST_CASE("metrics are permutation covariant") {
  std::mt19937_64 gen(5);
  auto x = random_series(gen, 30);
  auto y = random_series(gen, 30);
  const auto before = error_metrics(x, y);
  std::vector<std::size_t> idx(30);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), gen);
  std::vector<double> px, py;
  for (auto i : idx) {
    px.push_back(x[i]);
    py.push_back(y[i]);
  }
  const auto after = error_metrics(px, py);
  CHECK(after.mse == doctest::Approx(before.mse).epsilon(1e-13));
  CHECK(after.nmse == doctest::Approx(before.nmse).epsilon(1e-13));
  CHECK(after.prd == doctest::Approx(before.prd).epsilon(1e-13));
  CHECK(*after.pearson == doctest::Approx(*before.pearson).epsilon(1e-12));
}

TEST_CASE("impulse cross-correlation peaks at lag -2") {
  std::vector<double> x(5, 0.0), y(5, 0.0);
  x[0] = 1.0;
  y[2] = 1.0;
  const auto r = cross_correlation(x, y, 4);
  const auto ref = oracle::cross_correlation_pairs(x, y, 4);
  CHECK(r == ref);
  CHECK(r[static_cast<std::size_t>(-2 + 4)] == 1.0);
  CHECK(peak_lag(r, 4) == -2);
}

TEST_CASE("zero lag autocorrelation is the energy") {
  const std::vector<double> x{1.0, -2.0, 3.0};
  const auto r = cross_correlation(x, x, 2);
  CHECK(r[2] == 14.0);
}

TEST_CASE("cross-correlation forms, symmetry and brute force agree") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = random_series(gen, static_cast<std::size_t>(5 + trial % 20));
    const auto y = random_series(gen, static_cast<std::size_t>(3 + trial % 17));
    const std::size_t lag = 12;
    const auto lagged = cross_correlation(x, y, lag, CorrelationForm::Lagged);
    const auto shifted = cross_correlation(x, y, lag, CorrelationForm::Shifted);
    const auto ref = oracle::cross_correlation_pairs(x, y, static_cast<long>(lag));
    const auto swapped = cross_correlation(y, x, lag);
    for (std::size_t i = 0; i < lagged.size(); ++i) {
      CHECK(std::abs(lagged[i] - shifted[i]) < 1e-12);
      CHECK(std::abs(lagged[i] - ref[i]) < 1e-12);
      CHECK(std::abs(lagged[i] - swapped[lagged.size() - 1 - i]) < 1e-12);
    }
  }
}

TEST_CASE("peak lag recovers a shift") {
  std::mt19937_64 gen(3);
  auto base = random_series(gen, 80);
  // zero margins so no shift up to max_lag loses samples
  std::fill(base.begin(), base.begin() + 10, 0.0);
  std::fill(base.end() - 10, base.end(), 0.0);
  for (long shift = -6; shift <= 6; ++shift) {
    // y(n) = x(n - shift); r_xy(l) = sum x(n) x(n - l - shift) peaks at l = -shift
    std::vector<double> y(base.size(), 0.0);
    for (long n = 0; n < static_cast<long>(base.size()); ++n) {
      const long src = n - shift;
      if (src >= 0 && src < static_cast<long>(base.size())) y[static_cast<std::size_t>(n)] = base[static_cast<std::size_t>(src)];
    }
    const auto r = cross_correlation(base, y, 8);
    CHECK(peak_lag(r, 8) == -shift);
  }
}

TEST_CASE("csv row") {
  const std::vector<double> actual{3.0, 4.0};
  const std::vector<double> predicted{3.0, 3.0};
  const auto row = metrics_csv_row(error_metrics(actual, predicted));
  CHECK(row == "0.5,0.040000000000000001,0.70710678118654757,0.20000000000000001,20,undefined");
  CHECK(std::string(kMetricsCsvHeader) == "MSE,NMSE,RMSE,NRMSE,PRD,CorrelationCoefficient");
}

}
