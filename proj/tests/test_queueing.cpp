#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "paging/queueing.hpp"

using namespace paging;

TEST_SUITE("queueing") {

TEST_CASE("erlang_b trivial values") {
  CHECK(erlang_b(1, 0.0) == 0.0);
  CHECK(erlang_b(1, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(erlang_b(3, 2.0) == doctest::Approx(2.0 / 1.0 * 4.0 / 6.0 / (1 + 2 + 2 + 4.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("erlang_b(7, 4) against exact rational summation") {
  const double exact = oracle::erlang_b_exact(7, 4, 1);
  CHECK(exact == doctest::Approx(0.06275).epsilon(1e-3));
  CHECK(std::abs(erlang_b(7, 4.0) - exact) < 1e-9);
}

TEST_CASE("erlang_c trivial and saturated values") {
  CHECK(erlang_c(7, 0.0) == 0.0);
  CHECK(erlang_c(7, 7.0) == 1.0);
  CHECK(erlang_c(7, 9.5) == 1.0);
  // M/M/1: probability of waiting equals utilisation
  CHECK(erlang_c(1, 0.3) == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("erlang_c(7, 4) against exact rational summation") {
  const double exact = oracle::erlang_c_exact(7, 4, 1);
  CHECK(exact == doctest::Approx(0.1351).epsilon(1e-3));
  CHECK(std::abs(erlang_c(7, 4.0) - exact) < 1e-12);
}

TEST_CASE("erlang_c(14, 9) against exact rational summation") {
  const double exact = oracle::erlang_c_exact(14, 9, 1);
  CHECK(exact == doctest::Approx(0.0892).epsilon(1e-3));
  CHECK(std::abs(erlang_c(14, 9.0) - exact) < 1e-12);
}

TEST_CASE("recurrence agrees with 50-digit summation for C <= 20") {
  for (int c = 1; c <= 20; ++c) {
    for (int k = 0; k < 40; ++k) {
      const double a = c * (k / 40.0) * 1.2;  // includes A > C for Erlang B
      const double ref_b = oracle::erlang_b_50(c, a);
      CHECK(std::abs(erlang_b(c, a) - ref_b) <= 1e-12 * std::max(ref_b, 1e-300));
      if (a < c) {
        const double ref_c = oracle::erlang_c_50(c, a);
        CHECK(std::abs(erlang_c(c, a) - ref_c) <= 1e-12 * std::max(ref_c, 1e-300));
      }
    }
  }
}

TEST_CASE("erlang functions are monotone and ordered") {
  for (int c = 1; c <= 20; ++c) {
    double prev_b = -1.0, prev_c = -1.0;
    for (int k = 0; k < 100; ++k) {
      const double a = c * k / 100.0;
      const double b = erlang_b(c, a);
      const double cc = erlang_c(c, a);
      CHECK(b >= prev_b);
      CHECK(cc >= prev_c);
      CHECK(cc >= b);
      CHECK(cc <= 1.0);
      prev_b = b;
      prev_c = cc;
      if (c > 1) {
        CHECK(erlang_b(c, a) <= erlang_b(c - 1, a));
        if (a < c - 1) CHECK(erlang_c(c, a) <= erlang_c(c - 1, a));
      }
    }
  }
}

TEST_CASE("erlang functions reject bad arguments") {
  CHECK_THROWS_AS(erlang_b(0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(erlang_c(3, -0.1), InvalidArgument);
  CHECK_THROWS_AS(erlang_c(3, std::nan("")), InvalidArgument);
}

TEST_CASE("mean system time examples") {
  const auto seq = PagingSchemeConfig::sequential();
  const auto conc = PagingSchemeConfig::concurrent();
  CHECK(mean_system_time(seq, 0.0).mean_system_time == 1.0);
  CHECK(mean_system_time(seq, 4.0).mean_system_time ==
        doctest::Approx(oracle::erlang_c_exact(7, 4, 1) / 3.0 + 1.0).epsilon(1e-12));
  CHECK(mean_system_time(seq, 4.0).mean_system_time == doctest::Approx(1.0450).epsilon(1e-4));
  const double t_conc = oracle::erlang_c_exact(14, 9, 1) / ((2.0 / 3.0) * 5.0) + 1.5;
  CHECK(mean_system_time(conc, 6.0).mean_system_time == doctest::Approx(t_conc).epsilon(1e-12));
  CHECK(mean_system_time(conc, 6.0).mean_system_time == doctest::Approx(1.527).epsilon(1e-3));
}

TEST_CASE("mean system time saturates to a divergent marker") {
  const auto seq = PagingSchemeConfig::sequential();
  const auto m = mean_system_time(seq, 7.5);
  CHECK(m.divergent());
  CHECK(m.wait_probability == 1.0);
  CHECK(mean_system_time(seq, 7.0).divergent());
  CHECK_FALSE(mean_system_time(seq, 6.999).divergent());
}

TEST_CASE("mean system time is nondecreasing and tends to the service time") {
  for (const auto& s : {PagingSchemeConfig::sequential(), PagingSchemeConfig::concurrent()}) {
    double prev = 0.0;
    for (double lam = 0.0; lam < s.saturation_rate(); lam += 0.01) {
      const double t = mean_system_time(s, lam).mean_system_time;
      CHECK(t >= prev);
      CHECK(t >= s.mean_service_time);
      CHECK(t == doctest::Approx(oracle::mean_time_50(s.channels, s.mean_service_time, lam)).epsilon(1e-11));
      prev = t;
    }
    CHECK(mean_system_time(s, 1e-9).mean_system_time == doctest::Approx(s.mean_service_time).epsilon(1e-12));
  }
}

TEST_CASE("scheme validation") {
  CHECK_THROWS_AS(mean_system_time(PagingSchemeConfig{"x", 0, 1.0}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(mean_system_time(PagingSchemeConfig{"x", 2, 0.0}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(mean_system_time(PagingSchemeConfig::sequential(), -1.0), InvalidArgument);
}

TEST_CASE("crossover of the default schemes") {
  const auto seq = PagingSchemeConfig::sequential();
  const auto conc = PagingSchemeConfig::concurrent();
  const double x = find_crossover(seq, conc, {0.5, 6.9});
  CHECK(x >= 5.0);
  CHECK(x <= 6.5);
  const double diff = mean_system_time(seq, x).mean_system_time - mean_system_time(conc, x).mean_system_time;
  CHECK(std::abs(diff) <= kCrossoverTolerance);
  // the 50-digit oracle changes sign across a small interval around the root
  auto f = [](double lam) { return oracle::mean_time_50(7, 1.0, lam) - oracle::mean_time_50(14, 1.5, lam); };
  CHECK(f(x - 1e-4) < 0.0);
  CHECK(f(x + 1e-4) > 0.0);
  CHECK(default_crossover(seq, conc) == doctest::Approx(x).epsilon(1e-6));
}

TEST_CASE("crossover without a sign change") {
  const auto seq = PagingSchemeConfig::sequential();
  const auto conc = PagingSchemeConfig::concurrent();
  CHECK_THROWS_AS(find_crossover(seq, seq, {0.5, 6.9}), NoSignChange);
  // oracle tabulation: sequential is faster everywhere on (0.1, 1.0)
  for (double lam = 0.1; lam <= 1.0 + 1e-12; lam += 0.01)
    CHECK(oracle::mean_time_50(7, 1.0, lam) < oracle::mean_time_50(14, 1.5, lam));
  CHECK_THROWS_AS(find_crossover(seq, conc, {0.1, 1.0}), NoSignChange);
}

TEST_CASE("crossover rejects saturated or inverted brackets") {
  const auto seq = PagingSchemeConfig::sequential();
  const auto conc = PagingSchemeConfig::concurrent();
  CHECK_THROWS_AS(find_crossover(seq, conc, {7.5, 8.0}), Instability);
  CHECK_THROWS_AS(find_crossover(seq, conc, {3.0, 1.0}), InvalidArgument);
}

TEST_CASE("concurrent wait probability is always lower on the 0.1 to 6.9 grid") {
  const auto seq = PagingSchemeConfig::sequential();
  const auto conc = PagingSchemeConfig::concurrent();
  for (int i = 1; i <= 69; ++i) {
    const double lam = i / 10.0;
    CHECK(mean_system_time(conc, lam).wait_probability < mean_system_time(seq, lam).wait_probability);
    CHECK(oracle::erlang_c_exact(14, 3 * i, 20) < oracle::erlang_c_exact(7, i, 10));
  }
}

TEST_CASE("sweep examples") {
  const std::vector<PagingSchemeConfig> both{PagingSchemeConfig::sequential(), PagingSchemeConfig::concurrent()};
  {
    const std::vector<double> grid{0.0};
    const auto rows = sweep_curves(both, grid);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].per_scheme[0].wait_probability == 0.0);
    CHECK(rows[0].per_scheme[1].wait_probability == 0.0);
  }
  {
    const std::vector<double> grid{4.0, 6.0};
    const auto rows = sweep_curves(both, grid);
    CHECK(rows[0].per_scheme[0].wait_probability == doctest::Approx(0.1351).epsilon(1e-3));
    CHECK(rows[1].per_scheme[1].wait_probability == doctest::Approx(0.0892).epsilon(1e-3));
  }
  const std::vector<double> bad{1.0, 1.0};
  CHECK_THROWS_AS(sweep_curves(both, bad), InvalidArgument);
}

TEST_CASE("arrival grid spacing") {
  const auto g = arrival_grid(0.1, 6.9, 0.1);
  REQUIRE(g.size() == 69);
  CHECK(g.front() == doctest::Approx(0.1));
  CHECK(g.back() == doctest::Approx(6.9));
  CHECK(arrival_grid(2.0, 2.0, 0.1).size() == 1);
}

TEST_CASE("curves csv marks divergent entries") {
  const std::vector<PagingSchemeConfig> both{PagingSchemeConfig::sequential(), PagingSchemeConfig::concurrent()};
  const std::vector<double> grid{7.5};
  const auto rows = sweep_curves(both, grid);
  std::ostringstream out;
  write_curves_csv(out, both, rows);
  const std::string text = out.str();
  CHECK(text.rfind("lambda,seq_pwait,seq_T,conc_pwait,conc_T\n", 0) == 0);
  CHECK(text.find(",inf") != std::string::npos);
}

}
