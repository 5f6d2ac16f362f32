#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tauber/counterexample.hpp"
#include "tauber/errors.hpp"

using namespace tauber;
using namespace tauber::counterexample;

TEST_CASE("f_lambda") {
  SUBCASE("boundary values") {
    for (double lambda : {1e-9, 0.01, 0.5}) CHECK(f_lambda(0, lambda) == 0.0);
    for (std::int64_t n : {0, 1, 7, 100}) CHECK(f_lambda(n, 1.0) == 0.0);
  }
  SUBCASE("agrees with the long double closed form") {
    for (double lambda : {0.5, 0.1, 1e-3, 1e-4, 1e-6}) {
      for (std::int64_t n = 0; n <= 40; ++n) {
        const auto expected = static_cast<double>(oracle::f_naive(n, lambda));
        CHECK(f_lambda(n, lambda) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(f_lambda_complement(n, lambda) == doctest::Approx(1.0 - expected).epsilon(1e-12));
      }
    }
  }
  SUBCASE("stays in [0, 1) far out") {
    for (double lambda : {1e-12, 1e-8, 1e-3, 0.3, 0.9}) {
      for (std::int64_t n : {1, 10, 50, 100, 1000, 10000}) {
        const double f = f_lambda(n, lambda);
        CHECK(std::isfinite(f));
        CHECK(f >= 0.0);
        CHECK(f < 1.0);
        CHECK(f_lambda_complement(n, lambda) > 0.0);
      }
    }
  }
  SUBCASE("invalid input") {
    CHECK_THROWS_AS(f_lambda(-1, 0.5), InputError);
    CHECK_THROWS_AS(f_lambda(3, 0.0), InputError);
    CHECK_THROWS_AS(f_lambda(3, 1.5), InputError);
  }
}

TEST_CASE("g_lambda") {
  const double lambda = 1e-3;
  for (std::int64_t a : {0, 2, 4, 6, 9}) {
    CHECK(g_lambda(a, 0, lambda) == doctest::Approx(1.0));
    CHECK(g_lambda(0, a, lambda) == doctest::Approx(1.0 - f_lambda(a, lambda)));
    CHECK(g_lambda(a, a, lambda) == doctest::Approx(1.0 / (1.0 + f_lambda(a, lambda))));
    for (std::int64_t b : {1, 3, 8}) {
      const double fa = f_lambda(a, lambda);
      const double fb = f_lambda(b, lambda);
      CHECK(g_lambda(a, b, lambda) == doctest::Approx((1 - fb) / (1 - fa * fb)));
    }
  }
  SUBCASE("Player 1 gains by raising f(a); Player 2 gains by raising f(b)") {
    for (double l : {0.1, 1e-3, 1e-6}) {
      const std::int64_t top = unconstrained_argmax(l, 200);
      for (std::int64_t b : {1, 2, 5}) {
        for (std::int64_t a = 0; a < top; ++a) CHECK(g_lambda(a, b, l) <= g_lambda(a + 1, b, l) + 1e-15);
      }
      for (std::int64_t a : {1, 2, 5}) {
        for (std::int64_t b = 0; b < top; ++b) CHECK(g_lambda(a, b + 1, l) <= g_lambda(a, b, l) + 1e-15);
      }
    }
  }
}

TEST_CASE("argmax") {
  SUBCASE("optimum location near 6.14 at 1e-4") {
    CHECK(optimum_location(1e-4) == doctest::Approx(6.1438).epsilon(1e-4));
    const std::int64_t n = unconstrained_argmax(1e-4, 60);
    CHECK(n == oracle::argmax_naive(1e-4L, 0, 1, 60));
    CHECK(std::abs(static_cast<double>(n) - 6.14) <= 2.0);
  }
  SUBCASE("window argmax matches a wide scan") {
    const Params params;
    for (int j = 2; j <= 40; ++j) {
      const double lambda = std::ldexp(1.0, -j);
      const std::int64_t limit = 200;
      CHECK(argmax_f(lambda, ActionSet::MultiplesOfR, params).action ==
            oracle::argmax_naive(lambda, 0, 2, limit));
      CHECK(argmax_f(lambda, ActionSet::EvenMultiplesOfR, params).action ==
            oracle::argmax_naive(lambda, 0, 4, limit));
      CHECK(argmax_f(lambda, ActionSet::OddMultiplesOfR, params).action ==
            oracle::argmax_naive(lambda, 2, 4, limit));
    }
  }
  SUBCASE("rN dominates both sub-progressions") {
    const Params params;
    for (int j = 2; j <= 40; ++j) {
      const double lambda = std::ldexp(1.0, -j);
      const Argmax all = argmax_f(lambda, ActionSet::MultiplesOfR, params);
      const Argmax even = argmax_f(lambda, ActionSet::EvenMultiplesOfR, params);
      const Argmax odd = argmax_f(lambda, ActionSet::OddMultiplesOfR, params);
      CHECK(all.max_value == std::max(even.max_value, odd.max_value));
      CHECK(all.complement == doctest::Approx(1.0 - all.max_value));
    }
  }
  SUBCASE("window") {
    const Params params;
    CHECK(search_window(1e-4, params) == 13 + 8);
    Params tight;
    tight.window_slack = 1;
    CHECK_THROWS_AS(argmax_f(0.9, ActionSet::OddMultiplesOfR, tight), WindowError);
    tight.window_slack = 0;
    CHECK_THROWS_AS(argmax_f(0.1, ActionSet::MultiplesOfR, tight), InputError);
  }
}

TEST_CASE("one-shot values") {
  const Params params;
  const std::vector<double> grid = dyadic_grid(2, 40);
  REQUIRE(grid.size() == 39);
  CHECK(grid.front() == 0.25);
  CHECK(grid.back() == std::ldexp(1.0, -40));

  for (double lambda : grid) {
    CHECK(value_G(lambda, params) >= 0.5 - 1e-12);
    const double sym = value_G_sym(lambda, params);
    CHECK(sym > 0.5);
    CHECK(sym == doctest::Approx(1.0 / (1.0 + argmax_f(lambda, ActionSet::MultiplesOfR, params).max_value)));

    const std::int64_t a = argmax_f(lambda, ActionSet::MultiplesOfR, params).action;
    const std::int64_t b_even = argmax_f(lambda, ActionSet::EvenMultiplesOfR, params).action;
    const std::int64_t b_odd = argmax_f(lambda, ActionSet::OddMultiplesOfR, params).action;
    CHECK(value_G(lambda, params) == doctest::Approx(g_lambda(a, b_even, lambda)));
    CHECK(value_G1(lambda, params) == doctest::Approx(lambda / 2 + (1 - lambda) * g_lambda(a, b_even, lambda)));
    CHECK(value_G2(lambda, params) == doctest::Approx(lambda / 2 + (1 - lambda) * g_lambda(a, b_odd, lambda)));
    CHECK(value_G3(lambda, params) ==
          doctest::Approx(lambda * (2 - lambda) / 2 + (1 - lambda) * (1 - lambda) * sym));
    const double g3 = value_G3(lambda, params);
    CHECK(g4_continues(lambda, params) == (g3 <= params.x));
    CHECK(value_G4(lambda, params) == doctest::Approx(lambda / 2 + (1 - lambda) * std::min(g3, params.x)));
  }
  const double first = std::abs(value_G_sym(std::ldexp(1.0, -8), params) - 0.5);
  const double last = std::abs(value_G_sym(grid.back(), params) - 0.5);
  CHECK(last < first);

  SUBCASE("quitting branch") {
    Params low;
    low.x = 0.51;
    CHECK_FALSE(g4_continues(0.25, low));
    CHECK(value_G4(0.25, low) == doctest::Approx(0.125 + 0.75 * 0.51));
  }
  SUBCASE("sweep rows") {
    const std::vector<SweepRow> rows = sweep(sweep_grid(1e-6), params);
    CHECK(rows.front().lambda == 0.25);
    CHECK(rows.back().lambda <= 1e-6);
    CHECK(rows[rows.size() - 2].lambda > 1e-6);
    for (const SweepRow& row : rows) CHECK(row.g == value_G(row.lambda, params));
  }
  SUBCASE("parameters") {
    Params bad;
    bad.x = 0.4;
    CHECK_THROWS_AS(value_G4(0.1, bad), InputError);
    bad = Params{};
    bad.r = 0;
    CHECK_THROWS_AS(value_G(0.1, bad), InputError);
    CHECK(property3_exponent(2, 3) == 29);
    CHECK(step2_exponent(2, 3) == 25);
  }
}

TEST_CASE("oscillation_scan") {
  const Params params;
  const std::vector<double> grid = dyadic_grid(2, 40);
  const LimitReport report = oscillation_scan(params, grid);
  CHECK(report.liminf_estimate <= report.limsup_estimate);
  CHECK(report.gap == report.limsup_estimate - report.liminf_estimate);
  CHECK(report.gap > 0.0);
  CHECK(report.oscillation_detected);
  CHECK(report.classes_separated);
  CHECK(report.liminf_estimate >= 0.5 - 1e-12);
  CHECK(report.limsup_estimate <= 1.0);

  std::size_t aligned = 0;
  for (const LimitSample& s : report.samples) {
    CHECK(s.maximizer == oracle::argmax_naive(s.lambda, 0, 1, 200));
    if (s.source == SampleSource::Grid) continue;
    ++aligned;
    const std::int64_t m = static_cast<std::int64_t>(std::lround((-std::log2(s.lambda) - 1) / 2));
    CHECK(s.maximizer == m);
    CHECK((s.source == SampleSource::EvenAligned) == (m % (2 * params.r) == 0));
  }
  CHECK(aligned >= 6);

  const LimitReport again = oscillation_scan(params, grid);
  CHECK(again.gap == report.gap);
  CHECK(again.samples.size() == report.samples.size());

  CHECK_THROWS_AS(oscillation_scan(params, dyadic_grid(2, 20)), InputError);
  CHECK_THROWS_AS(oscillation_scan(params, {1e-3, 1e-2, 1e-11}), InputError);
}

TEST_CASE("distinct_limits_report") {
  const Params params;
  const DistinctLimitsSummary s = distinct_limits_report(params, dyadic_grid(2, 40));
  CHECK(std::abs(s.discounted_estimate - 0.5) < 0.01);
  CHECK(s.deviation_decreasing);
  CHECK(s.last_deviation < s.first_deviation);
  CHECK(s.envelope_min <= s.discounted_estimate);
  CHECK(s.envelope_max >= s.discounted_estimate);
  CHECK(s.n_stage_limit == params.x);
  CHECK_FALSE(s.n_stage_computed);
  CHECK_FALSE(s.n_stage_note.empty());
}
