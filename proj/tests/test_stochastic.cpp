#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include <doctest.h>

#include "support.hpp"

using namespace flight;

TEST_CASE("distribution parameter validation") {
  CHECK_THROWS_AS(Distribution::uniform(0.5, 0.5), ConfigError);
  CHECK_THROWS_AS(Distribution::uniform(-0.1, 0.5), ConfigError);
  CHECK_THROWS_AS(Distribution::beta(0.0, 2.0), ConfigError);
  CHECK_THROWS_AS(Distribution::truncated_normal(0.5, 0.0), ConfigError);
  CHECK_THROWS_AS(Distribution::discrete({0.2, 1.2}, {0.5, 0.5}), ConfigError);
  CHECK_THROWS_AS(Distribution::discrete({0.2, 0.8}, {0.5, 0.6}), ConfigError);
  CHECK_THROWS_AS(Distribution::histogram({0.0, 0.5, 1.0}, {0.48, 0.5}), ConfigError);
  CHECK_THROWS_AS(Distribution::histogram({0.0, 0.5, 0.5}, {0.5, 0.5}), ConfigError);
  CHECK_NOTHROW(Distribution::histogram({0.0, 0.5, 1.0}, {0.5, 0.5}));
}

TEST_CASE("continuous densities integrate to one") {
  for (const Distribution& d :
       {Distribution::uniform(0.2, 0.7), Distribution::beta(2.0, 3.0),
        Distribution::truncated_normal(0.4, 0.2),
        Distribution::histogram({0.0, 0.3, 0.6, 1.0}, {0.2, 0.5, 0.3})}) {
    std::vector<double> cuts = {0.0, 1.0};
    for (double b : d.density_breakpoints()) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double mass = 0.0;
    for (std::size_t i = 1; i < cuts.size(); ++i) {
      if (cuts[i] <= cuts[i - 1]) continue;
      mass += integrate_gl([&](double z) { return d.density(z); }, cuts[i - 1],
                           cuts[i], 64, 16);
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("quantiles are monotone and invert the cdf") {
  for (const Distribution& d :
       {Distribution::uniform(0.1, 0.9), Distribution::beta(2.0, 5.0),
        Distribution::truncated_normal(0.6, 0.3)}) {
    double prev = d.quantile(0.0);
    for (int i = 1; i <= 100; ++i) {
      const double q = d.quantile(i / 100.0);
      CHECK(q >= prev - 1e-12);
      CHECK(q >= 0.0);
      CHECK(q <= 1.0);
      prev = q;
    }
  }
  CHECK(Distribution::uniform(0.2, 0.6).quantile(0.5) == doctest::Approx(0.4));
  // beta(2,2) is symmetric about 1/2
  CHECK(Distribution::beta(2.0, 2.0).quantile(0.5) ==
        doctest::Approx(0.5).epsilon(1e-9));

  const Distribution h = Distribution::histogram({0.0, 0.5, 1.0}, {0.8, 0.2});
  CHECK(h.quantile(0.4) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(h.quantile(0.9) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("sampling is deterministic per (seed, stream)") {
  const Distribution d = Distribution::beta(2.0, 3.0);
  const LocationProfile a = sample_profile(d, 16, 777, 3);
  const LocationProfile b = sample_profile(d, 16, 777, 3);
  CHECK(a.locations() == b.locations());
  const LocationProfile c = sample_profile(d, 16, 777, 4);
  CHECK(a.locations() != c.locations());
  const LocationProfile e = sample_profile(d, 16, 778, 3);
  CHECK(a.locations() != e.locations());
  CHECK_THROWS_AS(sample_profile(d, 0, 1, 0), ConfigError);
}

TEST_CASE("degenerate atom always samples itself") {
  const Distribution d = Distribution::discrete({0.3}, {1.0});
  const LocationProfile p = sample_profile(d, 8, 5, 0);
  for (double x : p.locations()) CHECK(x == 0.3);
}

TEST_CASE("uniform sample means concentrate near one half") {
  SubstreamRng rng(2024);
  const Distribution d = Distribution::uniform(0.0, 1.0);
  double sum = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) sum += d.sample(rng);
  // 1/sqrt(12n) ~ 0.002; allow four sigma
  CHECK(std::abs(sum / n - 0.5) < 0.009);
}

TEST_CASE("expected welfare closed form for linear alpha under uniform") {
  // E[1 - |y - X|] = 1 - (y^2 + (1-y)^2) / 2 for X ~ U(0,1)
  const ExpectedWelfareCurve c = expected_welfare(
      make_linear(), Distribution::uniform(0.0, 1.0), 3, 11, 512);
  for (std::size_t i = 0; i < c.grid.size(); ++i) {
    const double y = c.grid[i];
    const double closed = 1.0 - (y * y + (1.0 - y) * (1.0 - y)) / 2.0;
    CHECK(c.values[i] == doctest::Approx(3.0 * closed).epsilon(1e-8));
  }
  CHECK(c.values[5] == doctest::Approx(3.0 * 0.75).epsilon(1e-8));
  CHECK(c.values[0] == doctest::Approx(3.0 * 0.5).epsilon(1e-8));

  CHECK_THROWS_AS(
      expected_welfare(make_linear(), Distribution::uniform(0.0, 1.0), 3, 1, 512),
      ConfigError);
  CHECK_THROWS_AS(
      expected_welfare(make_linear(), Distribution::uniform(0.0, 1.0), 3, 11, 32),
      ConfigError);
}

TEST_CASE("point-mass expected welfare is the translated utility") {
  const Distribution d = Distribution::discrete({0.3}, {1.0});
  const ExpectedWelfareCurve c = expected_welfare(make_pmean(2.0), d, 4, 21, 512);
  for (std::size_t i = 0; i < c.grid.size(); ++i) {
    CHECK(c.values[i] ==
          doctest::Approx(4.0 * eval_utility(make_pmean(2.0), c.grid[i] - 0.3))
              .epsilon(1e-12));
  }
}

TEST_CASE("doubling the quadrature order leaves the curve unchanged") {
  for (const Distribution& d :
       {Distribution::beta(2.0, 3.0), Distribution::truncated_normal(0.3, 0.25),
        Distribution::histogram({0.0, 0.4, 1.0}, {0.7, 0.3})}) {
    const int n = 5;
    const ExpectedWelfareCurve lo = expected_welfare(make_pmean(2.0), d, n, 51, 512);
    const ExpectedWelfareCurve hi = expected_welfare(make_pmean(2.0), d, n, 51, 1024);
    for (std::size_t i = 0; i < lo.grid.size(); ++i) {
      CHECK(std::abs(lo.values[i] - hi.values[i]) <= 1e-6 * n);
    }
  }
}

TEST_CASE("f-distance on hand-checkable curves") {
  std::vector<double> grid;
  std::vector<double> zero, one, ramp;
  const int m = 1000;
  for (int i = 0; i <= m; ++i) {
    const double y = static_cast<double>(i) / m;
    grid.push_back(y);
    zero.push_back(0.0);
    one.push_back(1.0);
    ramp.push_back(y);
  }
  CHECK(f_distance(grid, one, one) == 0.0);
  CHECK(f_distance(grid, zero, one) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f_distance(grid, zero, ramp) == doctest::Approx(1.0 / 3.0).epsilon(1e-5));
  CHECK(f_distance(grid, ramp, zero) == f_distance(grid, zero, ramp));
  CHECK_THROWS_AS(f_distance(grid, zero, std::vector<double>{1.0}), ConfigError);
}

TEST_CASE("mvue gap vanishes for the zero perturbation") {
  const std::vector<double> zeros(1001, 0.0);
  const MvueGapResult r = mvue_gap(make_linear(), Distribution::uniform(0.0, 1.0), 4,
                                   zeros, 100, 31);
  CHECK(r.predicted_gap == 0.0);
  CHECK(r.empirical_gap == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.std_error == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("mvue gap matches the squared perturbation norm") {
  const std::vector<double> ones(1001, 1.0);
  const MvueGapResult r = mvue_gap(make_linear(), Distribution::uniform(0.0, 1.0), 5,
                                   ones, 400, 97);
  CHECK(r.predicted_gap == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(r.empirical_gap - r.predicted_gap) <=
        6.0 * r.std_error + 1e-3);

  CHECK_THROWS_AS(mvue_gap(make_linear(), Distribution::uniform(0.0, 1.0), 5, ones,
                           50, 97),
                  ConfigError);
  CHECK_THROWS_AS(mvue_gap(make_linear(), Distribution::uniform(0.0, 1.0), 5,
                           std::vector<double>(10, 0.0), 400, 97),
                  ConfigError);
}

TEST_CASE("lln deviations shrink with n") {
  const ConvergenceReport r =
      lln_experiment(make_linear(), Distribution::uniform(0.0, 1.0), 0.5,
                     {100, 400, 1600}, 40, 11);
  CHECK(r.mean_abs_dev.size() == 3);
  CHECK(r.mean_abs_dev[0] > r.mean_abs_dev[2]);
  CHECK(r.slope_estimate < -0.2);
  CHECK(r.slope_estimate > -0.9);
  for (double m : r.mean_normalized) {
    CHECK(m == doctest::Approx(0.75).epsilon(0.05));
  }

  CHECK_THROWS_AS(lln_experiment(make_linear(), Distribution::uniform(0.0, 1.0), 0.5,
                                 {100, 100}, 40, 11),
                  ConfigError);
  CHECK_THROWS_AS(lln_experiment(make_linear(), Distribution::uniform(0.0, 1.0), 0.5,
                                 {100, 400}, 10, 11),
                  ConfigError);
}

TEST_CASE("lln is exact for a degenerate law") {
  const ConvergenceReport r =
      lln_experiment(make_pmean(2.0), Distribution::discrete({0.4}, {1.0}), 0.9,
                     {10, 100}, 30, 1);
  for (double d : r.mean_abs_dev) CHECK(d <= 1e-12);
  CHECK(r.slope_estimate == 0.0);
}
