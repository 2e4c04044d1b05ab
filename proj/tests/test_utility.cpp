#include <cmath>

#include <doctest.h>

#include "support.hpp"

using namespace flight;

TEST_CASE("pmean family metadata") {
  const UtilitySpec s = make_pmean(2.0);
  CHECK(eval_utility(s, 0.5) == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(s.peak_value == 0.0);
  CHECK(s.value_at_neg1 == -1.0);
  CHECK(s.lipschitz_up == 2.0);
  CHECK(s.lipschitz_lo == -2.0);
  CHECK(s.symmetric);
  CHECK_FALSE(s.strictly_positive);
  CHECK_THROWS_AS(make_pmean(0.5), ConfigError);
}

TEST_CASE("shifted pmean is strictly positive") {
  const UtilitySpec s = make_shifted_pmean(2.0, 2.0);
  CHECK(s.peak_value == 2.0);
  CHECK(s.value_at_neg1 == 1.0);
  CHECK(s.strictly_positive);
  CHECK(std::min(s.value_at_neg1, s.value_at_pos1) > 0.0);
  CHECK_THROWS_AS(make_shifted_pmean(2.0, 1.0), ConfigError);
}

TEST_CASE("nash_log clamps at the singularity") {
  const UtilitySpec s = make_nash_log(1e-12);
  CHECK(s.peak_value == 0.0);
  CHECK(eval_utility(s, 0.5) == doctest::Approx(std::log(0.5)).epsilon(1e-12));
  CHECK(eval_utility(s, -0.5) == doctest::Approx(std::log(0.5)).epsilon(1e-12));
  CHECK(eval_utility(s, 1.0) == doctest::Approx(std::log(1e-12)).epsilon(1e-12));
  CHECK(s.lipschitz_up == doctest::Approx(1e12));
  CHECK_THROWS_AS(make_nash_log(0.7), ConfigError);
  CHECK_THROWS_AS(make_nash_log(0.0), ConfigError);
}

TEST_CASE("linear family") {
  const UtilitySpec s = make_linear();
  CHECK(s.peak_value == 1.0);
  CHECK(s.value_at_neg1 == 0.0);
  CHECK(s.value_at_pos1 == 0.0);
  CHECK(eval_utility(s, -0.3) == doctest::Approx(0.7));
}

TEST_CASE("pmean p=1 evaluates -|z|") {
  CHECK(eval_utility(make_pmean(1.0), -0.3) == doctest::Approx(-0.3).epsilon(1e-12));
  CHECK_THROWS_AS(eval_utility(make_pmean(1.0), 1.5), DomainError);
}

TEST_CASE("piecewise table interpolation and validation") {
  const UtilitySpec tent = make_piecewise({{-1.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}});
  CHECK(eval_utility(tent, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tent.symmetric);
  CHECK_FALSE(tent.strictly_positive);

  // convex kink at 0
  CHECK_THROWS_AS(make_piecewise({{-1.0, 0.0}, {0.0, 0.2}, {1.0, 1.0}}),
                  ConcavityError);
  // does not span [-1,1]
  CHECK_THROWS_AS(make_piecewise({{-0.5, 0.0}, {0.0, 1.0}, {1.0, 0.0}}), ConfigError);
  // breakpoints not increasing
  CHECK_THROWS_AS(make_piecewise({{-1.0, 0.0}, {-1.0, 1.0}, {1.0, 0.0}}), ConfigError);

  const UtilitySpec skew =
      make_piecewise({{-1.0, 0.1}, {0.0, 1.0}, {0.5, 0.8}, {1.0, 0.2}});
  CHECK_FALSE(skew.symmetric);
  CHECK(skew.strictly_positive);
}

TEST_CASE("concavity error reports the breakpoint index") {
  try {
    make_piecewise({{-1.0, 0.0}, {-0.5, 0.4}, {0.0, 0.5}, {0.5, 0.9}, {1.0, 0.0}});
    FAIL("expected ConcavityError");
  } catch (const ConcavityError& e) {
    CHECK(e.breakpoint_index == 2);
  }
}

TEST_CASE("lipschitz bounds: analytic families") {
  CHECK(lipschitz_bounds(make_linear(), 1000) == std::pair{-1.0, 1.0});
  CHECK(lipschitz_bounds(make_pmean(2.0), 1000) == std::pair{-2.0, 2.0});
}

TEST_CASE("lipschitz bounds: grid estimate with safety factor") {
  const UtilitySpec tent = make_piecewise({{-1.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}});
  const auto [lo, up] = lipschitz_bounds(tent, 1000);
  CHECK(lo >= -1.05 - 1e-9);
  CHECK(up <= 1.05 + 1e-9);
  CHECK(lo <= -1.0);
  CHECK(up >= 1.0);
}

TEST_CASE("lipschitz bounds bracket quotients at double resolution") {
  const UtilitySpec skew =
      make_piecewise({{-1.0, 0.1}, {-0.2, 0.9}, {0.0, 1.0}, {0.7, 0.4}, {1.0, 0.1}});
  const auto [lo, up] = lipschitz_bounds(skew, 500);
  const int m = 1000;
  double prev = eval_utility(skew, -1.0);
  for (int i = 1; i <= m; ++i) {
    const double z = std::min(-1.0 + 2.0 * i / m, 1.0);
    const double cur = eval_utility(skew, z);
    const double q = (cur - prev) * m / 2.0;
    CHECK(q >= lo);
    CHECK(q <= up);
    prev = cur;
  }
}

TEST_CASE("concavity audit") {
  CHECK(concavity_audit(make_pmean(2.0), 1000).passed);
  const ConcavityAudit lin = concavity_audit(make_linear(), 1000);
  CHECK(lin.passed);
  CHECK(lin.worst_violation <= 1e-12);
  CHECK(concavity_audit(make_nash_log(), 1000).passed);

  // convex table injected past the constructor checks
  UtilitySpec convex;
  convex.family = UtilityFamily::piecewise_linear;
  convex.table = {{-1.0, 0.0}, {0.0, 0.2}, {1.0, 1.0}};
  convex.peak_value = 0.2;
  const ConcavityAudit audit = concavity_audit(convex, 1000);
  CHECK_FALSE(audit.passed);
  CHECK(audit.worst_violation > 0.0);
}

TEST_CASE("built-in families peak at zero and respect symmetry flags") {
  SubstreamRng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const UtilitySpec alpha = testing::random_family(rng);
    const double at_zero = eval_utility(alpha, 0.0);
    for (int i = 0; i <= 200; ++i) {
      const double z = -1.0 + 2.0 * i / 200.0;
      CHECK(at_zero >= eval_utility(alpha, z) - 1e-12);
      if (alpha.symmetric) {
        CHECK(eval_utility(alpha, z) ==
              doctest::Approx(eval_utility(alpha, -z)).epsilon(1e-12));
      }
    }
  }
}
