#ifndef FLIGHT_TESTS_SUPPORT_HPP
#define FLIGHT_TESTS_SUPPORT_HPP

#include <vector>

#include <flight/flight.hpp>

namespace flight::testing {

inline LocationProfile random_profile(SubstreamRng& rng, int max_n) {
  const int n = 1 + static_cast<int>(rng.below(max_n));
  std::vector<double> xs(n);
  for (double& x : xs) x = rng.uniform01();
  return make_profile(xs);
}

inline LocationProfile random_profile_n(SubstreamRng& rng, int n) {
  std::vector<double> xs(n);
  for (double& x : xs) x = rng.uniform01();
  return make_profile(xs);
}

/// Any admissible built-in family.
inline UtilitySpec random_family(SubstreamRng& rng) {
  switch (rng.below(4)) {
    case 0: return make_pmean(1.0 + 2.0 * rng.uniform01());
    case 1: return make_shifted_pmean(1.0 + 2.0 * rng.uniform01(),
                                      1.5 + rng.uniform01());
    case 2: return make_nash_log();
    default: return make_linear();
  }
}

/// Families satisfying alpha(z) > 0 on [-1,1].
inline UtilitySpec random_positive_family(SubstreamRng& rng) {
  return make_shifted_pmean(1.0 + 2.0 * rng.uniform01(), 1.5 + 1.5 * rng.uniform01());
}

}  // namespace flight::testing

#endif
