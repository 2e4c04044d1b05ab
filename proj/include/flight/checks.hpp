#ifndef FLIGHT_CHECKS_HPP
#define FLIGHT_CHECKS_HPP

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <flight/error.hpp>
#include <flight/peak.hpp>
#include <flight/profile.hpp>
#include <flight/utility.hpp>
#include <flight/welfare.hpp>

namespace flight {

struct CheckReport {
  std::string theorem;
  bool passed = false;
  double measured = 0.0;
  double bound = 0.0;
  std::string witness;
  double tolerance_used = 0.0;
};

namespace detail {

inline std::string describe_profile(const LocationProfile& profile) {
  std::ostringstream oss;
  oss << "(";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (i) oss << ", ";
    oss << profile[i];
  }
  oss << ")";
  return oss.str();
}

}  // namespace detail

/// Concavity of the welfare curve: no positive second difference beyond
/// rounding on a uniform grid.
inline CheckReport check_concavity(const UtilitySpec& alpha,
                                   const LocationProfile& profile, int grid_points) {
  if (grid_points < 101) throw ConfigError("check_concavity requires grid_points >= 101");
  const WelfareCurve curve = welfare_curve(alpha, profile, grid_points);
  double worst = 0.0;
  double wmax_abs = 0.0;
  for (double v : curve.values) wmax_abs = std::max(wmax_abs, std::abs(v));
  for (std::size_t i = 1; i + 1 < curve.values.size(); ++i) {
    worst = std::max(worst,
                     curve.values[i + 1] - 2.0 * curve.values[i] + curve.values[i - 1]);
  }
  CheckReport report;
  report.theorem = "concavity";
  report.measured = worst;
  report.bound = 0.0;
  report.tolerance_used = 1e-9 * std::max(1.0, wmax_abs);
  report.passed = report.measured <= report.bound + report.tolerance_used;
  report.witness = alpha.id + " on " + detail::describe_profile(profile);
  return report;
}

/// Location invariance: shifting every agent by c shifts the peak by c.
inline CheckReport check_location_invariance(const UtilitySpec& alpha,
                                             const LocationProfile& profile, double c,
                                             double tol) {
  if (profile.front() + std::min(0.0, c) < 0.0 ||
      profile.back() + std::max(0.0, c) > 1.0) {
    throw DomainError("shifted profile escapes [0,1]");
  }
  std::vector<double> shifted = profile.locations();
  for (double& x : shifted) x += c;
  const LocationProfile moved = make_profile(shifted);

  const PeakResult base = peak(alpha, profile, tol);
  const PeakResult after = peak(alpha, moved, tol);
  if (base.boundary_clamped || after.boundary_clamped) {
    throw SkippedCheck("peak clamped to the boundary; shift conclusion not applicable");
  }
  CheckReport report;
  report.theorem = "location_invariance";
  report.measured = std::abs(after.peak - (base.peak + c));
  report.bound = 0.0;
  report.tolerance_used = 2.0 * tol;
  report.passed = report.measured <= report.tolerance_used;
  std::ostringstream oss;
  oss << alpha.id << " on " << detail::describe_profile(profile) << ", c = " << c;
  report.witness = oss.str();
  return report;
}

/// Directional monotonicity of the peak under a single-agent shift,
/// checked leftward and (when feasible) in the mirrored rightward form.
inline CheckReport check_shift_monotonicity(const UtilitySpec& alpha,
                                            const LocationProfile& profile,
                                            std::size_t agent_index,  // 1-based
                                            double c, double tol) {
  if (agent_index < 1 || agent_index > profile.size()) {
    throw ConfigError("agent_index out of range");
  }
  const double xi = profile[agent_index - 1];
  if (!(c > 0.0 && c <= xi)) {
    throw ConfigError("shift c must lie in (0, x_i]");
  }
  const PeakResult base = peak(alpha, profile, tol);

  std::vector<double> left = profile.locations();
  left[agent_index - 1] = xi - c;
  const PeakResult after_left = peak(alpha, make_profile(left), tol);
  double measured = after_left.peak - base.peak;  // should be <= 0

  const double c_right = std::min(c, 1.0 - xi);
  if (c_right > 0.0) {
    std::vector<double> right = profile.locations();
    right[agent_index - 1] = xi + c_right;
    const PeakResult after_right = peak(alpha, make_profile(right), tol);
    measured = std::max(measured, base.peak - after_right.peak);
  }

  CheckReport report;
  report.theorem = "shift_monotonicity";
  report.measured = measured;
  report.bound = 0.0;
  report.tolerance_used = 2.0 * tol;
  report.passed = report.measured <= report.bound + report.tolerance_used;
  std::ostringstream oss;
  oss << alpha.id << " on " << detail::describe_profile(profile) << ", agent "
      << agent_index << ", c = " << c;
  report.witness = oss.str();
  return report;
}

/// Peak movement between two profiles is bounded by the largest
/// per-agent displacement (positions paired after sorting).
inline CheckReport check_max_shift(const UtilitySpec& alpha,
                                   const LocationProfile& profile_a,
                                   const LocationProfile& profile_b, double tol) {
  if (profile_a.size() != profile_b.size()) {
    throw ConfigError("profiles must have equal agent counts");
  }
  double bound = 0.0;
  for (std::size_t i = 0; i < profile_a.size(); ++i) {
    bound = std::max(bound, std::abs(profile_a[i] - profile_b[i]));
  }
  const PeakResult pa = peak(alpha, profile_a, tol);
  const PeakResult pb = peak(alpha, profile_b, tol);
  CheckReport report;
  report.theorem = "max_shift";
  report.measured = std::abs(pa.peak - pb.peak);
  report.bound = bound;
  report.tolerance_used = 2.0 * tol;
  report.passed = report.measured <= report.bound + report.tolerance_used;
  report.witness = alpha.id + " on " + detail::describe_profile(profile_a) + " vs " +
                   detail::describe_profile(profile_b);
  return report;
}

/// Half the worst asymmetry among agent pairs mirrored around the
/// median. Pairs are taken symmetrically: (x_{m+i}, x_{m-i}) for odd n
/// with m the middle index, (x_{n/2+i}, x_{n/2+1-i}) for even n.
inline double median_peak_bound(const LocationProfile& profile) {
  const std::size_t n = profile.size();
  if (n == 1) return 0.0;
  const double med = peak_closed_form(Mechanism::median, profile);
  double worst = 0.0;
  const std::size_t pairs = n / 2;
  for (std::size_t i = 1; i <= pairs; ++i) {
    double right, left;
    if (n % 2 == 1) {
      const std::size_t m0 = (n - 1) / 2;  // 0-based middle
      right = profile[m0 + i];
      left = profile[m0 - i];
    } else {
      right = profile[n / 2 - 1 + i];
      left = profile[n / 2 - i];
    }
    const double d_plus = std::abs(med - right);
    const double d_minus = std::abs(med - left);
    worst = std::max(worst, std::abs(d_plus - d_minus));
  }
  return 0.5 * worst;
}

/// Distance from the median to the welfare peak, against the pairwise
/// asymmetry bound. Requires a symmetric utility.
inline CheckReport check_median_peak(const UtilitySpec& alpha,
                                     const LocationProfile& profile, double tol) {
  if (!alpha.symmetric) {
    throw PreconditionError("median-peak bound requires a symmetric utility");
  }
  const double med = peak_closed_form(Mechanism::median, profile);
  const PeakResult result = peak(alpha, profile, tol);
  CheckReport report;
  report.theorem = "median_peak";
  report.measured = std::abs(med - result.peak);
  report.bound = median_peak_bound(profile);
  report.tolerance_used = 2.0 * tol;
  report.passed = report.measured <= report.bound + report.tolerance_used;
  std::ostringstream oss;
  oss << alpha.id << " on " << detail::describe_profile(profile) << ", med = " << med;
  report.witness = oss.str();
  return report;
}

}  // namespace flight

#endif
