#ifndef FLIGHT_BOUNDS_HPP
#define FLIGHT_BOUNDS_HPP

#include <cmath>
#include <utility>

#include <flight/error.hpp>
#include <flight/peak.hpp>
#include <flight/profile.hpp>
#include <flight/utility.hpp>
#include <flight/welfare.hpp>

namespace flight {

/// Two-sided approximation-ratio report. The "paper" pair uses the
/// closed-form proxies (Lipschitz envelope and D_alpha); the "exact"
/// pair uses the true welfare extrema over [0,1], which the
/// log-Lipschitz sandwich guarantees unconditionally. Validity tests
/// gate on the exact form; the proxy form can fail on profiles without
/// an agent near an endpoint and is reported with its own flag.
struct BoundReport {
  double observed_ratio = 1.0;
  double paper_lower = 1.0;
  double paper_upper = 1.0;
  double exact_lower = 1.0;
  double exact_upper = 1.0;
  double d_alpha = 0.0;
  double w_min = 0.0;  // min(W(0), W(1)), exact by concavity
  double w_max = 0.0;  // welfare at the peak
  bool valid_paper_form = false;
  bool valid_exact_form = false;
  double y = 0.0;
  double peak = 0.0;
  double cross_cap = 0.0;  // exp(n*lambda_u/D_alpha); set by cross_welfare_ratio
};

namespace detail {

inline void require_strictly_positive(const UtilitySpec& alpha) {
  if (!alpha.strictly_positive) {
    throw PositivityError("bound requires alpha(z) > 0 on [-1,1]");
  }
}

inline double positive_welfare(const UtilitySpec& alpha, const LocationProfile& profile,
                               double y) {
  const double w = welfare(alpha, profile, y).value;
  if (!(w > 0.0)) {
    throw PositivityError("non-positive welfare encountered at y = " +
                          std::to_string(y));
  }
  return w;
}

inline double d_alpha_value(const UtilitySpec& alpha, std::size_t n) {
  const double a0 = alpha.peak_value;
  return std::min(a0 + (n - 1) * alpha.value_at_neg1,
                  a0 + (n - 1) * alpha.value_at_pos1);
}

}  // namespace detail

inline double welfare_ratio(const UtilitySpec& alpha, const LocationProfile& profile,
                            double y) {
  detail::require_strictly_positive(alpha);
  const double wy = detail::positive_welfare(alpha, profile, y);
  const PeakResult p = peak(alpha, profile, 1e-9);
  const double wp = std::max(p.peak_welfare, wy);
  return wp / wy;
}

inline BoundReport theorem5_bounds(const UtilitySpec& alpha,
                                   const LocationProfile& profile, double y,
                                   double tol = 1e-9) {
  detail::require_strictly_positive(alpha);
  const double wy = detail::positive_welfare(alpha, profile, y);
  const PeakResult p = peak(alpha, profile, tol);
  const double n = static_cast<double>(profile.size());
  const auto [lambda_d, lambda_u] = lipschitz_bounds(alpha, 1000);

  BoundReport report;
  report.y = y;
  report.peak = p.peak;
  report.d_alpha = detail::d_alpha_value(alpha, profile.size());
  report.w_max = std::max(p.peak_welfare, wy);
  report.w_min = std::min(detail::positive_welfare(alpha, profile, 0.0),
                          detail::positive_welfare(alpha, profile, 1.0));
  report.observed_ratio = report.w_max / wy;

  const double gap = p.peak - y;
  report.paper_lower = std::exp(lambda_d * gap / (n * alpha.peak_value));
  report.paper_upper = std::exp(n * lambda_u * gap / report.d_alpha);

  // Log-Lipschitz sandwich on [W(y), W(peak)] with the exact extrema.
  const double wgap = report.w_max - wy;
  report.exact_lower = std::exp(wgap / report.w_max);
  report.exact_upper = std::exp(wgap / report.w_min);

  const double slack = 1e-12 * report.observed_ratio;
  report.valid_exact_form = report.observed_ratio >= report.exact_lower - slack &&
                            report.observed_ratio <= report.exact_upper + slack;
  report.valid_paper_form = report.observed_ratio >= report.paper_lower - slack &&
                            report.observed_ratio <= report.paper_upper + slack;
  return report;
}

/// Growth exponent of the upper bound and its large-n limit.
inline std::pair<double, double> asymptotic_exponent(const UtilitySpec& alpha,
                                                     std::size_t n) {
  detail::require_strictly_positive(alpha);
  if (n < 1) throw ConfigError("asymptotic_exponent requires n >= 1");
  const double m = std::min(alpha.value_at_neg1, alpha.value_at_pos1);
  if (!(m > 0.0)) throw PositivityError("endpoint utility must be positive");
  const auto [lambda_d, lambda_u] = lipschitz_bounds(alpha, 1000);
  (void)lambda_d;
  const double exponent = n * lambda_u / detail::d_alpha_value(alpha, n);
  const double limit = lambda_u / m;
  return {exponent, limit};
}

/// Ratio between the alpha-optimal welfare and the alpha-welfare of the
/// beta-optimal location, with the n-free cap exp(n*lambda_u/D_alpha).
inline BoundReport cross_welfare_ratio(const UtilitySpec& alpha, const UtilitySpec& beta,
                                       const LocationProfile& profile,
                                       double tol = 1e-9) {
  detail::require_strictly_positive(alpha);
  const PeakResult pb = peak(beta, profile, tol);
  BoundReport report = theorem5_bounds(alpha, profile, pb.peak, tol);
  const auto [lambda_d, lambda_u] = lipschitz_bounds(alpha, 1000);
  (void)lambda_d;
  report.cross_cap =
      std::exp(profile.size() * lambda_u / report.d_alpha);
  return report;
}

}  // namespace flight

#endif
