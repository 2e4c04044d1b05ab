#ifndef FLIGHT_PEAK_HPP
#define FLIGHT_PEAK_HPP

#include <cmath>
#include <string>

#include <flight/error.hpp>
#include <flight/profile.hpp>
#include <flight/utility.hpp>
#include <flight/welfare.hpp>

namespace flight {

struct PeakResult {
  double peak = 0.0;           // P_alpha(x)
  double peak_welfare = 0.0;   // W_alpha(peak, x)
  double bracket_width = 0.0;  // final uncertainty interval length
  int iterations = 0;
  bool boundary_clamped = false;
  // Plateau extent when the optimum is non-unique (canonical point is the
  // plateau midpoint); equals [peak, peak] for strict maxima.
  double plateau_lo = 0.0;
  double plateau_hi = 0.0;
};

enum class Mechanism { median, midpoint };

/// Closed-form mechanisms. Median: middle element for odd n, midpoint of
/// the two central agents for even n. Midpoint: center of the extremes.
inline double peak_closed_form(Mechanism mechanism, const LocationProfile& profile) {
  const std::size_t n = profile.size();
  switch (mechanism) {
    case Mechanism::median:
      if (n % 2 == 1) return profile[(n - 1) / 2];
      return 0.5 * (profile[n / 2 - 1] + profile[n / 2]);
    case Mechanism::midpoint:
      return 0.5 * (profile.front() + profile.back());
  }
  throw ConfigError("unknown mechanism");
}

namespace detail {

inline double eval_welfare_checked(const UtilitySpec& alpha,
                                   const LocationProfile& profile, double y) {
  const double w = welfare(alpha, profile, y).value;
  if (!std::isfinite(w)) {
    throw NumericalError("non-finite welfare at y = " + std::to_string(y));
  }
  return w;
}

// Leftmost (dir < 0) or rightmost (dir > 0) point of the superlevel set
// {y : W(y) >= threshold}, which is an interval by concavity.
inline double plateau_edge(const UtilitySpec& alpha, const LocationProfile& profile,
                           double from, double limit, double threshold) {
  double inside = from;
  double outside = limit;
  if (eval_welfare_checked(alpha, profile, limit) >= threshold) return limit;
  while (std::abs(outside - inside) > 1e-12) {
    const double mid = 0.5 * (inside + outside);
    if (eval_welfare_checked(alpha, profile, mid) >= threshold) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return inside;
}

}  // namespace detail

/// Golden-section maximization of W_alpha over [0,1]. Concavity of the
/// welfare guarantees unimodality; the search is derivative-free so
/// kinked utilities (p = 1, piecewise tables) are handled uniformly.
/// When the final bracket is flat the surrounding plateau is located by
/// bisection and its midpoint returned.
inline PeakResult peak(const UtilitySpec& alpha, const LocationProfile& profile,
                       double tol) {
  if (!(tol >= 1e-12 && tol <= 1e-3)) {
    throw ConfigError("peak tolerance must lie in [1e-12, 1e-3]");
  }
  constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5)-1)/2
  double a = 0.0, b = 1.0;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = detail::eval_welfare_checked(alpha, profile, c);
  double fd = detail::eval_welfare_checked(alpha, profile, d);
  int iterations = 0;
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = detail::eval_welfare_checked(alpha, profile, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = detail::eval_welfare_checked(alpha, profile, d);
    }
    ++iterations;
  }

  PeakResult result;
  result.bracket_width = b - a;
  result.iterations = iterations;
  double y = 0.5 * (a + b);
  double fy = detail::eval_welfare_checked(alpha, profile, y);
  if (fc > fy) {
    y = c;
    fy = fc;
  }
  if (fd > fy) {
    y = d;
    fy = fd;
  }

  // Canonicalize to the midpoint of the near-maximum superlevel set.
  // For a strict optimum this set is a sliver around the true peak and
  // the midpoint only sharpens the estimate; for flat-topped welfare
  // (e.g. even-n utilitarian) it is the plateau, whose midpoint is the
  // conventional answer, independent of where the bracket landed.
  const double scale = std::max(1.0, std::abs(fy));
  const double threshold = fy - 1e-12 * scale;
  result.plateau_lo = detail::plateau_edge(alpha, profile, y, 0.0, threshold);
  result.plateau_hi = detail::plateau_edge(alpha, profile, y, 1.0, threshold);
  y = 0.5 * (result.plateau_lo + result.plateau_hi);
  fy = detail::eval_welfare_checked(alpha, profile, y);

  result.peak = y;
  result.peak_welfare = fy;
  result.boundary_clamped = (y <= tol) || (y >= 1.0 - tol) ||
                            result.plateau_lo <= tol ||
                            result.plateau_hi >= 1.0 - tol;
  return result;
}

/// Exhaustive grid oracle, independent of the golden-section path.
/// Argmax at the smallest index on ties.
inline PeakResult peak_oracle(const UtilitySpec& alpha, const LocationProfile& profile,
                              int grid_points) {
  if (grid_points < 1001) throw ConfigError("peak_oracle requires grid_points >= 1001");
  double best_y = 0.0;
  double best_w = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_points; ++i) {
    const double y = static_cast<double>(i) / (grid_points - 1);
    const double w = detail::eval_welfare_checked(alpha, profile, y);
    if (w > best_w) {
      best_w = w;
      best_y = y;
    }
  }
  PeakResult result;
  result.peak = best_y;
  result.peak_welfare = best_w;
  result.bracket_width = 1.0 / (grid_points - 1);
  result.iterations = grid_points;
  result.boundary_clamped =
      best_y <= result.bracket_width || best_y >= 1.0 - result.bracket_width;
  result.plateau_lo = result.plateau_hi = best_y;
  return result;
}

}  // namespace flight

#endif
