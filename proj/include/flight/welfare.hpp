#ifndef FLIGHT_WELFARE_HPP
#define FLIGHT_WELFARE_HPP

#include <cmath>
#include <string>
#include <vector>

#include <flight/error.hpp>
#include <flight/profile.hpp>
#include <flight/utility.hpp>

namespace flight {

struct WelfareValue {
  double value = 0.0;
  double y = 0.0;
};

struct WelfareCurve {
  std::vector<double> grid;    // strictly increasing, grid[0]=0, grid[last]=1
  std::vector<double> values;
  std::string alpha_id;
};

/// W_alpha(y, x) = sum_i alpha(y - x_i). Left-to-right summation; n is
/// desk-scale so the ~n*1e-16 relative error ceiling is acceptable.
inline WelfareValue welfare(const UtilitySpec& alpha, const LocationProfile& profile,
                            double y) {
  if (!(y >= 0.0 && y <= 1.0)) {
    throw DomainError("evaluation point outside [0,1]: " + std::to_string(y));
  }
  double sum = 0.0;
  for (double x : profile.locations()) {
    sum += eval_utility(alpha, y - x);
  }
  return {sum, y};
}

inline WelfareCurve welfare_curve(const UtilitySpec& alpha,
                                  const LocationProfile& profile, int grid_points) {
  if (grid_points < 2) throw ConfigError("welfare_curve requires grid_points >= 2");
  WelfareCurve curve;
  curve.alpha_id = alpha.id;
  curve.grid.reserve(grid_points);
  curve.values.reserve(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    const double y = static_cast<double>(i) / (grid_points - 1);
    curve.grid.push_back(y);
    curve.values.push_back(welfare(alpha, profile, y).value);
  }
  return curve;
}

enum class ReferenceWelfare { utilitarian, egalitarian, nash };

/// The classical definitions in their original (non-logarithmic) form,
/// used as oracles against the alpha-welfare embeddings.
inline double reference_welfare(ReferenceWelfare kind, const LocationProfile& profile,
                                double y) {
  if (!(y >= 0.0 && y <= 1.0)) {
    throw DomainError("evaluation point outside [0,1]: " + std::to_string(y));
  }
  switch (kind) {
    case ReferenceWelfare::utilitarian: {
      double sum = 0.0;
      for (double x : profile.locations()) sum += 1.0 - std::abs(y - x);
      return sum;
    }
    case ReferenceWelfare::egalitarian: {
      double lo = std::numeric_limits<double>::infinity();
      for (double x : profile.locations()) lo = std::min(lo, 1.0 - std::abs(y - x));
      return lo;
    }
    case ReferenceWelfare::nash: {
      double prod = 1.0;
      for (double x : profile.locations()) prod *= 1.0 - std::abs(y - x);
      return prod;
    }
  }
  throw ConfigError("unknown reference welfare kind");
}

}  // namespace flight

#endif
