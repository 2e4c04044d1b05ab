#ifndef FLIGHT_UTILITY_HPP
#define FLIGHT_UTILITY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <flight/error.hpp>

namespace flight {

enum class UtilityFamily { pmean, shifted_pmean, nash_log, linear, piecewise_linear };

inline const char* family_name(UtilityFamily f) {
  switch (f) {
    case UtilityFamily::pmean: return "pmean";
    case UtilityFamily::shifted_pmean: return "shifted_pmean";
    case UtilityFamily::nash_log: return "nash_log";
    case UtilityFamily::linear: return "linear";
    case UtilityFamily::piecewise_linear: return "piecewise_linear";
  }
  return "?";
}

/// A utility function alpha on [-1,1]: concave, maximal at 0, possibly
/// asymmetric. Metadata is populated at construction.
struct UtilitySpec {
  UtilityFamily family = UtilityFamily::linear;
  double p = 1.0;                // exponent (pmean, shifted_pmean)
  double shift = 0.0;            // additive shift (shifted_pmean)
  double clamp_eps = 1e-12;      // nash_log clamp
  std::vector<std::pair<double, double>> table;  // piecewise_linear (z, value)

  double peak_value = 0.0;       // alpha(0)
  double value_at_neg1 = 0.0;    // alpha(-1)
  double value_at_pos1 = 0.0;    // alpha(+1)
  bool has_lipschitz = false;    // analytic envelope known
  double lipschitz_lo = 0.0;
  double lipschitz_up = 0.0;
  bool symmetric = false;
  bool strictly_positive = false;
  std::string id;
};

struct ConcavityAudit {
  bool passed = false;
  double worst_violation = 0.0;  // max positive second difference found
  int grid_resolution = 0;
};

inline double eval_utility(const UtilitySpec& spec, double z) {
  if (!(z >= -1.0 && z <= 1.0)) {
    throw DomainError("utility argument outside [-1,1]: " + std::to_string(z));
  }
  switch (spec.family) {
    case UtilityFamily::pmean:
      return -std::pow(std::abs(z), spec.p);
    case UtilityFamily::shifted_pmean:
      return spec.shift - std::pow(std::abs(z), spec.p);
    case UtilityFamily::nash_log:
      return std::log(std::max(1.0 - std::abs(z), spec.clamp_eps));
    case UtilityFamily::linear:
      return 1.0 - std::abs(z);
    case UtilityFamily::piecewise_linear: {
      const auto& t = spec.table;
      auto it = std::upper_bound(
          t.begin(), t.end(), z,
          [](double v, const std::pair<double, double>& bp) { return v < bp.first; });
      if (it == t.begin()) return t.front().second;
      if (it == t.end()) return t.back().second;
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      const double w = (z - lo.first) / (hi.first - lo.first);
      return lo.second + w * (hi.second - lo.second);
    }
  }
  throw ConfigError("unknown utility family");
}

namespace detail {

inline void validate_piecewise(const std::vector<std::pair<double, double>>& table) {
  if (table.size() < 2) {
    throw ConfigError("piecewise table needs at least two breakpoints");
  }
  if (table.front().first != -1.0 || table.back().first != 1.0) {
    throw ConfigError("piecewise table must span [-1,1]");
  }
  for (std::size_t i = 1; i < table.size(); ++i) {
    if (!(table[i].first > table[i - 1].first)) {
      throw ConfigError("piecewise breakpoints must be strictly increasing");
    }
  }
  // Concavity: segment slopes nonincreasing.
  double prev_slope = 0.0;
  for (std::size_t i = 1; i < table.size(); ++i) {
    const double slope = (table[i].second - table[i - 1].second) /
                         (table[i].first - table[i - 1].first);
    if (i > 1 && slope > prev_slope + 1e-12) {
      throw ConcavityError("piecewise table convex at breakpoint " +
                               std::to_string(i - 1),
                           i - 1);
    }
    prev_slope = slope;
  }
  // Peak at z = 0: slopes nonnegative left of 0, nonpositive right of 0.
  for (std::size_t i = 1; i < table.size(); ++i) {
    const double slope = (table[i].second - table[i - 1].second) /
                         (table[i].first - table[i - 1].first);
    if (table[i].first <= 0.0 && slope < -1e-12) {
      throw ConfigError("piecewise table does not peak at 0 (decreasing left of 0)");
    }
    if (table[i - 1].first >= 0.0 && slope > 1e-12) {
      throw ConfigError("piecewise table does not peak at 0 (increasing right of 0)");
    }
  }
}

inline bool table_symmetric(const UtilitySpec& spec) {
  for (const auto& [z, _] : spec.table) {
    if (std::abs(eval_utility(spec, z) - eval_utility(spec, -z)) > 1e-12) {
      return false;
    }
  }
  return true;
}

}  // namespace detail

inline UtilitySpec make_pmean(double p) {
  if (!(p >= 1.0)) throw ConfigError("pmean requires p >= 1");
  UtilitySpec s;
  s.family = UtilityFamily::pmean;
  s.p = p;
  s.peak_value = 0.0;
  s.value_at_neg1 = -1.0;
  s.value_at_pos1 = -1.0;
  s.has_lipschitz = true;
  s.lipschitz_up = p;
  s.lipschitz_lo = -p;
  s.symmetric = true;
  s.strictly_positive = false;
  s.id = "pmean(p=" + std::to_string(p) + ")";
  return s;
}

inline UtilitySpec make_shifted_pmean(double p, double shift) {
  if (!(p >= 1.0)) throw ConfigError("shifted_pmean requires p >= 1");
  if (!(shift > 1.0)) throw ConfigError("shifted_pmean requires shift > 1");
  UtilitySpec s = make_pmean(p);
  s.family = UtilityFamily::shifted_pmean;
  s.shift = shift;
  s.peak_value = shift;
  s.value_at_neg1 = shift - 1.0;
  s.value_at_pos1 = shift - 1.0;
  s.strictly_positive = true;
  s.id = "shifted_pmean(p=" + std::to_string(p) + ",s=" + std::to_string(shift) + ")";
  return s;
}

inline UtilitySpec make_nash_log(double eps = 1e-12) {
  if (!(eps > 0.0 && eps < 0.5)) throw ConfigError("nash_log requires eps in (0, 0.5)");
  UtilitySpec s;
  s.family = UtilityFamily::nash_log;
  s.clamp_eps = eps;
  s.peak_value = 0.0;
  s.value_at_neg1 = std::log(eps);
  s.value_at_pos1 = std::log(eps);
  s.has_lipschitz = true;
  s.lipschitz_up = 1.0 / eps;
  s.lipschitz_lo = -1.0 / eps;
  s.symmetric = true;
  s.strictly_positive = false;
  s.id = "nash_log";
  return s;
}

inline UtilitySpec make_linear() {
  UtilitySpec s;
  s.family = UtilityFamily::linear;
  s.peak_value = 1.0;
  s.value_at_neg1 = 0.0;
  s.value_at_pos1 = 0.0;
  s.has_lipschitz = true;
  s.lipschitz_up = 1.0;
  s.lipschitz_lo = -1.0;
  s.symmetric = true;
  s.strictly_positive = false;
  s.id = "linear";
  return s;
}

inline UtilitySpec make_piecewise(std::vector<std::pair<double, double>> table) {
  detail::validate_piecewise(table);
  UtilitySpec s;
  s.family = UtilityFamily::piecewise_linear;
  s.table = std::move(table);
  s.peak_value = eval_utility(s, 0.0);
  s.value_at_neg1 = s.table.front().second;
  s.value_at_pos1 = s.table.back().second;
  s.has_lipschitz = false;  // estimated on demand, with safety factor
  s.symmetric = detail::table_symmetric(s);
  double lo = s.table.front().second;
  for (const auto& [_, v] : s.table) lo = std::min(lo, v);
  s.strictly_positive = lo > 0.0;
  s.id = "piecewise_linear";
  return s;
}

/// Analytic envelope when the family provides one, otherwise (min,max)
/// difference quotients on a uniform grid widened by 5% on each side.
inline std::pair<double, double> lipschitz_bounds(const UtilitySpec& spec,
                                                  int grid_resolution) {
  if (spec.has_lipschitz) return {spec.lipschitz_lo, spec.lipschitz_up};
  const int m = std::max(grid_resolution, 100);
  const double h = 2.0 / m;
  double lo = std::numeric_limits<double>::infinity();
  double up = -std::numeric_limits<double>::infinity();
  double prev = eval_utility(spec, -1.0);
  for (int i = 1; i <= m; ++i) {
    const double z = -1.0 + i * h;
    const double cur = eval_utility(spec, std::min(z, 1.0));
    const double q = (cur - prev) / h;
    lo = std::min(lo, q);
    up = std::max(up, q);
    prev = cur;
  }
  const double widen = 0.05 * std::max(std::abs(lo), std::abs(up));
  return {lo - widen, up + widen};
}

/// Grid check of the concavity assumption; failure is a report.
inline ConcavityAudit concavity_audit(const UtilitySpec& spec, int grid_resolution) {
  const int m = std::max(grid_resolution, 100);
  const double h = 2.0 / m;
  double worst = 0.0;
  double v0 = eval_utility(spec, -1.0);
  double v1 = eval_utility(spec, -1.0 + h);
  for (int i = 2; i <= m; ++i) {
    const double z = std::min(-1.0 + i * h, 1.0);
    const double v2 = eval_utility(spec, z);
    worst = std::max(worst, v2 - 2.0 * v1 + v0);
    v0 = v1;
    v1 = v2;
  }
  ConcavityAudit audit;
  audit.worst_violation = worst;
  audit.grid_resolution = m;
  const double scale = std::max(1.0, std::abs(spec.peak_value));
  audit.passed = worst <= 1e-9 * scale;
  return audit;
}

}  // namespace flight

#endif
