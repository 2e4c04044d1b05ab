#ifndef FLIGHT_STOCHASTIC_HPP
#define FLIGHT_STOCHASTIC_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include <flight/distribution.hpp>
#include <flight/error.hpp>
#include <flight/profile.hpp>
#include <flight/quadrature.hpp>
#include <flight/random.hpp>
#include <flight/utility.hpp>
#include <flight/welfare.hpp>

namespace flight {

struct ExpectedWelfareCurve {
  std::vector<double> grid;
  std::vector<double> values;  // n * (alpha (*) P)(y)
  int n = 1;
  int quadrature_nodes = 0;
};

struct ConvergenceReport {
  std::vector<std::int64_t> n_schedule;
  std::vector<double> mean_abs_dev;
  std::vector<double> std_err;
  std::vector<double> mean_normalized;  // mean of W/n per schedule entry
  double slope_estimate = 0.0;          // log-log decay of mean_abs_dev vs n
};

struct MvueGapResult {
  double empirical_gap = 0.0;
  double predicted_gap = 0.0;
  double std_error = 0.0;
};

/// n i.i.d. inverse-CDF draws on a seeded substream, sorted.
/// Identical (seed, stream, n, dist) always yields the same profile.
inline LocationProfile sample_profile(const Distribution& dist, int n,
                                      std::uint64_t seed, std::uint64_t stream = 0) {
  if (n < 1) throw ConfigError("sample_profile requires n >= 1");
  SubstreamRng rng(seed, stream);
  std::vector<double> draws(n);
  for (double& d : draws) d = dist.sample(rng);
  return make_profile(draws);
}

/// Single-agent expected utility (alpha (*) P)(y). For continuous laws
/// this is a composite Gauss-Legendre integral over [0,1] with panel
/// splits at z = y (kink of alpha) and at density breakpoints; atoms
/// are summed exactly.
inline double convolve_at(const UtilitySpec& alpha, const Distribution& dist, double y,
                          int quadrature_nodes) {
  if (dist.is_discrete()) {
    double sum = 0.0;
    for (std::size_t k = 0; k < dist.atoms().size(); ++k) {
      sum += dist.weights()[k] * eval_utility(alpha, y - dist.atoms()[k]);
    }
    return sum;
  }
  std::vector<double> cuts = {0.0, 1.0, y};
  for (double b : dist.density_breakpoints()) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-15; }),
             cuts.end());

  constexpr int kOrder = 16;
  const int total_panels = std::max(quadrature_nodes / kOrder, 2);
  double sum = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const double lo = std::clamp(cuts[i - 1], 0.0, 1.0);
    const double hi = std::clamp(cuts[i], 0.0, 1.0);
    if (hi <= lo) continue;
    const int panels =
        std::max(1, static_cast<int>(std::lround(total_panels * (hi - lo))));
    sum += integrate_gl(
        [&](double z) { return eval_utility(alpha, y - z) * dist.density(z); }, lo, hi,
        panels, kOrder);
  }
  return sum;
}

inline ExpectedWelfareCurve expected_welfare(const UtilitySpec& alpha,
                                             const Distribution& dist, int n,
                                             int grid_points, int quadrature_nodes) {
  if (grid_points < 2) throw ConfigError("expected_welfare requires grid_points >= 2");
  if (quadrature_nodes < 64) {
    throw ConfigError("expected_welfare requires quadrature_nodes >= 64");
  }
  ExpectedWelfareCurve curve;
  curve.n = n;
  curve.quadrature_nodes = quadrature_nodes;
  curve.grid.reserve(grid_points);
  curve.values.reserve(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    const double y = static_cast<double>(i) / (grid_points - 1);
    curve.grid.push_back(y);
    curve.values.push_back(n * convolve_at(alpha, dist, y, quadrature_nodes));
  }
  return curve;
}

/// Squared L2 discrepancy between two curves on an identical grid.
inline double f_distance(const std::vector<double>& grid,
                         const std::vector<double>& values_a,
                         const std::vector<double>& values_b) {
  if (values_a.size() != grid.size() || values_b.size() != grid.size()) {
    throw ConfigError("f_distance requires curves on an identical grid");
  }
  double sum = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double d0 = values_a[i - 1] - values_b[i - 1];
    const double d1 = values_a[i] - values_b[i];
    sum += 0.5 * (d0 * d0 + d1 * d1) * (grid[i] - grid[i - 1]);
  }
  return sum;
}

inline double f_distance(const ExpectedWelfareCurve& a, const ExpectedWelfareCurve& b) {
  if (a.grid != b.grid) throw ConfigError("f_distance requires identical grids");
  return f_distance(a.grid, a.values, b.values);
}

/// Empirical excess F-distance of a perturbed expected-welfare curve vs
/// the unperturbed one, against the predicted excess ||g||^2_F.
inline MvueGapResult mvue_gap(const UtilitySpec& alpha, const Distribution& dist, int n,
                              const std::vector<double>& perturbation, int replicates,
                              std::uint64_t seed, int grid_points = 1001,
                              int quadrature_nodes = 512) {
  if (replicates < 100) throw ConfigError("mvue_gap requires replicates >= 100");
  if (static_cast<int>(perturbation.size()) != grid_points) {
    throw ConfigError("perturbation curve must live on the standard grid");
  }
  const ExpectedWelfareCurve mean_curve =
      expected_welfare(alpha, dist, n, grid_points, quadrature_nodes);
  std::vector<double> perturbed(mean_curve.values);
  for (int i = 0; i < grid_points; ++i) perturbed[i] += perturbation[i];

  double sum = 0.0, sum_sq = 0.0;
  std::vector<double> empirical(grid_points);
  for (int r = 0; r < replicates; ++r) {
    const LocationProfile profile = sample_profile(dist, n, seed, r + 1);
    for (int i = 0; i < grid_points; ++i) {
      empirical[i] = welfare(alpha, profile, mean_curve.grid[i]).value;
    }
    const double diff = f_distance(mean_curve.grid, perturbed, empirical) -
                        f_distance(mean_curve.grid, mean_curve.values, empirical);
    sum += diff;
    sum_sq += diff * diff;
  }
  MvueGapResult result;
  result.empirical_gap = sum / replicates;
  const double var =
      std::max(0.0, (sum_sq - sum * sum / replicates) / (replicates - 1));
  result.std_error = std::sqrt(var / replicates);
  std::vector<double> zeros(grid_points, 0.0);
  result.predicted_gap = f_distance(mean_curve.grid, perturbation, zeros);
  return result;
}

/// Law-of-large-numbers experiment: deviation of W/n from the
/// single-agent expected welfare across an n schedule.
inline ConvergenceReport lln_experiment(const UtilitySpec& alpha,
                                        const Distribution& dist, double y,
                                        const std::vector<std::int64_t>& n_schedule,
                                        int replicates, std::uint64_t seed,
                                        int quadrature_nodes = 512) {
  if (replicates < 30) throw ConfigError("lln_experiment requires replicates >= 30");
  for (std::size_t i = 1; i < n_schedule.size(); ++i) {
    if (!(n_schedule[i] > n_schedule[i - 1])) {
      throw ConfigError("n schedule must be strictly increasing");
    }
  }
  const double target = convolve_at(alpha, dist, y, quadrature_nodes);

  ConvergenceReport report;
  report.n_schedule = n_schedule;
  for (std::size_t j = 0; j < n_schedule.size(); ++j) {
    const int n = static_cast<int>(n_schedule[j]);
    double sum = 0.0, sum_sq = 0.0, sum_norm = 0.0;
    for (int r = 0; r < replicates; ++r) {
      const std::uint64_t stream = (static_cast<std::uint64_t>(j + 1) << 32) |
                                   static_cast<std::uint64_t>(r);
      const LocationProfile profile = sample_profile(dist, n, seed, stream);
      const double normalized = welfare(alpha, profile, y).value / n;
      const double dev = std::abs(normalized - target);
      sum += dev;
      sum_sq += dev * dev;
      sum_norm += normalized;
    }
    const double mean = sum / replicates;
    const double var =
        std::max(0.0, (sum_sq - sum * sum / replicates) / (replicates - 1));
    report.mean_abs_dev.push_back(mean);
    report.std_err.push_back(std::sqrt(var / replicates));
    report.mean_normalized.push_back(sum_norm / replicates);
  }

  // least-squares slope of log(mean_abs_dev) vs log(n)
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  for (std::size_t j = 0; j < n_schedule.size(); ++j) {
    if (report.mean_abs_dev[j] <= 0.0) continue;
    const double lx = std::log(static_cast<double>(n_schedule[j]));
    const double ly = std::log(report.mean_abs_dev[j]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  report.slope_estimate =
      m >= 2 ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : 0.0;
  return report;
}

}  // namespace flight

#endif
