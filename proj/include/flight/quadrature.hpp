#ifndef FLIGHT_QUADRATURE_HPP
#define FLIGHT_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace flight {

/// Gauss-Legendre nodes/weights on [-1,1], computed once per order by
/// Newton iteration on the Legendre polynomial and cached.
inline const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(
    int order) {
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  std::vector<double> nodes(order), weights(order);
  for (int i = 0; i < order; ++i) {
    // Chebyshev initial guess
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = order * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return cache.emplace(order, std::make_pair(std::move(nodes), std::move(weights)))
      .first->second;
}

/// Composite Gauss-Legendre over [a,b] split into `panels` equal panels.
template <typename F>
double integrate_gl(F&& f, double a, double b, int panels, int order = 16) {
  const auto& [nodes, weights] = gauss_legendre(order);
  double sum = 0.0;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    const double half = 0.5 * h;
    double panel = 0.0;
    for (int k = 0; k < order; ++k) {
      panel += weights[k] * f(mid + half * nodes[k]);
    }
    sum += panel * half;
  }
  return sum;
}

/// Trapezoidal rule on an explicit grid.
inline double trapezoid(const std::vector<double>& grid,
                        const std::vector<double>& values) {
  double sum = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    sum += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
  }
  return sum;
}

}  // namespace flight

#endif
