#ifndef FLIGHT_DISTRIBUTION_HPP
#define FLIGHT_DISTRIBUTION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include <flight/error.hpp>
#include <flight/random.hpp>

namespace flight {

enum class DistributionFamily { uniform, beta, truncated_normal, discrete, histogram };

inline const char* family_name(DistributionFamily f) {
  switch (f) {
    case DistributionFamily::uniform: return "uniform";
    case DistributionFamily::beta: return "beta";
    case DistributionFamily::truncated_normal: return "truncated_normal";
    case DistributionFamily::discrete: return "discrete";
    case DistributionFamily::histogram: return "histogram";
  }
  return "?";
}

namespace detail {

// Regularized incomplete beta I_x(a,b) via Lentz continued fraction.
inline double incbeta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return h;
}

inline double regularized_incbeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * incbeta_cf(a, b, x) / a;
  }
  return 1.0 - front * incbeta_cf(b, a, 1.0 - x) / b;
}

inline double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Acklam's approximation to the standard normal quantile, refined by one
// Halley step against erfc.
inline double std_normal_quantile(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1.0 - plow;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= phigh) {
    const double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = std_normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace detail

/// Agent-location law on [0,1] with density (or mass) evaluation and
/// inverse-CDF sampling. Immutable after construction.
class Distribution {
 public:
  static Distribution uniform(double a, double b) {
    if (!(a >= 0.0 && a < b && b <= 1.0)) {
      throw ConfigError("uniform requires 0 <= a < b <= 1");
    }
    Distribution d(DistributionFamily::uniform);
    d.a_ = a;
    d.b_ = b;
    return d;
  }

  static Distribution beta(double alpha, double beta_shape) {
    if (!(alpha > 0.0 && beta_shape > 0.0)) {
      throw ConfigError("beta requires positive shape parameters");
    }
    Distribution d(DistributionFamily::beta);
    d.a_ = alpha;
    d.b_ = beta_shape;
    d.log_beta_norm_ = std::lgamma(alpha + beta_shape) - std::lgamma(alpha) -
                       std::lgamma(beta_shape);
    return d;
  }

  static Distribution truncated_normal(double mu, double sigma) {
    if (!(sigma > 0.0)) throw ConfigError("truncated_normal requires sigma > 0");
    Distribution d(DistributionFamily::truncated_normal);
    d.a_ = mu;
    d.b_ = sigma;
    d.cdf_lo_ = detail::std_normal_cdf((0.0 - mu) / sigma);
    d.cdf_hi_ = detail::std_normal_cdf((1.0 - mu) / sigma);
    if (!(d.cdf_hi_ - d.cdf_lo_ > 0.0)) {
      throw ConfigError("truncated_normal has no mass on [0,1]");
    }
    return d;
  }

  static Distribution discrete(std::vector<double> atoms, std::vector<double> weights) {
    if (atoms.empty() || atoms.size() != weights.size()) {
      throw ConfigError("discrete requires matching non-empty atoms and weights");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (!(atoms[i] >= 0.0 && atoms[i] <= 1.0)) {
        throw ConfigError("discrete atom outside [0,1]");
      }
      if (weights[i] < 0.0) throw ConfigError("discrete weight negative");
      total += weights[i];
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw ConfigError("discrete weights must sum to 1 within 1e-9");
    }
    Distribution d(DistributionFamily::discrete);
    d.atoms_ = std::move(atoms);
    d.weights_ = std::move(weights);
    d.cumulative_.resize(d.weights_.size());
    std::partial_sum(d.weights_.begin(), d.weights_.end(), d.cumulative_.begin());
    d.cumulative_.back() = 1.0;
    return d;
  }

  static Distribution histogram(std::vector<double> edges, std::vector<double> masses) {
    if (edges.size() < 2 || masses.size() + 1 != edges.size()) {
      throw ConfigError("histogram requires k+1 edges for k masses");
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!(edges[i] >= 0.0 && edges[i] <= 1.0)) {
        throw ConfigError("histogram edge outside [0,1]");
      }
      if (i > 0 && !(edges[i] > edges[i - 1])) {
        throw ConfigError("histogram edges must be strictly increasing");
      }
    }
    double total = 0.0;
    for (double m : masses) {
      if (m < 0.0) throw ConfigError("histogram mass negative");
      total += m;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw ConfigError("histogram masses must sum to 1 within 1e-9");
    }
    Distribution d(DistributionFamily::histogram);
    d.atoms_ = std::move(edges);
    d.weights_ = std::move(masses);
    d.cumulative_.resize(d.weights_.size());
    std::partial_sum(d.weights_.begin(), d.weights_.end(), d.cumulative_.begin());
    d.cumulative_.back() = 1.0;
    return d;
  }

  DistributionFamily family() const { return family_; }
  bool is_discrete() const { return family_ == DistributionFamily::discrete; }
  const std::vector<double>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }

  /// Density at z (continuous families only).
  double density(double z) const {
    if (!(z >= 0.0 && z <= 1.0)) return 0.0;
    switch (family_) {
      case DistributionFamily::uniform:
        return (z >= a_ && z <= b_) ? 1.0 / (b_ - a_) : 0.0;
      case DistributionFamily::beta: {
        if (z <= 0.0 || z >= 1.0) {
          // endpoint limit; finite only for shapes >= 1
          if ((z <= 0.0 && a_ < 1.0) || (z >= 1.0 && b_ < 1.0)) return 0.0;
        }
        return std::exp(log_beta_norm_ + (a_ - 1.0) * std::log(std::max(z, 1e-300)) +
                        (b_ - 1.0) * std::log(std::max(1.0 - z, 1e-300)));
      }
      case DistributionFamily::truncated_normal: {
        const double t = (z - a_) / b_;
        return std::exp(-0.5 * t * t) /
               (b_ * std::sqrt(2.0 * M_PI) * (cdf_hi_ - cdf_lo_));
      }
      case DistributionFamily::histogram: {
        auto it = std::upper_bound(atoms_.begin(), atoms_.end(), z);
        if (it == atoms_.begin() || it == atoms_.end()) {
          if (z == atoms_.back()) it = atoms_.end();
          else return 0.0;
        }
        const std::size_t bin = static_cast<std::size_t>(it - atoms_.begin()) - 1;
        const std::size_t k = std::min(bin, weights_.size() - 1);
        return weights_[k] / (atoms_[k + 1] - atoms_[k]);
      }
      case DistributionFamily::discrete:
        throw ConfigError("discrete law has no density");
    }
    return 0.0;
  }

  /// Inverse CDF at u in [0,1].
  double quantile(double u) const {
    u = std::clamp(u, 0.0, 1.0);
    switch (family_) {
      case DistributionFamily::uniform:
        return a_ + u * (b_ - a_);
      case DistributionFamily::beta: {
        // bisection on the regularized incomplete beta
        double lo = 0.0, hi = 1.0;
        for (int i = 0; i < 80; ++i) {
          const double mid = 0.5 * (lo + hi);
          if (detail::regularized_incbeta(a_, b_, mid) < u) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        return 0.5 * (lo + hi);
      }
      case DistributionFamily::truncated_normal: {
        const double p = cdf_lo_ + u * (cdf_hi_ - cdf_lo_);
        const double z = a_ + b_ * detail::std_normal_quantile(
                                       std::clamp(p, 1e-16, 1.0 - 1e-16));
        return std::clamp(z, 0.0, 1.0);
      }
      case DistributionFamily::discrete: {
        auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
        if (it == cumulative_.end()) --it;
        return atoms_[static_cast<std::size_t>(it - cumulative_.begin())];
      }
      case DistributionFamily::histogram: {
        auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
        if (it == cumulative_.end()) --it;
        const std::size_t k = static_cast<std::size_t>(it - cumulative_.begin());
        const double prev = k == 0 ? 0.0 : cumulative_[k - 1];
        const double frac = weights_[k] > 0.0 ? (u - prev) / weights_[k] : 0.0;
        return atoms_[k] + std::clamp(frac, 0.0, 1.0) * (atoms_[k + 1] - atoms_[k]);
      }
    }
    throw ConfigError("unknown distribution family");
  }

  double sample(SubstreamRng& rng) const { return quantile(rng.uniform01()); }

  /// Interior breakpoints where the density is non-smooth; quadrature
  /// panels are split here.
  std::vector<double> density_breakpoints() const {
    switch (family_) {
      case DistributionFamily::uniform:
        return {a_, b_};
      case DistributionFamily::histogram:
        return atoms_;
      default:
        return {};
    }
  }

 private:
  explicit Distribution(DistributionFamily family) : family_(family) {}

  DistributionFamily family_;
  double a_ = 0.0, b_ = 1.0;     // family-specific parameter pair
  double log_beta_norm_ = 0.0;   // beta
  double cdf_lo_ = 0.0, cdf_hi_ = 1.0;  // truncated_normal
  std::vector<double> atoms_;    // discrete atoms / histogram edges
  std::vector<double> weights_;  // masses
  std::vector<double> cumulative_;
};

}  // namespace flight

#endif
