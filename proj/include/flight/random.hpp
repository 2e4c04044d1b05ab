#ifndef FLIGHT_RANDOM_HPP
#define FLIGHT_RANDOM_HPP

#include <cstdint>

namespace flight {

/// Deterministic counter-free generator with explicit substreams.
/// Every stochastic operation derives its stream from (seed, stream
/// index), so results do not depend on execution order or parallelism.
class SubstreamRng {
 public:
  explicit SubstreamRng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(mix(mix(seed + 0x9E3779B97F4A7C15ULL) ^
                   mix(stream + 0xBF58476D1CE4E5B9ULL))) {
    // burn-in decorrelates nearby (seed, stream) pairs
    next();
    next();
  }

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform double in [0, 1), 53 mantissa bits.
  double uniform01() { return (next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

 private:
  std::uint64_t state_;
};

}  // namespace flight

#endif
