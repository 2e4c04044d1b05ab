#ifndef FLIGHT_PROFILE_HPP
#define FLIGHT_PROFILE_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include <flight/error.hpp>

namespace flight {

/// Sorted agent positions on [0,1]. Immutable after construction;
/// duplicates are allowed (multiset semantics).
class LocationProfile {
 public:
  const std::vector<double>& locations() const { return locations_; }
  std::size_t size() const { return locations_.size(); }
  double operator[](std::size_t i) const { return locations_[i]; }
  double front() const { return locations_.front(); }
  double back() const { return locations_.back(); }

  friend LocationProfile make_profile(const std::vector<double>& raw);

 private:
  explicit LocationProfile(std::vector<double> sorted)
      : locations_(std::move(sorted)) {}
  std::vector<double> locations_;
};

inline LocationProfile make_profile(const std::vector<double>& raw) {
  if (raw.empty()) {
    throw EmptyProfileError("profile requires at least one agent");
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!(raw[i] >= 0.0 && raw[i] <= 1.0)) {
      throw DomainError("agent location outside [0,1] at index " +
                        std::to_string(i));
    }
  }
  std::vector<double> sorted = raw;
  std::sort(sorted.begin(), sorted.end());
  return LocationProfile(std::move(sorted));
}

}  // namespace flight

#endif
