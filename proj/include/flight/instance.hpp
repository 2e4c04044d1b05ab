#ifndef FLIGHT_INSTANCE_HPP
#define FLIGHT_INSTANCE_HPP

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <flight/bounds.hpp>
#include <flight/checks.hpp>
#include <flight/distribution.hpp>
#include <flight/error.hpp>
#include <flight/peak.hpp>
#include <flight/profile.hpp>
#include <flight/stochastic.hpp>
#include <flight/utility.hpp>
#include <flight/welfare.hpp>

namespace flight {

/// One self-contained experiment description: explicit agents or a
/// sampled law, a utility, and solver defaults.
struct Instance {
  std::optional<LocationProfile> profile;
  std::optional<Distribution> distribution;
  int sample_n = 0;
  std::uint64_t sample_seed = 0;
  UtilitySpec utility;
  double tolerance = 1e-9;
  int grid_points = 1001;

  /// Explicit agents, or a deterministic draw from the distribution.
  LocationProfile resolve_profile() const {
    if (profile) return *profile;
    return sample_profile(*distribution, sample_n, sample_seed);
  }
};

inline UtilitySpec parse_utility(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family")) {
    throw ParseError("utility: expected object with \"family\"");
  }
  const std::string family = j.at("family").get<std::string>();
  if (family == "pmean") {
    return make_pmean(j.at("p").get<double>());
  }
  if (family == "shifted_pmean") {
    return make_shifted_pmean(j.at("p").get<double>(), j.at("s").get<double>());
  }
  if (family == "nash_log") {
    return make_nash_log(j.value("eps", 1e-12));
  }
  if (family == "linear") {
    return make_linear();
  }
  if (family == "piecewise_linear") {
    std::vector<std::pair<double, double>> table;
    for (const auto& row : j.at("breakpoints")) {
      if (!row.is_array() || row.size() != 2) {
        throw ParseError("utility.breakpoints: expected [z, value] pairs");
      }
      table.emplace_back(row[0].get<double>(), row[1].get<double>());
    }
    UtilitySpec spec = make_piecewise(std::move(table));
    const ConcavityAudit audit = concavity_audit(spec, 1000);
    if (!audit.passed) {
      throw ConcavityError("utility table failed the concavity audit", 0);
    }
    return spec;
  }
  throw ParseError("utility.family: unknown family \"" + family + "\"");
}

inline Distribution parse_distribution(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family")) {
    throw ParseError("distribution: expected object with \"family\"");
  }
  const std::string family = j.at("family").get<std::string>();
  if (family == "uniform") {
    return Distribution::uniform(j.value("a", 0.0), j.value("b", 1.0));
  }
  if (family == "beta") {
    return Distribution::beta(j.at("a").get<double>(), j.at("b").get<double>());
  }
  if (family == "truncated_normal") {
    return Distribution::truncated_normal(j.at("mu").get<double>(),
                                          j.at("sigma").get<double>());
  }
  if (family == "discrete") {
    return Distribution::discrete(j.at("atoms").get<std::vector<double>>(),
                                  j.at("weights").get<std::vector<double>>());
  }
  if (family == "histogram") {
    return Distribution::histogram(j.at("edges").get<std::vector<double>>(),
                                   j.at("masses").get<std::vector<double>>());
  }
  throw ParseError("distribution.family: unknown family \"" + family + "\"");
}

inline Instance parse_instance_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("instance: expected a JSON object");
  const bool has_agents = j.contains("agents");
  const bool has_dist = j.contains("distribution");
  if (has_agents == has_dist) {
    throw ParseError("instance: exactly one of \"agents\" or \"distribution\" required");
  }
  Instance instance;
  if (!j.contains("utility")) throw ParseError("instance: \"utility\" required");
  instance.utility = parse_utility(j.at("utility"));
  if (has_agents) {
    instance.profile = make_profile(j.at("agents").get<std::vector<double>>());
  } else {
    const auto& d = j.at("distribution");
    instance.distribution = parse_distribution(d);
    if (!d.contains("n")) throw ParseError("distribution: \"n\" required");
    instance.sample_n = d.at("n").get<int>();
    if (instance.sample_n < 1) throw ParseError("distribution.n: must be >= 1");
    instance.sample_seed = d.value("seed", 0ULL);
  }
  instance.tolerance = j.value("tolerance", 1e-9);
  if (!(instance.tolerance >= 1e-12 && instance.tolerance <= 1e-3)) {
    throw ParseError("tolerance: must lie in [1e-12, 1e-3]");
  }
  instance.grid_points = j.value("grid_points", 1001);
  if (instance.grid_points < 2) throw ParseError("grid_points: must be >= 2");
  return instance;
}

inline Instance parse_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open instance file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  try {
    return parse_instance_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("schema violation in " + path + ": " + e.what());
  }
}

// ---- report serialization ----

/// Fixed 12-significant-digit, locale-independent numeric format shared
/// by csv and text emission.
inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline void to_json(nlohmann::json& j, const PeakResult& r) {
  j = {{"peak", r.peak},
       {"peak_welfare", r.peak_welfare},
       {"bracket_width", r.bracket_width},
       {"iterations", r.iterations},
       {"boundary_clamped", r.boundary_clamped},
       {"plateau_lo", r.plateau_lo},
       {"plateau_hi", r.plateau_hi}};
}

inline void from_json(const nlohmann::json& j, PeakResult& r) {
  j.at("peak").get_to(r.peak);
  j.at("peak_welfare").get_to(r.peak_welfare);
  j.at("bracket_width").get_to(r.bracket_width);
  j.at("iterations").get_to(r.iterations);
  j.at("boundary_clamped").get_to(r.boundary_clamped);
  j.at("plateau_lo").get_to(r.plateau_lo);
  j.at("plateau_hi").get_to(r.plateau_hi);
}

inline void to_json(nlohmann::json& j, const CheckReport& r) {
  j = {{"theorem", r.theorem},     {"passed", r.passed},
       {"measured", r.measured},   {"bound", r.bound},
       {"witness", r.witness},     {"tolerance_used", r.tolerance_used}};
}

inline void from_json(const nlohmann::json& j, CheckReport& r) {
  j.at("theorem").get_to(r.theorem);
  j.at("passed").get_to(r.passed);
  j.at("measured").get_to(r.measured);
  j.at("bound").get_to(r.bound);
  j.at("witness").get_to(r.witness);
  j.at("tolerance_used").get_to(r.tolerance_used);
}

inline void to_json(nlohmann::json& j, const BoundReport& r) {
  j = {{"observed_ratio", r.observed_ratio},
       {"paper_lower", r.paper_lower},
       {"paper_upper", r.paper_upper},
       {"exact_lower", r.exact_lower},
       {"exact_upper", r.exact_upper},
       {"d_alpha", r.d_alpha},
       {"w_min", r.w_min},
       {"w_max", r.w_max},
       {"valid_paper_form", r.valid_paper_form},
       {"valid_exact_form", r.valid_exact_form},
       {"y", r.y},
       {"peak", r.peak},
       {"cross_cap", r.cross_cap}};
}

inline void from_json(const nlohmann::json& j, BoundReport& r) {
  j.at("observed_ratio").get_to(r.observed_ratio);
  j.at("paper_lower").get_to(r.paper_lower);
  j.at("paper_upper").get_to(r.paper_upper);
  j.at("exact_lower").get_to(r.exact_lower);
  j.at("exact_upper").get_to(r.exact_upper);
  j.at("d_alpha").get_to(r.d_alpha);
  j.at("w_min").get_to(r.w_min);
  j.at("w_max").get_to(r.w_max);
  j.at("valid_paper_form").get_to(r.valid_paper_form);
  j.at("valid_exact_form").get_to(r.valid_exact_form);
  j.at("y").get_to(r.y);
  j.at("peak").get_to(r.peak);
  j.at("cross_cap").get_to(r.cross_cap);
}

inline void to_json(nlohmann::json& j, const WelfareCurve& c) {
  j = {{"grid", c.grid}, {"values", c.values}, {"alpha_id", c.alpha_id}};
}

inline void from_json(const nlohmann::json& j, WelfareCurve& c) {
  j.at("grid").get_to(c.grid);
  j.at("values").get_to(c.values);
  j.at("alpha_id").get_to(c.alpha_id);
}

inline void to_json(nlohmann::json& j, const ExpectedWelfareCurve& c) {
  j = {{"grid", c.grid},
       {"values", c.values},
       {"n", c.n},
       {"quadrature_nodes", c.quadrature_nodes}};
}

inline void from_json(const nlohmann::json& j, ExpectedWelfareCurve& c) {
  j.at("grid").get_to(c.grid);
  j.at("values").get_to(c.values);
  j.at("n").get_to(c.n);
  j.at("quadrature_nodes").get_to(c.quadrature_nodes);
}

inline void to_json(nlohmann::json& j, const ConvergenceReport& r) {
  j = {{"n_schedule", r.n_schedule},
       {"mean_abs_dev", r.mean_abs_dev},
       {"std_err", r.std_err},
       {"mean_normalized", r.mean_normalized},
       {"slope_estimate", r.slope_estimate}};
}

inline void from_json(const nlohmann::json& j, ConvergenceReport& r) {
  j.at("n_schedule").get_to(r.n_schedule);
  j.at("mean_abs_dev").get_to(r.mean_abs_dev);
  j.at("std_err").get_to(r.std_err);
  j.at("mean_normalized").get_to(r.mean_normalized);
  j.at("slope_estimate").get_to(r.slope_estimate);
}

}  // namespace flight

#endif
