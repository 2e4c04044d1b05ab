// Command-line front end: loads a JSON instance file, dispatches to the
// library, and emits text, csv, or json reports.
//
// Exit codes: 0 success, 1 a mathematical check or bound failed,
// 2 usage/input error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <flight/flight.hpp>

namespace {

using nlohmann::json;

struct Options {
  std::string instance_path;
  std::string format = "text";
  std::string out_path;
  std::uint64_t seed = 0;
  int instances = 0;
  std::string theorems = "1,2,3,4,8";
  std::optional<double> y;
  std::string beta_json;
  std::string n_schedule = "100,1000,10000";
  int replicates = 100;
  int quadrature = 512;
};

std::ostream& open_output(const Options& opt, std::ofstream& file) {
  if (opt.out_path.empty()) return std::cout;
  file.open(opt.out_path);
  if (!file) throw flight::IoError("cannot open output file: " + opt.out_path);
  return file;
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stoll(tok));
  }
  return out;
}

void emit_json(std::ostream& os, const std::string& command, const json& payload) {
  json report = {{"command", command}, {"payload", payload}};
  os << report.dump(2) << "\n";
}

std::string fmt(double v) { return flight::fmt_double(v); }

double default_tolerance() {
  if (const char* env = std::getenv("FLIGHT_DEFAULT_TOL")) {
    return std::stod(env);
  }
  return 1e-9;
}

void print_check(std::ostream& os, const flight::CheckReport& r) {
  os << (r.passed ? "PASS" : "FAIL") << "  " << r.theorem
     << "  measured=" << fmt(r.measured) << "  bound=" << fmt(r.bound)
     << "  tol=" << fmt(r.tolerance_used) << "  [" << r.witness << "]\n";
}

int run_solve(const Options& opt, const flight::Instance& instance, std::ostream& os) {
  const flight::LocationProfile profile = instance.resolve_profile();
  const flight::PeakResult result =
      flight::peak(instance.utility, profile, instance.tolerance);
  if (opt.format == "json") {
    emit_json(os, "solve", result);
  } else if (opt.format == "csv") {
    os << "peak,peak_welfare,bracket_width,iterations,boundary_clamped\n"
       << fmt(result.peak) << "," << fmt(result.peak_welfare) << ","
       << fmt(result.bracket_width) << "," << result.iterations << ","
       << (result.boundary_clamped ? 1 : 0) << "\n";
  } else {
    os << "utility: " << instance.utility.id << "\n"
       << "peak: " << fmt(result.peak) << "\n"
       << "peak welfare: " << fmt(result.peak_welfare) << "\n"
       << "bracket width: " << fmt(result.bracket_width) << "\n"
       << "iterations: " << result.iterations << "\n"
       << "boundary clamped: " << (result.boundary_clamped ? "yes" : "no") << "\n";
  }
  return 0;
}

int run_curve(const Options& opt, const flight::Instance& instance, std::ostream& os) {
  const flight::LocationProfile profile = instance.resolve_profile();
  const flight::WelfareCurve curve =
      flight::welfare_curve(instance.utility, profile, instance.grid_points);
  if (opt.format == "json") {
    emit_json(os, "curve", curve);
  } else {
    os << "y,welfare\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
      os << fmt(curve.grid[i]) << "," << fmt(curve.values[i]) << "\n";
    }
  }
  return 0;
}

int run_compare(const Options& opt, const flight::Instance& instance,
                std::ostream& os) {
  const flight::LocationProfile profile = instance.resolve_profile();
  std::vector<flight::UtilitySpec> utilities = {instance.utility};
  if (!opt.beta_json.empty()) {
    utilities.push_back(flight::parse_utility(json::parse(opt.beta_json)));
  }
  json rows = json::array();
  for (const auto& u : utilities) {
    const flight::PeakResult r = flight::peak(u, profile, instance.tolerance);
    rows.push_back({{"utility", u.id}, {"peak", r.peak}, {"welfare", r.peak_welfare}});
  }
  rows.push_back(
      {{"utility", "median"},
       {"peak", flight::peak_closed_form(flight::Mechanism::median, profile)}});
  rows.push_back(
      {{"utility", "midpoint"},
       {"peak", flight::peak_closed_form(flight::Mechanism::midpoint, profile)}});
  if (opt.format == "json") {
    emit_json(os, "compare", rows);
  } else if (opt.format == "csv") {
    os << "utility,peak,welfare\n";
    for (const auto& row : rows) {
      os << row.at("utility").get<std::string>() << ","
         << fmt(row.at("peak").get<double>()) << ","
         << (row.contains("welfare") ? fmt(row.at("welfare").get<double>()) : "")
         << "\n";
    }
  } else {
    for (const auto& row : rows) {
      os << row.at("utility").get<std::string>()
         << ": peak = " << fmt(row.at("peak").get<double>());
      if (row.contains("welfare")) {
        os << ", welfare = " << fmt(row.at("welfare").get<double>());
      }
      os << "\n";
    }
  }
  return 0;
}

flight::UtilitySpec random_family(flight::SubstreamRng& rng) {
  switch (rng.below(4)) {
    case 0: return flight::make_pmean(1.0 + 2.0 * rng.uniform01());
    case 1: return flight::make_shifted_pmean(1.0 + 2.0 * rng.uniform01(),
                                              1.5 + rng.uniform01());
    case 2: return flight::make_nash_log();
    default: return flight::make_linear();
  }
}

flight::LocationProfile random_profile(flight::SubstreamRng& rng, int max_n) {
  const int n = 1 + static_cast<int>(rng.below(max_n));
  std::vector<double> xs(n);
  for (double& x : xs) x = rng.uniform01();
  return flight::make_profile(xs);
}

int run_check(const Options& opt, const flight::Instance& instance, std::ostream& os) {
  const auto theorems = parse_int_list(opt.theorems);
  const double tol = instance.tolerance;
  std::vector<flight::CheckReport> reports;

  auto has = [&](std::int64_t t) {
    for (auto v : theorems) {
      if (v == t) return true;
    }
    return false;
  };

  if (opt.instances > 0) {
    // randomized suite over built-in families
    for (int i = 0; i < opt.instances; ++i) {
      flight::SubstreamRng rng(opt.seed, i);
      const flight::UtilitySpec alpha = random_family(rng);
      const flight::LocationProfile profile = random_profile(rng, 20);
      if (has(1)) reports.push_back(flight::check_concavity(alpha, profile, 201));
      if (has(2)) {
        try {
          const double margin = std::min(profile.front(), 1.0 - profile.back());
          if (margin > 1e-6) {
            const double c = rng.uniform(-profile.front(), 1.0 - profile.back());
            reports.push_back(
                flight::check_location_invariance(alpha, profile, c, tol));
          }
        } catch (const flight::SkippedCheck&) {
        }
      }
      if (has(3)) {
        const std::size_t idx = 1 + rng.below(profile.size());
        const double xi = profile[idx - 1];
        if (xi > 1e-9) {
          reports.push_back(flight::check_shift_monotonicity(
              alpha, profile, idx, rng.uniform(0.0, xi), tol));
        }
      }
      if (has(4)) {
        std::vector<double> other(profile.size());
        for (double& x : other) x = rng.uniform01();
        reports.push_back(
            flight::check_max_shift(alpha, profile, flight::make_profile(other), tol));
      }
      if (has(8) && alpha.symmetric) {
        reports.push_back(flight::check_median_peak(alpha, profile, tol));
      }
    }
  } else {
    const flight::LocationProfile profile = instance.resolve_profile();
    if (has(1)) {
      reports.push_back(
          flight::check_concavity(instance.utility, profile, instance.grid_points));
    }
    if (has(2)) {
      try {
        const double c = 0.5 * (1.0 - profile.back());
        reports.push_back(
            flight::check_location_invariance(instance.utility, profile, c, tol));
      } catch (const flight::SkippedCheck&) {
      }
    }
    if (has(3) && profile.back() > 0.0) {
      const std::size_t idx = profile.size();
      reports.push_back(flight::check_shift_monotonicity(
          instance.utility, profile, idx, 0.5 * profile[idx - 1], tol));
    }
    if (has(8) && instance.utility.symmetric) {
      reports.push_back(flight::check_median_peak(instance.utility, profile, tol));
    }
  }

  bool all_passed = true;
  for (const auto& r : reports) all_passed = all_passed && r.passed;

  if (opt.format == "json") {
    emit_json(os, "check", reports);
  } else if (opt.format == "csv") {
    os << "theorem,passed,measured,bound,tolerance,witness\n";
    for (const auto& r : reports) {
      os << r.theorem << "," << (r.passed ? 1 : 0) << "," << fmt(r.measured) << ","
         << fmt(r.bound) << "," << fmt(r.tolerance_used) << ",\"" << r.witness
         << "\"\n";
    }
  } else {
    for (const auto& r : reports) print_check(os, r);
    os << reports.size() << " checks, " << (all_passed ? "all passed" : "FAILURES")
       << "\n";
  }
  return all_passed ? 0 : 1;
}

int run_bounds(const Options& opt, const flight::Instance& instance, std::ostream& os) {
  const flight::LocationProfile profile = instance.resolve_profile();
  flight::BoundReport report;
  if (!opt.beta_json.empty()) {
    const flight::UtilitySpec beta = flight::parse_utility(json::parse(opt.beta_json));
    report = flight::cross_welfare_ratio(instance.utility, beta, profile,
                                         instance.tolerance);
  } else {
    const double y = opt.y.value_or(0.0);
    report = flight::theorem5_bounds(instance.utility, profile, y, instance.tolerance);
  }
  if (opt.format == "json") {
    emit_json(os, "bounds", report);
  } else if (opt.format == "csv") {
    os << "observed_ratio,exact_lower,exact_upper,paper_lower,paper_upper,"
          "d_alpha,w_min,w_max,valid_exact_form,valid_paper_form\n"
       << fmt(report.observed_ratio) << "," << fmt(report.exact_lower) << ","
       << fmt(report.exact_upper) << "," << fmt(report.paper_lower) << ","
       << fmt(report.paper_upper) << "," << fmt(report.d_alpha) << ","
       << fmt(report.w_min) << "," << fmt(report.w_max) << ","
       << (report.valid_exact_form ? 1 : 0) << ","
       << (report.valid_paper_form ? 1 : 0) << "\n";
  } else {
    os << "observed ratio: " << fmt(report.observed_ratio) << "\n"
       << "exact bounds:   [" << fmt(report.exact_lower) << ", "
       << fmt(report.exact_upper) << "]  "
       << (report.valid_exact_form ? "valid" : "VIOLATED") << "\n"
       << "paper bounds:   [" << fmt(report.paper_lower) << ", "
       << fmt(report.paper_upper) << "]  "
       << (report.valid_paper_form
               ? "valid"
               : "violated (D_alpha presumes an agent at an endpoint)")
       << "\n";
    if (report.cross_cap > 0.0) {
      os << "cross-welfare cap: " << fmt(report.cross_cap) << "\n";
    }
  }
  return report.valid_exact_form ? 0 : 1;
}

int run_asymptote(const Options& opt, const flight::Instance& instance,
                  std::ostream& os) {
  const auto schedule = parse_int_list(opt.n_schedule);
  json rows = json::array();
  for (auto n : schedule) {
    const auto [exponent, limit] =
        flight::asymptotic_exponent(instance.utility, static_cast<std::size_t>(n));
    rows.push_back({{"n", n},
                    {"exponent", exponent},
                    {"cap", std::exp(exponent)},
                    {"limit", limit}});
  }
  if (opt.format == "json") {
    emit_json(os, "asymptote", rows);
  } else {
    os << "n,exponent,cap,limit\n";
    for (const auto& row : rows) {
      os << row.at("n").get<std::int64_t>() << ","
         << fmt(row.at("exponent").get<double>()) << ","
         << fmt(row.at("cap").get<double>()) << ","
         << fmt(row.at("limit").get<double>()) << "\n";
    }
  }
  return 0;
}

int run_expected(const Options& opt, const flight::Instance& instance,
                 std::ostream& os) {
  if (!instance.distribution) {
    throw flight::UsageError("expected requires a distribution instance");
  }
  const flight::ExpectedWelfareCurve curve =
      flight::expected_welfare(instance.utility, *instance.distribution,
                               instance.sample_n, instance.grid_points,
                               opt.quadrature);
  if (opt.format == "json") {
    emit_json(os, "expected", curve);
  } else {
    os << "y,expected_welfare\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
      os << fmt(curve.grid[i]) << "," << fmt(curve.values[i]) << "\n";
    }
  }
  return 0;
}

int run_converge(const Options& opt, const flight::Instance& instance,
                 std::ostream& os) {
  if (!instance.distribution) {
    throw flight::UsageError("converge requires a distribution instance");
  }
  const double y = opt.y.value_or(0.5);
  const flight::ConvergenceReport report = flight::lln_experiment(
      instance.utility, *instance.distribution, y, parse_int_list(opt.n_schedule),
      opt.replicates, opt.seed, opt.quadrature);
  if (opt.format == "json") {
    emit_json(os, "converge", report);
  } else {
    os << "n,mean_abs_dev,std_err\n";
    for (std::size_t i = 0; i < report.n_schedule.size(); ++i) {
      os << report.n_schedule[i] << "," << fmt(report.mean_abs_dev[i]) << ","
         << fmt(report.std_err[i]) << "\n";
    }
    if (opt.format == "text") {
      os << "slope," << fmt(report.slope_estimate) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized-welfare facility location on the unit interval"};
  app.require_subcommand(1);

  Options opt;
  std::string command;
  for (const char* name : {"solve", "curve", "compare", "check", "bounds",
                           "asymptote", "expected", "converge"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("instance", opt.instance_path, "instance JSON file")->required();
    sub->add_option("--format", opt.format, "text, csv, or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    sub->add_option("--out", opt.out_path, "output path (default stdout)");
    sub->add_option("--seed", opt.seed, "random seed");
    sub->add_option("--instances", opt.instances, "random suite size");
    sub->add_option("--theorems", opt.theorems, "comma list of theorem ids");
    sub->add_option("--y", opt.y, "evaluation point");
    sub->add_option("--beta", opt.beta_json, "second utility (JSON object)");
    sub->add_option("--n-schedule", opt.n_schedule, "comma list of agent counts");
    sub->add_option("--replicates", opt.replicates, "Monte Carlo replicates");
    sub->add_option("--quadrature", opt.quadrature, "quadrature nodes");
    sub->callback([&command, name] { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    flight::Instance instance = flight::parse_instance(opt.instance_path);
    if (instance.tolerance == 1e-9) {
      instance.tolerance = default_tolerance();
    }
    std::ofstream file;
    std::ostream& os = open_output(opt, file);
    if (command == "solve") return run_solve(opt, instance, os);
    if (command == "curve") return run_curve(opt, instance, os);
    if (command == "compare") return run_compare(opt, instance, os);
    if (command == "check") return run_check(opt, instance, os);
    if (command == "bounds") return run_bounds(opt, instance, os);
    if (command == "asymptote") return run_asymptote(opt, instance, os);
    if (command == "expected") return run_expected(opt, instance, os);
    if (command == "converge") return run_converge(opt, instance, os);
    throw flight::UsageError("unknown command: " + command);
  } catch (const flight::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const flight::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const flight::PositivityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const flight::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
