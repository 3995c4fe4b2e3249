// fibwalk command-line front end.
//
// Subcommands: walk, poincare, orbit, fit, correlate.  Every run writes its
// data as CSV (LF endings, 17-significant-digit floats) plus a JSON manifest
// listing parameters and output files; identical invocations reproduce
// byte-identical CSV bodies.  Exit codes: 0 success, 2 usage error,
// 3 numerical-validation failure, 4 I/O failure.

#include <chrono>
#include <complex>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fibwalk/fibwalk.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

fs::path prepare_outdir(const std::string& out) {
  fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw fibwalk::Error(fibwalk::ErrorCode::io_failure,
                         "cannot create output directory: " + dir.string());
  }
  return dir;
}

json manifest_base(const std::string& command) {
  return json{{"artifact", fibwalk::kArtifactName},
              {"version", fibwalk::kVersion},
              {"command", command},
              {"created_utc", utc_timestamp()}};
}

void write_manifest(const fs::path& dir, const std::string& command, const json& manifest) {
  fibwalk::write_text_file(dir / (command + "_manifest.json"), manifest.dump(2) + "\n");
}

std::pair<std::complex<double>, std::complex<double>> parse_chirality(const std::string& text) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t pos = text.find(',', start);
    const std::string item =
        pos == std::string::npos ? text.substr(start) : text.substr(start, pos - start);
    parts.push_back(fibwalk::detail::parse_double(item, "chirality"));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (parts.size() != 4) {
    throw fibwalk::Error(fibwalk::ErrorCode::bad_parameter,
                         "chirality must be four comma-separated reals: a_re,a_im,b_re,b_im");
  }
  std::complex<double> alpha{parts[0], parts[1]};
  std::complex<double> beta{parts[2], parts[3]};
  const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw fibwalk::Error(fibwalk::ErrorCode::bad_parameter, "chirality must have nonzero norm");
  }
  return {alpha / norm, beta / norm};
}

// ---- walk ----------------------------------------------------------------

struct WalkOptions {
  std::string theta1 = "pi/4";
  std::string theta2 = "pi/4";
  std::int64_t steps = 1000;
  std::string schedule = "fibonacci";
  std::string chirality = "0.70710678118654752,0,0,0.70710678118654752";
  std::int64_t record_every = 1;
  std::string out = ".";
};

void run_walk(const WalkOptions& opt) {
  const double theta1 = fibwalk::parse_angle(opt.theta1);
  const double theta2 = fibwalk::parse_angle(opt.theta2);
  const auto [alpha, beta] = parse_chirality(opt.chirality);

  fibwalk::CoinSchedule schedule;
  if (opt.schedule == "fibonacci") {
    schedule = fibwalk::schedule_for_horizon(opt.steps);
  } else if (opt.schedule == "constant1" || opt.schedule == "constant2") {
    schedule.letters.assign(static_cast<std::size_t>(opt.steps),
                            opt.schedule == "constant1" ? std::uint8_t{1} : std::uint8_t{2});
    schedule.generation_index = -1;
  } else {
    throw fibwalk::Error(fibwalk::ErrorCode::bad_parameter,
                         "schedule must be fibonacci, constant1, or constant2");
  }

  const int capacity = static_cast<int>(2 * opt.steps + 3);
  auto state = fibwalk::WalkerState::localized(capacity, alpha, beta);
  const auto result =
      fibwalk::evolve(state, schedule, fibwalk::CoinAngle(theta1), fibwalk::CoinAngle(theta2),
                      opt.record_every);

  std::string csv = "t,sigma\n";
  for (const auto& [t, sigma] : result.sigma) {
    csv += std::to_string(t);
    csv += ',';
    csv += fibwalk::format_double(sigma);
    csv += '\n';
  }

  const fs::path dir = prepare_outdir(opt.out);
  fibwalk::write_text_file(dir / "sigma.csv", csv);

  json manifest = manifest_base("walk");
  manifest["parameters"] = {{"theta1", theta1},
                            {"theta2", theta2},
                            {"steps", opt.steps},
                            {"schedule", opt.schedule},
                            {"record_every", opt.record_every},
                            {"chirality", {alpha.real(), alpha.imag(), beta.real(), beta.imag()}},
                            {"capacity", capacity}};
  manifest["schedule_generation_index"] =
      schedule.generation_index >= 0 ? json(schedule.generation_index) : json(nullptr);
  manifest["seed"] = nullptr;
  manifest["max_norm_drift"] = result.max_norm_drift;
  manifest["outputs"] = {"sigma.csv"};
  write_manifest(dir, "walk", manifest);
  std::cout << "wrote " << (dir / "sigma.csv").string() << " (" << result.sigma.size()
            << " samples, norm drift " << result.max_norm_drift << ")\n";
}

// ---- poincare ------------------------------------------------------------

struct PoincareOptions {
  double invariant = -0.99;
  int n_orbits = 50;
  int n_iters = 2000;
  int transient = 100;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
};

void run_poincare(const PoincareOptions& opt) {
  const auto section = fibwalk::poincare_section(opt.invariant, opt.n_orbits, opt.n_iters,
                                                 opt.transient, opt.seed);

  auto hemisphere_csv = [](const std::vector<fibwalk::SectionPoint>& points) {
    std::string csv = "orbit_id,x,z\n";
    for (const auto& p : points) {
      csv += std::to_string(p.orbit_id);
      csv += ',';
      csv += fibwalk::format_double(p.x);
      csv += ',';
      csv += fibwalk::format_double(p.z);
      csv += '\n';
    }
    return csv;
  };

  const fs::path dir = prepare_outdir(opt.out);
  fibwalk::write_text_file(dir / "back.csv", hemisphere_csv(section.back));
  fibwalk::write_text_file(dir / "front.csv", hemisphere_csv(section.front));

  json params_list = json::array();
  for (const auto& p : section.orbit_params) params_list.push_back({p[0], p[1], p[2]});

  json manifest = manifest_base("poincare");
  manifest["parameters"] = {{"invariant", opt.invariant},
                            {"n_orbits", section.n_orbits},
                            {"n_iters", opt.n_iters},
                            {"transient", opt.transient}};
  manifest["hemisphere_convention"] = fibwalk::kHemisphereConvention;
  manifest["sampling"] = {{"grid_theta1", section.grid_theta1},
                          {"grid_theta2", section.grid_theta2},
                          {"orbit_params", params_list}};
  manifest["seed"] = opt.seed ? json(*opt.seed) : json(nullptr);
  manifest["max_invariant_drift"] = section.max_drift;
  manifest["outputs"] = {"back.csv", "front.csv"};
  write_manifest(dir, "poincare", manifest);
  std::cout << "wrote " << (dir / "back.csv").string() << " (" << section.back.size()
            << " points), " << (dir / "front.csv").string() << " (" << section.front.size()
            << " points)\n";
}

// ---- orbit ---------------------------------------------------------------

struct OrbitOptions {
  std::string theta1 = "pi/3";
  std::string theta2 = "pi/4";
  std::string phi2 = "pi/6";
  std::int64_t iters = 1000;
  std::string out = ".";
};

void run_orbit(const OrbitOptions& opt) {
  const double theta1 = fibwalk::parse_angle(opt.theta1);
  const double theta2 = fibwalk::parse_angle(opt.theta2);
  const double phi2 = fibwalk::parse_angle(opt.phi2);

  const auto start = fibwalk::initial_condition(theta1, theta2, phi2);
  const auto record = fibwalk::orbit(start, opt.iters);

  std::string csv = "k,x,y,z,C_k\n";
  for (std::size_t k = 0; k < record.points.size(); ++k) {
    const auto& p = record.points[k];
    csv += std::to_string(k);
    csv += ',';
    csv += fibwalk::format_double(p.x);
    csv += ',';
    csv += fibwalk::format_double(p.y);
    csv += ',';
    csv += fibwalk::format_double(p.z);
    csv += ',';
    csv += fibwalk::format_double(fibwalk::invariant(p));
    csv += '\n';
  }

  const fs::path dir = prepare_outdir(opt.out);
  fibwalk::write_text_file(dir / "orbit.csv", csv);

  json manifest = manifest_base("orbit");
  manifest["parameters"] = {{"theta1", theta1},
                            {"theta2", theta2},
                            {"phi2", phi2},
                            {"iterations", opt.iters}};
  manifest["seed"] = nullptr;
  manifest["invariant_start"] = record.C0;
  manifest["max_invariant_drift"] = record.max_drift;
  manifest["outputs"] = {"orbit.csv"};
  write_manifest(dir, "orbit", manifest);
  std::cout << "wrote " << (dir / "orbit.csv").string() << " (" << record.points.size()
            << " points, invariant drift " << record.max_drift << ")\n";
}

// ---- fit -----------------------------------------------------------------

struct FitOptions {
  std::string input;
  double t_min = 0.0;
  double t_max = 0.0;
  std::string out = ".";
};

void run_fit(const FitOptions& opt) {
  const auto table = fibwalk::read_csv(opt.input);
  const int t_col = table.column("t", 0);
  const int v_col = table.column("sigma", 1);
  std::vector<double> times, values;
  times.reserve(table.rows.size());
  values.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    times.push_back(row[static_cast<std::size_t>(t_col)]);
    values.push_back(row[static_cast<std::size_t>(v_col)]);
  }
  const auto series = fibwalk::make_series(std::move(times), std::move(values));
  const auto fit = fibwalk::fit_power_law(series, opt.t_min, opt.t_max);

  json report = {{"exponent", fit.exponent},
                 {"prefactor", fit.prefactor},
                 {"r_squared", fit.r_squared},
                 {"window", {{"t_min", fit.window_tmin}, {"t_max", fit.window_tmax}}},
                 {"n_points", fit.n_points},
                 {"input", opt.input}};

  const fs::path dir = prepare_outdir(opt.out);
  fibwalk::write_text_file(dir / "fit.json", report.dump(2) + "\n");

  json manifest = manifest_base("fit");
  manifest["parameters"] = {{"input", opt.input}, {"t_min", opt.t_min}, {"t_max", opt.t_max}};
  manifest["seed"] = nullptr;
  manifest["outputs"] = {"fit.json"};
  write_manifest(dir, "fit", manifest);
  std::cout << report.dump(2) << "\n";
}

// ---- correlate -----------------------------------------------------------

struct CorrelateOptions {
  std::string input;
  int max_lag = 200;
  std::string out = ".";
};

void run_correlate(const CorrelateOptions& opt) {
  const auto table = fibwalk::read_csv(opt.input);
  const int x_col = table.column("x", 1);
  std::vector<double> xs;
  xs.reserve(table.rows.size());
  for (const auto& row : table.rows) xs.push_back(row[static_cast<std::size_t>(x_col)]);

  const auto report = fibwalk::decay_report_series(xs, opt.max_lag);

  std::string csv = "tau,rho\n";
  for (std::size_t tau = 0; tau < report.rho.size(); ++tau) {
    csv += std::to_string(tau);
    csv += ',';
    csv += fibwalk::format_double(report.rho[tau]);
    csv += '\n';
  }

  const fs::path dir = prepare_outdir(opt.out);
  fibwalk::write_text_file(dir / "correlogram.csv", csv);

  json decay = {{"max_lag", opt.max_lag},
                {"n_points", xs.size()},
                {"observable", "x"},
                {"acf_definition",
                 "normalized autocovariance; lag term divided by (N - tau), variance by N"},
                {"envelope_points", report.envelope.size()},
                {"power_fit",
                 {{"exponent", report.power_fit.exponent},
                  {"prefactor", report.power_fit.prefactor},
                  {"r_squared", report.power_fit.r_squared}}},
                {"exponential_fit",
                 {{"rate", report.exponential_fit.rate},
                  {"prefactor", report.exponential_fit.prefactor},
                  {"r_squared", report.exponential_fit.r_squared}}}};
  fibwalk::write_text_file(dir / "decay_report.json", decay.dump(2) + "\n");

  json manifest = manifest_base("correlate");
  manifest["parameters"] = {{"input", opt.input}, {"max_lag", opt.max_lag}};
  manifest["acf_definition"] = decay["acf_definition"];
  manifest["seed"] = nullptr;
  manifest["outputs"] = {"correlogram.csv", "decay_report.json"};
  write_manifest(dir, "correlate", manifest);
  std::cout << "wrote " << (dir / "correlogram.csv").string() << " and decay_report.json\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fibonacci quantum walk, trace map, and analysis toolkit"};
  app.set_version_flag("--version", std::string(fibwalk::kArtifactName) + " " + fibwalk::kVersion);
  app.set_config("--config", "", "Read options from a key=value config file (section per subcommand)");
  app.require_subcommand(1);

  WalkOptions walk_opt;
  auto* walk = app.add_subcommand("walk", "Evolve a walker and record sigma(t)");
  walk->add_option("--theta1", walk_opt.theta1, "Coin angle for letter 1 (radians or pi literal)");
  walk->add_option("--theta2", walk_opt.theta2, "Coin angle for letter 2 (radians or pi literal)");
  walk->add_option("--steps", walk_opt.steps, "Number of time steps")
      ->check(CLI::PositiveNumber);
  walk->add_option("--schedule", walk_opt.schedule, "fibonacci | constant1 | constant2");
  walk->add_option("--chirality", walk_opt.chirality,
                   "Initial chirality a_re,a_im,b_re,b_im (normalized before use)");
  walk->add_option("--record-every", walk_opt.record_every, "Sampling stride for sigma(t)")
      ->check(CLI::PositiveNumber);
  walk->add_option("--out", walk_opt.out, "Output directory")->envname("FIBWALK_OUTDIR");

  PoincareOptions poincare_opt;
  auto* poincare = app.add_subcommand("poincare", "Poincare section point clouds at fixed invariant");
  poincare->add_option("--invariant", poincare_opt.invariant, "Invariant C in [-1, 0]");
  poincare->add_option("--orbits", poincare_opt.n_orbits, "Number of sampled orbits")
      ->check(CLI::PositiveNumber);
  poincare->add_option("--iters", poincare_opt.n_iters, "Iterations per orbit (incl. burn-in)")
      ->check(CLI::PositiveNumber);
  poincare->add_option("--transient", poincare_opt.transient, "Burn-in iterations to drop")
      ->check(CLI::NonNegativeNumber);
  poincare->add_option("--seed", poincare_opt.seed, "Jitter seed for the sampling grid");
  poincare->add_option("--out", poincare_opt.out, "Output directory")->envname("FIBWALK_OUTDIR");

  OrbitOptions orbit_opt;
  auto* orbit_cmd = app.add_subcommand("orbit", "Iterate the trace map from pulse angles");
  orbit_cmd->add_option("--theta1", orbit_opt.theta1, "theta1 (radians or pi literal)");
  orbit_cmd->add_option("--theta2", orbit_opt.theta2, "theta2 (radians or pi literal)");
  orbit_cmd->add_option("--phi2", orbit_opt.phi2, "phi2 (radians or pi literal)");
  orbit_cmd->add_option("--iters", orbit_opt.iters, "Number of map iterations")
      ->check(CLI::NonNegativeNumber);
  orbit_cmd->add_option("--out", orbit_opt.out, "Output directory")->envname("FIBWALK_OUTDIR");

  FitOptions fit_opt;
  auto* fit = app.add_subcommand("fit", "Power-law fit of a t,sigma CSV over a window");
  fit->add_option("--input", fit_opt.input, "Input CSV (t,sigma)")->required();
  fit->add_option("--tmin", fit_opt.t_min, "Window lower edge")->required();
  fit->add_option("--tmax", fit_opt.t_max, "Window upper edge")->required();
  fit->add_option("--out", fit_opt.out, "Output directory")->envname("FIBWALK_OUTDIR");

  CorrelateOptions corr_opt;
  auto* correlate = app.add_subcommand("correlate", "Correlogram and decay report of an orbit CSV");
  correlate->add_option("--input", corr_opt.input, "Input CSV with an x column")->required();
  correlate->add_option("--max-lag", corr_opt.max_lag, "Largest lag tau")->check(CLI::PositiveNumber);
  correlate->add_option("--out", corr_opt.out, "Output directory")->envname("FIBWALK_OUTDIR");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*walk) run_walk(walk_opt);
    if (*poincare) run_poincare(poincare_opt);
    if (*orbit_cmd) run_orbit(orbit_opt);
    if (*fit) run_fit(fit_opt);
    if (*correlate) run_correlate(corr_opt);
  } catch (const fibwalk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.category()) {
      case fibwalk::ErrorCategory::usage:
        return 2;
      case fibwalk::ErrorCategory::numerical:
        return 3;
      case fibwalk::ErrorCategory::io:
        return 4;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
