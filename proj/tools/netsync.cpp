// netsync command-line front end: simulate, certify and figure presets.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "netsync/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitBlowUp = 3;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> h;
  std::optional<double> t_end;
  std::optional<double> epsilon;
  std::string matrices;
  std::vector<std::string> sets;
};

void add_override_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--seed", o.seed, "Seed for mismatch and initial-state sampling");
  cmd->add_option("--h", o.h, "Integrator step");
  cmd->add_option("--t-end", o.t_end, "Simulation horizon");
  cmd->add_option("--epsilon", o.epsilon, "Also report the bound with lambda* - epsilon");
  cmd->add_option("--preset-matrices", o.matrices, "F/Gamma source")
      ->check(CLI::IsMember({"derived", "paper-figures"}));
  cmd->add_option("--set", o.sets, "Extra config assignment key=value (repeatable)");
}

/// Loads a config file, or a built-in preset when `source` names one.
netsync::ScenarioConfig load_scenario(const std::string& source, const Overrides& o) {
  netsync::ConfigFile file;
  if (std::filesystem::exists(source)) {
    file = netsync::ConfigFile::load(source);
  } else if (netsync::is_preset_name(source)) {
    file.set("preset", source);
  } else {
    throw netsync::ConfigError("no config file or preset named '" + source + "'");
  }
  for (const auto& assignment : o.sets) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw netsync::ConfigError("--set expects key=value, got '" + assignment + "'");
    file.set(netsync::detail::trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
  }
  auto cfg = netsync::scenario_from_file(file);
  if (o.seed) {
    cfg.mismatch_seed = *o.seed;
    cfg.initial_seed = *o.seed;
  }
  if (o.h) cfg.integrator.h = *o.h;
  if (o.t_end) cfg.integrator.t_end = *o.t_end;
  if (o.epsilon) cfg.epsilon = *o.epsilon;
  if (!o.matrices.empty()) cfg.matrices = netsync::parse_matrix_source(o.matrices);
  return cfg;
}

void write_file(const std::filesystem::path& path, const netsync::TrajectoryLog& log) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw netsync::ConfigError("cannot write '" + path.string() + "'");
  netsync::write_csv(out, log);
}

int run_simulate(const netsync::ScenarioConfig& cfg, const std::filesystem::path& out_dir,
                 const std::string& out_override) {
  const auto result = netsync::run_scenario(cfg);
  const std::string csv = !out_override.empty() ? out_override : cfg.output_csv;
  if (csv.empty() && out_dir.empty()) {
    netsync::write_csv(std::cout, result.metrics);
  } else {
    const std::filesystem::path target = out_dir / (csv.empty() ? cfg.name + ".csv" : csv);
    write_file(target, result.metrics);
    std::cerr << "wrote " << target.string() << '\n';
  }
  if (!cfg.output_estimates.empty() && result.estimates.size() > 0) {
    const std::filesystem::path target = out_dir / cfg.output_estimates;
    write_file(target, result.estimates);
    std::cerr << "wrote " << target.string() << '\n';
  }
  return kExitOk;
}

int run_certify(const netsync::ScenarioConfig& cfg, bool csv, std::ostream& os) {
  const auto rep = netsync::compute_certificate(cfg, true);
  const auto fields = netsync::report_fields(cfg, rep);
  if (csv)
    netsync::write_report_csv(os, fields);
  else
    netsync::write_report_text(os, fields);
  return rep.feasible() ? kExitOk : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synchronization of mismatched oscillator networks: simulation and certificates"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  Overrides sim_o;
  std::string sim_config;
  std::string sim_out;
  auto* sim = app.add_subcommand("simulate", "Integrate a scenario and emit the metrics CSV");
  sim->add_option("config", sim_config, "Config file or preset name")->required();
  sim->add_option("--out", sim_out, "CSV output path (default: output.csv key, else stdout)");
  add_override_flags(sim, sim_o);

  Overrides cert_o;
  std::string cert_config;
  bool cert_csv = false;
  auto* cert = app.add_subcommand("certify", "Print the stability certificate report");
  cert->add_option("config", cert_config, "Config file or preset name")->required();
  cert->add_flag("--csv", cert_csv, "Emit the report as CSV instead of key = value lines");
  add_override_flags(cert, cert_o);

  Overrides pre_o;
  std::string pre_name;
  std::string pre_dir = ".";
  auto* pre = app.add_subcommand("preset", "Run a figure preset: CSV + certificate into --out");
  pre->add_option("name", pre_name, "fig1, fig2 or fig3")->required()->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
  pre->add_option("--out", pre_dir, "Output directory");
  add_override_flags(pre, pre_o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      return run_simulate(load_scenario(sim_config, sim_o), {}, sim_out);
    }
    if (cert->parsed()) {
      return run_certify(load_scenario(cert_config, cert_o), cert_csv, std::cout);
    }
    auto cfg = load_scenario(pre_name, pre_o);
    cfg.output_csv = cfg.name + ".csv";
    const std::filesystem::path dir(pre_dir);
    std::filesystem::create_directories(dir);
    {
      std::ofstream rep(dir / (cfg.name + "_certificate.txt"));
      run_certify(cfg, false, rep);
    }
    run_certify(cfg, false, std::cout);
    return run_simulate(cfg, dir, {});
  } catch (const netsync::NonFiniteState& e) {
    std::cerr << "error: simulation blew up at t = " << e.time() << ": " << e.what() << '\n';
    return kExitBlowUp;
  } catch (const netsync::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
