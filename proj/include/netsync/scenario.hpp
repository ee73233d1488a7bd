#pragma once

// Scenario orchestration: config -> topology, mismatches, certificate,
// open- or closed-loop integration -> metric log and CSV.

#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "netsync/certify.hpp"
#include "netsync/config.hpp"
#include "netsync/control.hpp"
#include "netsync/dynamics.hpp"
#include "netsync/integrate.hpp"

namespace netsync {

enum class MatrixSource { derived, paper_figures };

inline std::string to_string(MatrixSource m) {
  return m == MatrixSource::derived ? "derived" : "paper-figures";
}

inline MatrixSource parse_matrix_source(const std::string& s) {
  if (s == "derived") return MatrixSource::derived;
  if (s == "paper-figures") return MatrixSource::paper_figures;
  throw ConfigError("certify.matrices: expected 'derived' or 'paper-figures', got '" + s + "'");
}

struct ScenarioConfig {
  std::string name = "custom";

  std::string network_kind = "global";
  Index network_size = 2;
  double network_weight = 1.0;
  std::vector<Topology::Edge> edges;

  LorenzParams params;
  Matrix H = Matrix::Identity(3, 3);

  double mismatch_fraction = 0.05;
  std::optional<Vector> mismatch_envelope;
  std::uint64_t mismatch_seed = 1;

  std::string initial_kind = "box";
  Matrix initial_states;  // N x n when explicit
  std::uint64_t initial_seed = 1;

  Vector domain_k = Eigen::Vector3d(20.0, 25.0, 50.0);

  MatrixSource matrices = MatrixSource::derived;
  std::optional<BoundFitParams> fit;  // fitted when absent
  std::optional<Matrix> F_override;
  std::optional<Matrix> Gamma_override;
  std::optional<double> epsilon;
  long validate_samples = 10000;
  std::uint64_t validate_seed = 1;

  IntegratorConfig integrator{1e-3, 0.0, 50.0, 10, false};

  bool control_enabled = false;
  Vector pin_gains = Vector::Constant(1, 1.0);        // scalar broadcasts
  Vector estimator_gains = Vector::Constant(1, 10.0); // scalar broadcasts
  std::optional<Vector> reference_init;
  std::optional<Matrix> estimate_init;

  std::string output_csv;
  std::string output_estimates;
};

inline const std::set<std::string>& config_schema() {
  static const std::set<std::string> keys = {
      "preset",
      "network.kind", "network.size", "network.weight", "network.edges",
      "system.kind", "system.params",
      "coupling.H",
      "mismatch.fraction", "mismatch.envelope", "mismatch.seed",
      "initial.kind", "initial.states", "initial.seed",
      "domain.k",
      "certify.matrices", "certify.alpha", "certify.beta", "certify.F", "certify.Gamma",
      "certify.epsilon", "certify.samples", "certify.seed",
      "integrate.h", "integrate.t_end", "integrate.observe_every",
      "control.enabled", "control.c", "control.k", "control.s0", "control.gamma_hat0",
      "output.csv", "output.estimates"};
  return keys;
}

/// Built-in figure scenarios: 100 globally coupled Lorenz nodes, H = I, 5% mismatch,
/// k-box (20, 25, 50), alpha = 0.957, beta = 3.091, printed F and Gamma.
inline ScenarioConfig preset(const std::string& name) {
  ScenarioConfig cfg;
  cfg.name = name;
  cfg.network_kind = "global";
  cfg.network_size = 100;
  cfg.matrices = MatrixSource::paper_figures;
  cfg.fit = kPaperFit;
  cfg.integrator = {1e-3, 0.0, 50.0, 10, false};
  if (name == "fig1") return cfg;
  if (name == "fig2" || name == "fig3") {
    cfg.control_enabled = true;
    cfg.pin_gains = Vector::Constant(1, 1.0);
    cfg.estimator_gains = Vector::Constant(1, 10.0);
    if (name == "fig3") cfg.output_estimates = "fig3_estimates.csv";
    return cfg;
  }
  throw ConfigError("unknown preset '" + name + "' (expected fig1, fig2 or fig3)");
}

inline bool is_preset_name(const std::string& s) { return s == "fig1" || s == "fig2" || s == "fig3"; }

namespace detail {

inline Matrix square_from_list(const Vector& v, Index n, const std::string& key) {
  if (v.size() == 1) return v[0] * Matrix::Identity(n, n);
  if (v.size() != n * n)
    throw ConfigError("config key '" + key + "': expected a scalar or " + std::to_string(n * n) +
                      " row-major entries");
  Matrix m(n, n);
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c) m(r, c) = v[r * n + c];
  return m;
}

}  // namespace detail

/// Applies every key of `file` onto `cfg`. Unknown keys are errors.
inline void apply_config(ScenarioConfig& cfg, const ConfigFile& file) {
  for (const auto& [key, value] : file.entries())
    if (!config_schema().count(key)) throw ConfigError("unknown config key '" + key + "'");

  if (file.has("network.kind")) {
    cfg.network_kind = file.get_string("network.kind");
    if (cfg.network_kind != "global" && cfg.network_kind != "custom")
      throw ConfigError("network.kind: expected 'global' or 'custom'");
  }
  if (file.has("network.size")) {
    cfg.network_size = file.get_int("network.size");
    if (cfg.network_size < 1) throw ConfigError("network.size: must be at least 1");
  }
  if (file.has("network.weight")) cfg.network_weight = file.get_double("network.weight");
  if (file.has("network.edges")) {
    cfg.edges.clear();
    const Matrix e = file.get_matrix("network.edges");
    if (e.rows() > 0 && e.cols() != 3) throw ConfigError("network.edges: each edge is [i, j, weight]");
    for (Index r = 0; r < e.rows(); ++r) {
      if (e(r, 0) != std::floor(e(r, 0)) || e(r, 1) != std::floor(e(r, 1)))
        throw ConfigError("network.edges: node indices must be integers");
      cfg.edges.push_back({static_cast<Index>(e(r, 0)), static_cast<Index>(e(r, 1)), e(r, 2)});
    }
  }
  if (file.has("system.kind") && file.get_string("system.kind") != "lorenz")
    throw ConfigError("system.kind: only 'lorenz' is available");
  if (file.has("system.params")) {
    const Vector p = file.get_vector("system.params");
    if (p.size() != 3) throw ConfigError("system.params: expected [a, b, c]");
    cfg.params = {p[0], p[1], p[2]};
  }
  if (file.has("coupling.H")) cfg.H = detail::square_from_list(file.get_vector("coupling.H"), 3, "coupling.H");
  if (file.has("mismatch.fraction")) cfg.mismatch_fraction = file.get_double("mismatch.fraction");
  if (file.has("mismatch.envelope")) {
    cfg.mismatch_envelope = file.get_vector("mismatch.envelope");
    if (cfg.mismatch_envelope->size() != 3) throw ConfigError("mismatch.envelope: expected 3 entries");
  }
  if (file.has("mismatch.seed")) cfg.mismatch_seed = file.get_seed("mismatch.seed");
  if (file.has("initial.kind")) {
    cfg.initial_kind = file.get_string("initial.kind");
    if (cfg.initial_kind != "box" && cfg.initial_kind != "explicit")
      throw ConfigError("initial.kind: expected 'box' or 'explicit'");
  }
  if (file.has("initial.states")) cfg.initial_states = file.get_matrix("initial.states");
  if (file.has("initial.seed")) cfg.initial_seed = file.get_seed("initial.seed");
  if (file.has("domain.k")) {
    cfg.domain_k = file.get_vector("domain.k");
    if (cfg.domain_k.size() != 3) throw ConfigError("domain.k: expected [k1, k2, k3]");
  }
  if (file.has("certify.matrices")) cfg.matrices = parse_matrix_source(file.get_string("certify.matrices"));
  if (file.has("certify.alpha") != file.has("certify.beta"))
    throw ConfigError("certify.alpha and certify.beta must be given together");
  if (file.has("certify.alpha")) {
    cfg.fit = BoundFitParams{file.get_double("certify.alpha"), file.get_double("certify.beta")};
    if (!(cfg.fit->alpha > 0.0) || !(cfg.fit->beta > 0.0))
      throw ConfigError("certify.alpha/beta: must be positive");
  }
  if (file.has("certify.F")) cfg.F_override = detail::square_from_list(file.get_vector("certify.F"), 3, "certify.F");
  if (file.has("certify.Gamma"))
    cfg.Gamma_override = detail::square_from_list(file.get_vector("certify.Gamma"), 3, "certify.Gamma");
  if (file.has("certify.epsilon")) cfg.epsilon = file.get_double("certify.epsilon");
  if (file.has("certify.samples")) cfg.validate_samples = file.get_int("certify.samples");
  if (file.has("certify.seed")) cfg.validate_seed = file.get_seed("certify.seed");
  if (file.has("integrate.h")) cfg.integrator.h = file.get_double("integrate.h");
  if (file.has("integrate.t_end")) cfg.integrator.t_end = file.get_double("integrate.t_end");
  if (file.has("integrate.observe_every"))
    cfg.integrator.observe_every = static_cast<int>(file.get_int("integrate.observe_every"));
  if (file.has("control.enabled")) cfg.control_enabled = file.get_bool("control.enabled");
  if (file.has("control.c")) cfg.pin_gains = file.get_vector("control.c");
  if (file.has("control.k")) cfg.estimator_gains = file.get_vector("control.k");
  if (file.has("control.s0")) cfg.reference_init = file.get_vector("control.s0");
  if (file.has("control.gamma_hat0")) {
    const auto& v = file.get("control.gamma_hat0");
    if (v.is_list && !v.items.empty() && v.items.front().is_list)
      cfg.estimate_init = file.get_matrix("control.gamma_hat0");
    else
      cfg.estimate_init = file.get_vector("control.gamma_hat0").transpose();  // one row, broadcast
  }
  if (file.has("output.csv")) cfg.output_csv = file.get_string("output.csv");
  if (file.has("output.estimates")) cfg.output_estimates = file.get_string("output.estimates");
}

/// Starts from `preset = figN` when present, then applies every other key.
inline ScenarioConfig scenario_from_file(const ConfigFile& file) {
  ScenarioConfig cfg;
  if (file.has("preset")) cfg = preset(file.get_string("preset"));
  apply_config(cfg, file);
  return cfg;
}

inline Topology build_topology(const ScenarioConfig& cfg) {
  try {
    if (cfg.network_kind == "global") return Topology::global(cfg.network_size, cfg.network_weight);
    return Topology::from_edges(cfg.network_size, cfg.edges);
  } catch (const Error& e) {
    throw ConfigError(std::string("network: ") + e.what());
  }
}

inline Vector mismatch_envelope(const ScenarioConfig& cfg) {
  if (cfg.mismatch_envelope) return *cfg.mismatch_envelope;
  if (!(cfg.mismatch_fraction >= 0.0)) throw ConfigError("mismatch.fraction: must be non-negative");
  return cfg.mismatch_fraction *
         Eigen::Vector3d(std::abs(cfg.params.a), std::abs(cfg.params.b), std::abs(cfg.params.c));
}

struct BoundMatrices {
  Matrix F;
  Matrix Gamma;
  Vector envelope;
  std::optional<BoundFitParams> fit;
};

inline BoundMatrices bound_matrices(const ScenarioConfig& cfg) {
  BoundMatrices out;
  out.envelope = mismatch_envelope(cfg);
  const ValidationDomain dom(cfg.domain_k);
  if (cfg.matrices == MatrixSource::paper_figures) {
    out.F = paper_figures_F();
    out.Gamma = paper_figures_Gamma();
    out.fit = cfg.fit;
  } else {
    out.fit = cfg.fit ? *cfg.fit : fit_alpha_beta(dom, cfg.params);
    out.F = lorenz_F(dom, *out.fit, cfg.params);
    out.Gamma = lorenz_Gamma(dom);
  }
  if (cfg.F_override) out.F = *cfg.F_override;
  if (cfg.Gamma_override) out.Gamma = *cfg.Gamma_override;
  if (!is_symmetric(out.Gamma, 1e-12) || symmetric_eigenvalues(out.Gamma).minCoeff() < -1e-9)
    throw ConfigError("certify.Gamma: must be symmetric positive semidefinite");
  return out;
}

inline Vector broadcast_gains(const Vector& g, Index nodes, const std::string& key) {
  if (g.size() == 1) return Vector::Constant(nodes, g[0]);
  if (g.size() != nodes)
    throw ConfigError(key + ": expected a scalar or " + std::to_string(nodes) + " per-node values");
  return g;
}

inline ControllerConfig controller_config(const ScenarioConfig& cfg, Index nodes, const Vector& s0) {
  ControllerConfig ctl;
  ctl.pin_gains = broadcast_gains(cfg.pin_gains, nodes, "control.c");
  ctl.estimator_gains = broadcast_gains(cfg.estimator_gains, nodes, "control.k");
  ctl.reference_init = s0;
  if (!cfg.estimate_init) {
    ctl.estimate_init = Matrix::Zero(nodes, 3);
  } else if (cfg.estimate_init->rows() == 1 && cfg.estimate_init->cols() == 3) {
    ctl.estimate_init = cfg.estimate_init->replicate(nodes, 1);
  } else if (cfg.estimate_init->rows() == nodes && cfg.estimate_init->cols() == 3) {
    ctl.estimate_init = *cfg.estimate_init;
  } else {
    throw ConfigError("control.gamma_hat0: expected [g1, g2, g3] or one row per node");
  }
  for (Index i = 0; i < nodes; ++i) {
    if (!(ctl.pin_gains[i] >= 0.0)) throw ConfigError("control.c: gains must be >= 0");
    if (!(ctl.estimator_gains[i] > 0.0)) throw ConfigError("control.k: gains must be > 0");
  }
  return ctl;
}

/// Node states (and, for box sampling, the default reference) drawn in the k-box.
struct InitialConditions {
  Vector x;
  Vector s;
};

inline InitialConditions initial_conditions(const ScenarioConfig& cfg, Index nodes) {
  const ValidationDomain dom(cfg.domain_k);
  Rng rng(cfg.initial_seed, kInitialStateStream);
  InitialConditions out;
  out.x.resize(nodes * 3);
  if (cfg.initial_kind == "explicit") {
    if (cfg.initial_states.rows() != nodes || cfg.initial_states.cols() != 3)
      throw ConfigError("initial.states: expected " + std::to_string(nodes) + " rows of 3 entries");
    for (Index i = 0; i < nodes; ++i) out.x.segment(i * 3, 3) = cfg.initial_states.row(i).transpose();
  } else {
    for (Index i = 0; i < nodes; ++i) out.x.segment(i * 3, 3) = dom.sample(rng);
  }
  out.s = cfg.reference_init ? *cfg.reference_init : Vector(dom.sample(rng));
  if (out.s.size() != 3) throw ConfigError("control.s0: expected 3 entries");
  if (!out.x.allFinite() || !out.s.allFinite()) throw ConfigError("initial state is not finite");
  return out;
}

struct CertificateReport {
  Certificate certificate;
  BoundMatrices matrices;
  LaplacianSpectrum spectrum;
  bool thm2_requested = false;
  std::optional<ValidationResult> assumption2;
  std::optional<ValidationResult> assumption3;
  Index nodes = 0;

  /// All requested certificates hold.
  bool feasible() const {
    return certificate.thm1_feasible && (!thm2_requested || certificate.thm2_feasible);
  }
};

/// Computes lambda*, the ultimate bound and (when control is on) the pinning margin.
inline CertificateReport compute_certificate(const ScenarioConfig& cfg, bool run_validators) {
  if (cfg.domain_k.size() != 3) throw ConfigError("domain.k: expected 3 entries");
  const Topology topo = build_topology(cfg);
  CertificateReport rep;
  rep.nodes = topo.size();
  rep.matrices = bound_matrices(cfg);
  const Matrix lap = laplacian(topo);
  rep.spectrum = spectrum(lap);
  const Coupling coupling{cfg.H};
  auto& cert = rep.certificate;
  if (rep.spectrum.nonzero().empty()) {
    cert.lambda_star = -std::numeric_limits<double>::infinity();
  } else {
    cert.lambda_star = lambda_star(rep.matrices.F, coupling, rep.spectrum);
  }
  cert.thm1_feasible = cert.lambda_star > kDefinitenessTol;
  cert.error_bound = cert.thm1_feasible
                         ? theorem1_bound(rep.nodes, rep.matrices.envelope, rep.matrices.Gamma, cert.lambda_star)
                         : std::numeric_limits<double>::infinity();
  if (cfg.epsilon) {
    if (!(*cfg.epsilon > 0.0)) throw ConfigError("certify.epsilon: must be positive");
    cert.error_bound_slack =
        cert.lambda_star - *cfg.epsilon > kDefinitenessTol
            ? theorem1_bound_with_slack(rep.nodes, rep.matrices.envelope, rep.matrices.Gamma,
                                        cert.lambda_star, *cfg.epsilon)
            : std::numeric_limits<double>::infinity();
  }
  if (cfg.control_enabled) {
    rep.thm2_requested = true;
    const Vector gains = broadcast_gains(cfg.pin_gains, rep.nodes, "control.c");
    const auto t2 = theorem2_feasibility(rep.matrices.F, coupling, lap, gains);
    cert.thm2_margin = t2.margin;
    cert.thm2_feasible = t2.feasible;
  }
  if (run_validators) {
    const Lorenz sys(cfg.params);
    const ValidationDomain dom(cfg.domain_k);
    dom.validate();
    rep.assumption2 = validate_assumption2(sys, rep.matrices.F, dom, cfg.validate_samples, cfg.validate_seed);
    rep.assumption3 = validate_assumption3(sys, rep.matrices.Gamma, rep.matrices.envelope, dom,
                                           cfg.validate_samples, cfg.validate_seed);
  }
  return rep;
}

/// Shortest decimal text that round-trips a double exactly.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

inline std::string format_matrix(const Matrix& m) {
  std::string out = "[";
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      if (r + c > 0) out += ", ";
      out += format_number(m(r, c));
    }
  return out + "]";
}

/// Ordered key/value pairs of a certificate report.
inline std::vector<std::pair<std::string, std::string>> report_fields(const ScenarioConfig& cfg,
                                                                      const CertificateReport& rep) {
  const auto& c = rep.certificate;
  std::vector<std::pair<std::string, std::string>> f;
  f.emplace_back("scenario", cfg.name);
  f.emplace_back("nodes", std::to_string(rep.nodes));
  f.emplace_back("matrices", to_string(cfg.matrices));
  if (rep.matrices.fit) {
    f.emplace_back("alpha", format_number(rep.matrices.fit->alpha));
    f.emplace_back("beta", format_number(rep.matrices.fit->beta));
  }
  f.emplace_back("F", format_matrix(rep.matrices.F));
  f.emplace_back("Gamma", format_matrix(rep.matrices.Gamma));
  f.emplace_back("envelope", format_matrix(rep.matrices.envelope.transpose()));
  f.emplace_back("fiedler_value", format_number(rep.spectrum.fiedler_value));
  f.emplace_back("lambda_star", format_number(c.lambda_star));
  f.emplace_back("error_bound", format_number(c.error_bound));
  f.emplace_back("thm1_feasible", c.thm1_feasible ? "true" : "false");
  if (c.error_bound_slack) {
    f.emplace_back("epsilon", format_number(*cfg.epsilon));
    f.emplace_back("error_bound_epsilon", format_number(*c.error_bound_slack));
  }
  if (rep.thm2_requested) {
    f.emplace_back("thm2_margin", format_number(*c.thm2_margin));
    f.emplace_back("thm2_feasible", c.thm2_feasible ? "true" : "false");
  }
  if (rep.assumption2) {
    f.emplace_back("assumption2_holds", rep.assumption2->holds ? "true" : "false");
    f.emplace_back("assumption2_worst_violation", format_number(rep.assumption2->worst_violation));
  }
  if (rep.assumption3) {
    f.emplace_back("assumption3_holds", rep.assumption3->holds ? "true" : "false");
    f.emplace_back("assumption3_worst_violation", format_number(rep.assumption3->worst_violation));
  }
  f.emplace_back("certified", rep.feasible() ? "true" : "false");
  return f;
}

inline void write_report_text(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& f) {
  for (const auto& [k, v] : f) os << k << " = " << v << '\n';
}

/// Two-line CSV: header of keys, one row of values (list values quoted).
inline void write_report_csv(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& f) {
  for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i].first;
  os << '\n';
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& v = f[i].second;
    os << (i ? "," : "") << (v.find(',') != std::string::npos ? '"' + v + '"' : v);
  }
  os << '\n';
}

struct ScenarioResult {
  CertificateReport certificate;
  TrajectoryLog metrics;
  TrajectoryLog estimates;  // closed loop only: node 0 estimates over time

  // Closed loop only, per node, over logged samples.
  Vector gamma_err_initial;
  Vector gamma_err_max;
  Vector gamma_err_final;
  Vector estimator_gains;
  double V0 = 0.0;
};

/// Builds and integrates the scenario. Throws ConfigError or NonFiniteState.
inline ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  cfg.integrator.validate();
  ScenarioResult result;
  result.certificate = compute_certificate(cfg, false);
  // No bound column when the certificate fails: the log only carries finite values.
  const std::optional<double> bound =
      result.certificate.certificate.thm1_feasible ? std::optional(result.certificate.certificate.error_bound)
                                                   : std::nullopt;
  const auto base_metrics = [&bound](double err_avg) {
    Metrics m{{"err_avg_norm", err_avg}};
    if (bound) m.emplace_back("bound", *bound);
    return m;
  };

  const Topology topo = build_topology(cfg);
  const Index nodes = topo.size();
  const Lorenz sys(cfg.params);
  const MismatchSet mismatch = sample_mismatches(result.certificate.matrices.envelope, nodes, cfg.mismatch_seed);
  const InitialConditions init = initial_conditions(cfg, nodes);
  const Coupling coupling{cfg.H};

  if (!cfg.control_enabled) {
    const OpenLoopNetwork<Lorenz> net(topo, coupling, sys, mismatch);
    result.metrics = simulate(net, init.x, cfg.integrator, [&](double, const Vector& x) {
      return base_metrics(average_error(x, nodes, 3).norm);
    });
    return result;
  }

  const ControllerConfig ctl = controller_config(cfg, nodes, init.s);
  const ClosedLoopNetwork<Lorenz> net(topo, coupling, sys, mismatch, ctl);
  const AugmentedLayout layout = net.layout();
  result.estimator_gains = ctl.estimator_gains;
  result.gamma_err_initial = (mismatch.per_node - ctl.estimate_init).rowwise().norm();
  result.gamma_err_max = result.gamma_err_initial;
  result.V0 = lyapunov_value(layout.unpack(net.initial_state(init.x)), mismatch, ctl.estimator_gains, 3);

  result.metrics = simulate(net, net.initial_state(init.x), cfg.integrator, [&](double t, const Vector& flat) {
    const AugmentedState z = layout.unpack(flat);
    const Matrix gt = estimation_errors(z, mismatch);
    const Vector per_node = gt.rowwise().norm();
    result.gamma_err_max = result.gamma_err_max.cwiseMax(per_node);
    result.gamma_err_final = per_node;
    const Eigen::Vector3d x0 = z.x.head(3);
    Metrics est{};
    for (Index k = 0; k < 3; ++k) est.emplace_back("gamma_hat_" + std::to_string(k + 1), z.gamma_hat(0, k));
    for (Index k = 0; k < 3; ++k) est.emplace_back("delta_gamma_" + std::to_string(k + 1), mismatch.per_node(0, k));
    result.estimates.append(t, est);
    Metrics m = base_metrics(average_error(z.x, nodes, 3).norm);
    m.emplace_back("err_ref_norm", reference_error(z, 3).norm);
    m.emplace_back("V", lyapunov_value(z, mismatch, ctl.estimator_gains, 3));
    m.emplace_back("gamma_err_norm", gt.norm());
    m.emplace_back("gain_norm", gain_norm(x0, ctl.pin_gains[0], ctl.estimator_gains[0], coupling, sys));
    return m;
  });
  return result;
}

/// Header row then one row per log record, numbers in shortest round-trip form.
inline void write_csv(std::ostream& os, const TrajectoryLog& log) {
  os << 't';
  for (const auto& c : log.channels) os << ',' << c;
  os << '\n';
  for (std::size_t r = 0; r < log.size(); ++r) {
    os << format_number(log.times[r]);
    for (double v : log.records[r]) os << ',' << format_number(v);
    os << '\n';
  }
}

inline std::string to_csv(const TrajectoryLog& log) {
  std::ostringstream os;
  write_csv(os, log);
  return os.str();
}

}  // namespace netsync
