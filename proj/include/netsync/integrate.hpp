#pragma once

// Fixed-step classical Runge-Kutta integration with sampled metric logging.

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netsync/linalg.hpp"

namespace netsync {

struct IntegratorConfig {
  double h = 1e-3;
  double t0 = 0.0;
  double t_end = 1.0;
  int observe_every = 10;
  bool keep_states = false;

  /// Number of fixed steps; the final step lands on t_end up to rounding of (t_end - t0)/h.
  long steps() const { return std::lround((t_end - t0) / h); }

  void validate() const {
    if (!(h > 0.0) || !std::isfinite(h)) throw Error("integrator: step h must be positive");
    if (!(t_end > t0)) throw Error("integrator: t_end must exceed t0");
    if (steps() < 1) throw Error("integrator: (t_end - t0)/h must be at least 1");
    if (observe_every < 1) throw Error("integrator: observe_every must be positive");
  }
};

using Metrics = std::vector<std::pair<std::string, double>>;

struct TrajectoryLog {
  std::vector<std::string> channels;
  std::vector<double> times;
  std::vector<std::vector<double>> records;  // records[k][c] pairs with channels[c]
  std::vector<Vector> states;                // filled only when keep_states

  std::size_t size() const noexcept { return times.size(); }

  /// Values of one channel over time; throws if the channel is unknown.
  std::vector<double> channel(const std::string& name) const {
    for (std::size_t c = 0; c < channels.size(); ++c) {
      if (channels[c] != name) continue;
      std::vector<double> out;
      out.reserve(records.size());
      for (const auto& r : records) out.push_back(r[c]);
      return out;
    }
    throw Error("trajectory log: no channel named '" + name + "'");
  }

  void append(double t, const Metrics& m) {
    if (channels.empty() && records.empty()) {
      for (const auto& [name, value] : m) channels.push_back(name);
    }
    if (m.size() != channels.size()) throw Error("trajectory log: observer changed its channel set");
    std::vector<double> row;
    row.reserve(m.size());
    for (std::size_t c = 0; c < m.size(); ++c) {
      if (m[c].first != channels[c]) throw Error("trajectory log: observer changed channel order");
      if (!std::isfinite(m[c].second))
        throw NonFiniteState("trajectory log: channel '" + channels[c] + "' is not finite", t);
      row.push_back(m[c].second);
    }
    times.push_back(t);
    records.push_back(std::move(row));
  }
};

/// One classical RK4 step of x' = rhs(t, x).
template <class Rhs>
Vector rk4_step(const Rhs& rhs, const Vector& x, double t, double h) {
  const auto check = [t](const Vector& k) {
    if (!k.allFinite()) throw NonFiniteState("rk4: non-finite stage derivative", t);
  };
  const Vector k1 = rhs(t, x);
  check(k1);
  const Vector k2 = rhs(t + 0.5 * h, x + (0.5 * h) * k1);
  check(k2);
  const Vector k3 = rhs(t + 0.5 * h, x + (0.5 * h) * k2);
  check(k3);
  const Vector k4 = rhs(t + h, x + h * k3);
  check(k4);
  Vector next = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!next.allFinite()) throw NonFiniteState("rk4: non-finite state", t);
  return next;
}

/// Integrates from cfg.t0 to cfg.t_end. The observer sees (t, x) at the start,
/// every cfg.observe_every steps, and at the final step.
template <class Rhs, class Observer>
TrajectoryLog simulate(const Rhs& rhs, Vector x0, const IntegratorConfig& cfg,
                       const Observer& observer) {
  cfg.validate();
  if (!x0.allFinite()) throw NonFiniteState("simulate: initial state is not finite", cfg.t0);
  TrajectoryLog log;
  const long steps = cfg.steps();
  const auto record = [&](double t, const Vector& x) {
    log.append(t, observer(t, x));
    if (cfg.keep_states) log.states.push_back(x);
  };
  Vector x = std::move(x0);
  record(cfg.t0, x);
  for (long k = 0; k < steps; ++k) {
    const double t = cfg.t0 + static_cast<double>(k) * cfg.h;
    x = rk4_step(rhs, x, t, cfg.h);
    const long done = k + 1;
    if (done % cfg.observe_every == 0 || done == steps)
      record(cfg.t0 + static_cast<double>(done) * cfg.h, x);
  }
  return log;
}

/// Variant returning only the final state, for callers that need no log.
template <class Rhs>
Vector integrate_to_end(const Rhs& rhs, Vector x, const IntegratorConfig& cfg) {
  cfg.validate();
  const long steps = cfg.steps();
  for (long k = 0; k < steps; ++k) x = rk4_step(rhs, x, cfg.t0 + static_cast<double>(k) * cfg.h, cfg.h);
  return x;
}

}  // namespace netsync
