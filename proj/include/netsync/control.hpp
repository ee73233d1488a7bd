#pragma once

// Decentralized pinning with adaptive mismatch compensation.
//
//   s'      = f(s)
//   u_i     = -c_i H (x_i - s) - G(x_i) ghat_i
//   ghat_i' = k_i G(x_i)^T (x_i - s)
//
// The closed loop is integrated as one augmented vector [x_1..x_N, ghat_1..ghat_N, s]
// so the reference and the nodes advance on identical step sequences.

#include <optional>
#include <string>

#include "netsync/dynamics.hpp"

namespace netsync {

struct ControllerConfig {
  Vector pin_gains;        // c_i >= 0, one per node
  Vector estimator_gains;  // k_i > 0, one per node
  Vector reference_init;   // s(0)
  Matrix estimate_init;    // N x m, row i = ghat_i(0)

  void validate(Index nodes, Index n, Index m) const {
    if (pin_gains.size() != nodes || estimator_gains.size() != nodes)
      throw DimensionMismatch("controller: need one pinning and one estimator gain per node");
    if (reference_init.size() != n) throw DimensionMismatch("controller: s0 must have n entries");
    if (estimate_init.rows() != nodes || estimate_init.cols() != m)
      throw DimensionMismatch("controller: initial estimates must be N x m");
    for (Index i = 0; i < nodes; ++i) {
      if (!(pin_gains[i] >= 0.0)) throw Error("controller: c_" + std::to_string(i) + " must be >= 0");
      if (!(estimator_gains[i] > 0.0)) throw Error("controller: k_" + std::to_string(i) + " must be > 0");
    }
  }
};

/// Unpacked view of the augmented closed-loop state.
struct AugmentedState {
  Vector x;                       // N*n stacked node states
  Matrix gamma_hat;               // N x m
  std::optional<Vector> reference;
};

/// Offsets of the blocks inside the flat augmented vector.
struct AugmentedLayout {
  Index nodes = 0;
  Index n = 0;
  Index m = 0;

  Index x_size() const noexcept { return nodes * n; }
  Index gamma_offset() const noexcept { return nodes * n; }
  Index reference_offset() const noexcept { return nodes * (n + m); }
  Index size() const noexcept { return nodes * (n + m) + n; }

  Vector pack(const AugmentedState& z) const {
    if (z.x.size() != x_size() || z.gamma_hat.rows() != nodes || z.gamma_hat.cols() != m ||
        !z.reference || z.reference->size() != n)
      throw DimensionMismatch("augmented state: block sizes do not match the layout");
    Vector flat(size());
    flat.head(x_size()) = z.x;
    for (Index i = 0; i < nodes; ++i) flat.segment(gamma_offset() + i * m, m) = z.gamma_hat.row(i).transpose();
    flat.tail(n) = *z.reference;
    return flat;
  }

  AugmentedState unpack(const Vector& flat) const {
    if (flat.size() != size()) throw DimensionMismatch("augmented state: wrong flat size");
    AugmentedState z;
    z.x = flat.head(x_size());
    z.gamma_hat = detail::node_view(flat.segment(gamma_offset(), nodes * m), nodes, m);
    z.reference = flat.tail(n);
    return z;
  }
};

template <SystemModel Sys>
typename Sys::State reference_rhs(const typename Sys::State& s, const Sys& sys) {
  return sys.f(s);
}

template <SystemModel Sys>
Vector control_input(const typename Sys::State& xi, const typename Sys::State& s,
                     const Vector& gamma_hat, double c, const Coupling& coupling, const Sys& sys) {
  return -c * (coupling.H * (xi - s)) - sys.G(xi) * gamma_hat;
}

template <SystemModel Sys>
Vector estimator_rhs(const typename Sys::State& xi, const typename Sys::State& s, double k,
                     const Sys& sys) {
  return k * (sys.G(xi).transpose() * (xi - s));
}

/// ||c H + k G(x) G(x)^T||_2, the overall controller gain seen by one node.
template <SystemModel Sys>
double gain_norm(const typename Sys::State& xi, double c, double k, const Coupling& coupling,
                 const Sys& sys) {
  const Matrix g = sys.G(xi);
  const Matrix total = c * coupling.H + k * g * g.transpose();
  return Eigen::JacobiSVD<Matrix>(total).singularValues()(0);
}

template <SystemModel Sys>
class ClosedLoopNetwork {
 public:
  ClosedLoopNetwork(const Topology& topo, Coupling coupling, Sys sys, MismatchSet mismatch,
                    ControllerConfig ctl)
      : open_(topo, std::move(coupling), std::move(sys), std::move(mismatch)), ctl_(std::move(ctl)) {
    layout_ = {open_.nodes(), open_.state_dim(), open_.system().mismatch_dim()};
    ctl_.validate(layout_.nodes, layout_.n, layout_.m);
  }

  const AugmentedLayout& layout() const noexcept { return layout_; }
  const OpenLoopNetwork<Sys>& open_loop() const noexcept { return open_; }
  const ControllerConfig& controller() const noexcept { return ctl_; }

  Vector initial_state(const Vector& x0) const {
    return layout_.pack({x0, ctl_.estimate_init, ctl_.reference_init});
  }

  Vector operator()(double /*t*/, const Vector& z) const {
    if (z.size() != layout_.size())
      throw DimensionMismatch("closed loop: state has " + std::to_string(z.size()) +
                              " entries, expected " + std::to_string(layout_.size()));
    const Index n = layout_.n;
    const Index m = layout_.m;
    const Sys& sys = open_.system();
    const Matrix& h = open_.H();
    Vector out(layout_.size());
    auto x_out = out.head(layout_.x_size());
    open_.evaluate(z.head(layout_.x_size()), x_out);
    const typename Sys::State s = z.tail(n);
    out.tail(n) = sys.f(s);
    parallel_for_each_index(layout_.nodes, [&](Index i) {
      const typename Sys::State xi = z.segment(i * n, n);
      const auto gi = sys.G(xi);
      const Vector err = xi - s;
      out.segment(i * n, n) -=
          ctl_.pin_gains[i] * (h * err) + gi * z.segment(layout_.gamma_offset() + i * m, m);
      out.segment(layout_.gamma_offset() + i * m, m) = ctl_.estimator_gains[i] * (gi.transpose() * err);
    });
    return out;
  }

 private:
  OpenLoopNetwork<Sys> open_;
  ControllerConfig ctl_;
  AugmentedLayout layout_;
};

template <SystemModel Sys>
Vector network_rhs_closed_loop(const Vector& z, const Topology& topo, const Coupling& coupling,
                               const Sys& sys, const MismatchSet& mismatch, const ControllerConfig& ctl) {
  return ClosedLoopNetwork<Sys>(topo, coupling, sys, mismatch, ctl)(0.0, z);
}

/// e_i = x_i - s and sqrt(sum ||e_i||^2).
inline NodeErrors reference_error(const AugmentedState& z, Index n) {
  if (!z.reference) throw MissingReference("reference_error: state carries no reference signal");
  if (n < 1 || z.x.size() % n != 0 || z.reference->size() != n)
    throw DimensionMismatch("reference_error: inconsistent state dimensions");
  const Index nodes = z.x.size() / n;
  NodeErrors out;
  out.per_node = detail::node_view(z.x, nodes, n).rowwise() - z.reference->transpose();
  out.norm = out.per_node.norm();
  return out;
}

/// Estimation errors gtilde_i = dg_i - ghat_i, one row per node.
inline Matrix estimation_errors(const AugmentedState& z, const MismatchSet& mismatch) {
  return mismatch.per_node - z.gamma_hat;
}

/// V = 1/2 sum ||x_i - s||^2 + sum 1/(2 k_i) ||gtilde_i||^2.
inline double lyapunov_value(const AugmentedState& z, const MismatchSet& mismatch,
                             const Vector& estimator_gains, Index n) {
  const NodeErrors e = reference_error(z, n);
  const Matrix gt = estimation_errors(z, mismatch);
  double v = 0.5 * e.norm * e.norm;
  for (Index i = 0; i < gt.rows(); ++i) v += gt.row(i).squaredNorm() / (2.0 * estimator_gains[i]);
  return v;
}

}  // namespace netsync
