#pragma once

// Per-node system models and the open-loop diffusively coupled network.
//
// A network of N copies of a SystemModel, node i evolving as
//   x_i' = f(x_i) + G(x_i) dg_i - sum_j l_ij H x_j
// where dg_i is a constant per-node parameter mismatch and L is the
// Laplacian of the topology. Stacked states are node-major: x = [x_1; ...; x_N].

#include <concepts>
#include <string>
#include <utility>

#include "netsync/graph.hpp"
#include "netsync/parallel.hpp"
#include "netsync/random.hpp"

namespace netsync {

template <class S>
concept SystemModel = requires(const S& sys, const typename S::State& x) {
  typename S::State;
  typename S::Channel;
  { sys.state_dim() } -> std::convertible_to<Index>;
  { sys.mismatch_dim() } -> std::convertible_to<Index>;
  { sys.f(x) } -> std::convertible_to<typename S::State>;
  { sys.G(x) } -> std::convertible_to<typename S::Channel>;
};

struct LorenzParams {
  double a = 10.0;
  double b = 28.0;
  double c = 8.0 / 3.0;
};

/// Lorenz oscillator with the mismatch channel G(x) = diag(x2 - x1, x1, -(8/3) x3).
class Lorenz {
 public:
  using State = Eigen::Vector3d;
  using Channel = Eigen::Matrix3d;

  Lorenz() = default;
  explicit Lorenz(LorenzParams p) : p_(p) {}

  const LorenzParams& params() const noexcept { return p_; }
  static constexpr Index state_dim() noexcept { return 3; }
  static constexpr Index mismatch_dim() noexcept { return 3; }

  State f(const State& x) const {
    return {p_.a * (x[1] - x[0]), p_.b * x[0] - x[1] - x[0] * x[2], x[0] * x[1] - p_.c * x[2]};
  }

  Channel G(const State& x) const {
    Channel g = Channel::Zero();
    g(0, 0) = x[1] - x[0];
    g(1, 1) = x[0];
    g(2, 2) = -(8.0 / 3.0) * x[2];
    return g;
  }

 private:
  LorenzParams p_;
};

inline Eigen::Vector3d lorenz_f(const Eigen::Vector3d& x, const LorenzParams& p = {}) {
  return Lorenz(p).f(x);
}

inline Eigen::Matrix3d lorenz_G(const Eigen::Vector3d& x) { return Lorenz().G(x); }

/// x' = A x with a constant mismatch channel B. Handy as an exactly solvable model.
class LinearSystem {
 public:
  using State = Vector;
  using Channel = Matrix;

  LinearSystem(Matrix a, Matrix b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.rows() != a_.cols() || b_.rows() != a_.rows())
      throw DimensionMismatch("LinearSystem: A must be n x n and B n x m");
  }

  Index state_dim() const noexcept { return a_.rows(); }
  Index mismatch_dim() const noexcept { return b_.cols(); }
  State f(const State& x) const { return a_ * x; }
  Channel G(const State&) const { return b_; }
  const Matrix& A() const noexcept { return a_; }

 private:
  Matrix a_;
  Matrix b_;
};

/// Per-node mismatch vectors (row i is dg_i) and the envelope they live in.
struct MismatchSet {
  Matrix per_node;  // N x m
  Vector envelope;  // m, componentwise >= 0
  std::uint64_t seed = 0;

  Index nodes() const noexcept { return per_node.rows(); }
  Index dim() const noexcept { return per_node.cols(); }

  /// |dg_i[k]| <= envelope[k] for all i, k.
  bool within_envelope() const {
    for (Index i = 0; i < per_node.rows(); ++i)
      for (Index k = 0; k < per_node.cols(); ++k)
        if (std::abs(per_node(i, k)) > envelope[k]) return false;
    return true;
  }

  static MismatchSet zero(Index nodes, Index dim) {
    return {Matrix::Zero(nodes, dim), Vector::Zero(dim), 0};
  }
};

inline constexpr std::uint64_t kMismatchStream = 1;
inline constexpr std::uint64_t kInitialStateStream = 2;

/// Each dg_i[k] uniform in [-envelope[k], +envelope[k]].
inline MismatchSet sample_mismatches(const Vector& envelope, Index nodes, std::uint64_t seed) {
  for (Index k = 0; k < envelope.size(); ++k)
    if (!(envelope[k] >= 0.0))
      throw NegativeEnvelope("sample_mismatches: envelope component " + std::to_string(k) +
                             " is negative");
  Rng rng(seed, kMismatchStream);
  MismatchSet out{Matrix(nodes, envelope.size()), envelope, seed};
  for (Index i = 0; i < nodes; ++i)
    for (Index k = 0; k < envelope.size(); ++k)
      out.per_node(i, k) = rng.uniform(-envelope[k], envelope[k]);
  return out;
}

/// Inner coupling matrix H.
struct Coupling {
  Matrix H;

  static Coupling identity(Index n, double scale = 1.0) { return {scale * Matrix::Identity(n, n)}; }
};

namespace detail {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline Eigen::Map<const RowMajorMatrix> node_view(const Eigen::Ref<const Vector>& x, Index nodes,
                                                  Index n) {
  return {x.data(), nodes, n};
}

}  // namespace detail

/// Open-loop network right-hand side with the Laplacian precomputed.
template <SystemModel Sys>
class OpenLoopNetwork {
 public:
  OpenLoopNetwork(const Topology& topo, Coupling coupling, Sys sys, MismatchSet mismatch)
      : lap_(laplacian(topo)), h_(std::move(coupling.H)), sys_(std::move(sys)),
        mismatch_(std::move(mismatch)) {
    const Index n = sys_.state_dim();
    if (h_.rows() != n || h_.cols() != n)
      throw DimensionMismatch("network: H must be " + std::to_string(n) + "x" + std::to_string(n));
    if (mismatch_.nodes() != lap_.rows() || mismatch_.dim() != sys_.mismatch_dim())
      throw DimensionMismatch("network: mismatch set must be N x m");
  }

  Index nodes() const noexcept { return lap_.rows(); }
  Index state_dim() const noexcept { return sys_.state_dim(); }
  Index dim() const noexcept { return nodes() * state_dim(); }
  const Matrix& laplacian_matrix() const noexcept { return lap_; }
  const Matrix& H() const noexcept { return h_; }
  const Sys& system() const noexcept { return sys_; }
  const MismatchSet& mismatch() const noexcept { return mismatch_; }

  /// Writes node blocks of the derivative for the first nodes()*n entries of `x`.
  void evaluate(const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> out) const {
    const Index n = state_dim();
    if (x.size() < dim() || out.size() < dim())
      throw DimensionMismatch("network: state has " + std::to_string(x.size()) +
                              " entries, expected " + std::to_string(dim()));
    const auto nodes_x = detail::node_view(x, nodes(), n);
    // Row i of L*X is sum_j l_ij x_j^T.
    const detail::RowMajorMatrix coupled = lap_ * nodes_x;
    parallel_for_each_index(nodes(), [&](Index i) {
      const typename Sys::State xi = nodes_x.row(i).transpose();
      out.segment(i * n, n) = sys_.f(xi) + sys_.G(xi) * mismatch_.per_node.row(i).transpose() -
                              h_ * coupled.row(i).transpose();
    });
  }

  Vector operator()(double /*t*/, const Vector& x) const {
    if (x.size() != dim())
      throw DimensionMismatch("network: state has " + std::to_string(x.size()) +
                              " entries, expected " + std::to_string(dim()));
    Vector out(dim());
    evaluate(x, out);
    return out;
  }

 private:
  Matrix lap_;
  Matrix h_;
  Sys sys_;
  MismatchSet mismatch_;
};

template <SystemModel Sys>
Vector network_rhs_open_loop(const Vector& x, const Topology& topo, const Coupling& coupling,
                             const Sys& sys, const MismatchSet& mismatch) {
  return OpenLoopNetwork<Sys>(topo, coupling, sys, mismatch)(0.0, x);
}

struct NodeErrors {
  Matrix per_node;  // N x n, row i = e_i
  double norm = 0.0;
};

/// e_i = x_i - mean_j x_j and ||e|| = sqrt(sum_i ||e_i||^2).
inline NodeErrors average_error(const Eigen::Ref<const Vector>& x, Index nodes, Index n) {
  if (nodes < 1 || x.size() < nodes * n)
    throw DimensionMismatch("average_error: state too short for " + std::to_string(nodes) + " nodes");
  const auto view = detail::node_view(x, nodes, n);
  NodeErrors out;
  const Eigen::RowVectorXd mean = view.colwise().mean();
  out.per_node = view.rowwise() - mean;
  out.norm = out.per_node.norm();
  return out;
}

}  // namespace netsync
