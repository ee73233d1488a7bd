#pragma once

// Undirected weighted topologies, their Laplacian and its spectrum.

#include <cmath>
#include <string>
#include <tuple>
#include <vector>

#include "netsync/linalg.hpp"

namespace netsync {

/// Eigenvalues at or below this are treated as zero modes of a Laplacian.
inline constexpr double kZeroEigenvalueTol = 1e-9;

/// Symmetric weighted adjacency with zero diagonal. Validated on construction.
class Topology {
 public:
  struct Edge {
    Index i;
    Index j;
    double weight;
  };

  explicit Topology(Matrix weights, double symmetry_tol = 0.0) : weights_(std::move(weights)) {
    if (weights_.rows() != weights_.cols() || weights_.rows() < 1)
      throw InvalidTopology("topology: weight matrix must be square and non-empty");
    if (!weights_.allFinite()) throw InvalidTopology("topology: non-finite weight");
    for (Index i = 0; i < size(); ++i) {
      if (weights_(i, i) != 0.0)
        throw InvalidTopology("topology: self-loop at node " + std::to_string(i));
      for (Index j = i + 1; j < size(); ++j)
        if (std::abs(weights_(i, j) - weights_(j, i)) > symmetry_tol)
          throw InvalidTopology("topology: weights not symmetric at (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
    }
  }

  /// Unit-weight (or `weight`) globally connected graph on n nodes.
  static Topology global(Index n, double weight = 1.0) {
    if (n < 1) throw InvalidSize("topology: global network needs at least one node");
    Matrix w = Matrix::Constant(n, n, weight);
    w.diagonal().setZero();
    return Topology(std::move(w));
  }

  /// Builds from an undirected edge list; each (i, j, w) sets a_ij = a_ji = w.
  static Topology from_edges(Index n, const std::vector<Edge>& edges) {
    if (n < 1) throw InvalidSize("topology: custom network needs at least one node");
    Matrix w = Matrix::Zero(n, n);
    for (const auto& e : edges) {
      if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n)
        throw InvalidTopology("topology: edge (" + std::to_string(e.i) + "," +
                              std::to_string(e.j) + ") out of range");
      if (e.i == e.j) throw InvalidTopology("topology: self-loop at node " + std::to_string(e.i));
      w(e.i, e.j) = e.weight;
      w(e.j, e.i) = e.weight;
    }
    return Topology(std::move(w));
  }

  Index size() const noexcept { return weights_.rows(); }
  const Matrix& weights() const noexcept { return weights_; }

 private:
  Matrix weights_;
};

struct LaplacianSpectrum {
  Vector eigenvalues;  // ascending
  double fiedler_value = 0.0;

  /// Eigenvalues above the zero-mode tolerance.
  std::vector<double> nonzero() const {
    std::vector<double> out;
    for (Index k = 0; k < eigenvalues.size(); ++k)
      if (eigenvalues[k] > kZeroEigenvalueTol) out.push_back(eigenvalues[k]);
    return out;
  }
};

/// l_ij = -a_ij (i != j), l_ii = sum_j a_ij.
inline Matrix laplacian(const Topology& topo) {
  Matrix lap = -topo.weights();
  lap.diagonal() = topo.weights().rowwise().sum();
  return lap;
}

inline LaplacianSpectrum spectrum(const Matrix& lap) {
  if (lap.rows() != lap.cols()) throw NonSquare("spectrum: matrix is not square");
  if (!is_symmetric(lap, 1e-9)) throw NonSymmetric("spectrum: matrix is not symmetric within 1e-9");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric_part(lap), Eigen::EigenvaluesOnly);
  LaplacianSpectrum out;
  out.eigenvalues = solver.eigenvalues();
  out.fiedler_value = out.eigenvalues.size() > 1 ? out.eigenvalues[1] : 0.0;
  return out;
}

/// R_N = N*I - 1*1^T, the Laplacian of the unit-weight complete graph.
inline Matrix global_coupling_matrix(Index n) {
  if (n < 2) throw InvalidSize("global_coupling_matrix: N must be at least 2, got " + std::to_string(n));
  Matrix r = Matrix::Constant(n, n, -1.0);
  r.diagonal().setConstant(static_cast<double>(n - 1));
  return r;
}

inline bool is_connected(const Topology& topo) {
  return spectrum(laplacian(topo)).fiedler_value > kZeroEigenvalueTol;
}

}  // namespace netsync
