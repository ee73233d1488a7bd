#pragma once

// Reference computations kept independent of the library code paths they check.

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "netsync/random.hpp"

namespace netsync::oracle {

/// Largest eigenvalue of a symmetric 3x3 by the closed-form trigonometric solution
/// of the characteristic cubic.
inline double lambda_max_sym3(const Eigen::Matrix3d& a) {
  const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
  if (p1 == 0.0) return std::max({a(0, 0), a(1, 1), a(2, 2)});
  const double q = a.trace() / 3.0;
  const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                    (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  const Eigen::Matrix3d b = (a - q * Eigen::Matrix3d::Identity()) / p;
  const double r = std::clamp(b.determinant() / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  return q + 2.0 * p * std::cos(phi);
}

/// x^T P y + y^T P^T x <= x^T P K^{-1} P^T x + y^T K y for K positive definite.
/// Returns (lhs, rhs).
inline std::pair<double, double> young_inequality_sides(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                                        const Eigen::MatrixXd& p, const Eigen::MatrixXd& k) {
  const double lhs = 2.0 * x.dot(p * y);
  const double rhs = x.dot(p * k.ldlt().solve(p.transpose() * x)) + y.dot(k * y);
  return {lhs, rhs};
}

/// Random connected symmetric weighted graph: a random spanning tree plus extra edges.
inline Eigen::MatrixXd random_connected_weights(Rng& rng, long n, double extra_edge_prob = 0.3) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (long i = 1; i < n; ++i) {
    const long j = static_cast<long>(rng.canonical() * static_cast<double>(i));
    const double weight = rng.uniform(0.1, 2.0);
    w(i, j) = w(j, i) = weight;
  }
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j)
      if (w(i, j) == 0.0 && rng.canonical() < extra_edge_prob) w(i, j) = w(j, i) = rng.uniform(0.1, 2.0);
  return w;
}

inline Eigen::MatrixXd random_matrix(Rng& rng, long r, long c) {
  Eigen::MatrixXd m(r, c);
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < c; ++j) m(i, j) = rng.normal();
  return m;
}

/// Naive Laplacian from its definition, one entry at a time.
inline Eigen::MatrixXd laplacian_by_definition(const Eigen::MatrixXd& w) {
  const long n = w.rows();
  Eigen::MatrixXd l(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      if (i != j) {
        l(i, j) = -w(i, j);
      } else {
        double s = 0.0;
        for (long k = 0; k < n; ++k) s += w(i, k);
        l(i, i) = s;
      }
    }
  return l;
}

}  // namespace netsync::oracle
