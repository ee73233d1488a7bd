#pragma once

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "netsync/error.hpp"

namespace netsync {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// A^(s) = (A + A^T) / 2, the only part of A a quadratic form sees.
inline Matrix symmetric_part(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw NonSquare("symmetric_part: matrix is " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()));
  }
  return 0.5 * (a + a.transpose());
}

inline bool is_symmetric(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = i + 1; j < a.cols(); ++j)
      if (std::abs(a(i, j) - a(j, i)) > tol) return false;
  return true;
}

/// Ascending eigenvalues of the symmetric part of `a`.
inline Vector symmetric_eigenvalues(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric_part(a), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

inline double lambda_max_symmetric(const Matrix& a) {
  return symmetric_eigenvalues(a).maxCoeff();
}

inline Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline bool all_finite(const Eigen::Ref<const Vector>& v) { return v.allFinite(); }

}  // namespace netsync
