#pragma once

// Stability certificates for mismatched diffusive networks.
//
// Ultimate bound on the error from the average trajectory:
//   lambda* = min_{mu != 0} -lambda_max(F^(s) - mu H^(s))
//   ||e|| <= sqrt(2 N dg^T Gamma dg) / lambda*            (requires lambda* > 0)
//
// Adaptive pinning feasibility:
//   I_N (x) F - (L + C) (x) H^(s)  negative definite
//
// Definiteness is always judged on symmetric parts; strict "< 0" means
// lambda_max <= -kDefinitenessTol.

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <optional>
#include <string>

#include "netsync/dynamics.hpp"
#include "netsync/graph.hpp"
#include "netsync/random.hpp"

namespace netsync {

inline constexpr double kDefinitenessTol = 1e-9;

/// Box Omega = {x : |x_j| <= k_j}.
struct ValidationDomain {
  Vector bounds;

  ValidationDomain() = default;
  explicit ValidationDomain(Vector k) : bounds(std::move(k)) {}

  Index dim() const noexcept { return bounds.size(); }

  void validate() const {
    for (Index j = 0; j < bounds.size(); ++j)
      if (!(bounds[j] > 0.0))
        throw Error("validation domain: bound k_" + std::to_string(j + 1) + " must be positive");
  }

  bool contains(const Vector& x) const {
    return x.size() == bounds.size() && (x.array().abs() <= bounds.array()).all();
  }

  Vector sample(Rng& rng) const {
    Vector x(bounds.size());
    for (Index j = 0; j < bounds.size(); ++j) x[j] = rng.uniform(-bounds[j], bounds[j]);
    return x;
  }
};

/// Young-inequality split parameters used to bound the Lorenz cross terms.
struct BoundFitParams {
  double alpha = 1.0;
  double beta = 1.0;
};

struct Certificate {
  double lambda_star = 0.0;
  double error_bound = 0.0;  // +inf when Theorem-1 style condition fails
  bool thm1_feasible = false;
  std::optional<double> thm2_margin;
  bool thm2_feasible = false;
  std::optional<double> error_bound_slack;  // bound with (lambda* - epsilon)
};

struct ValidationResult {
  bool holds = false;
  double worst_violation = 0.0;
};

inline double lambda_star(const Matrix& F, const Coupling& coupling, const LaplacianSpectrum& spec) {
  const auto nonzero = spec.nonzero();
  if (nonzero.empty()) throw Disconnected("lambda_star: Laplacian has no nonzero eigenvalue");
  if (F.rows() != coupling.H.rows() || F.cols() != coupling.H.cols())
    throw DimensionMismatch("lambda_star: F and H must have the same shape");
  const Matrix fs = symmetric_part(F);
  const Matrix hs = symmetric_part(coupling.H);
  double best = std::numeric_limits<double>::infinity();
  for (double mu : nonzero) best = std::min(best, -lambda_max_symmetric(fs - mu * hs));
  return best;
}

/// sqrt(2 N dg^T Gamma dg) / lambda*.
inline double theorem1_bound(Index nodes, const Vector& envelope, const Matrix& gamma,
                             double lambda_star_value) {
  if (!(lambda_star_value > 0.0))
    throw InfeasibleCertificate("theorem1_bound: lambda* = " + std::to_string(lambda_star_value) +
                                " is not positive; no error bound is certified");
  if (gamma.rows() != envelope.size() || gamma.cols() != envelope.size())
    throw DimensionMismatch("theorem1_bound: Gamma must be m x m");
  const double quad = envelope.dot(gamma * envelope);
  return std::sqrt(2.0 * static_cast<double>(nodes) * std::max(quad, 0.0)) / lambda_star_value;
}

/// Bound with the proof's slack: lambda* replaced by lambda* - epsilon.
inline double theorem1_bound_with_slack(Index nodes, const Vector& envelope, const Matrix& gamma,
                                        double lambda_star_value, double epsilon) {
  if (!(epsilon > 0.0)) throw Error("theorem1_bound_with_slack: epsilon must be positive");
  return theorem1_bound(nodes, envelope, gamma, lambda_star_value - epsilon);
}

struct Theorem2Result {
  double margin = 0.0;
  bool feasible = false;
};

namespace detail {

inline void check_theorem2_inputs(const Matrix& F, const Matrix& H, const Matrix& L,
                                  const Vector& gains) {
  if (F.rows() != F.cols() || H.rows() != H.cols() || F.rows() != H.rows())
    throw DimensionMismatch("theorem2: F and H must be square of equal size");
  if (L.rows() != L.cols() || L.rows() != gains.size())
    throw DimensionMismatch("theorem2: L must be N x N and C must have N gains");
  if (!is_symmetric(L, 1e-9)) throw NonSymmetric("theorem2: L must be symmetric");
  for (Index i = 0; i < gains.size(); ++i)
    if (!(gains[i] >= 0.0)) throw Error("theorem2: pinning gain c_" + std::to_string(i) + " is negative");
}

}  // namespace detail

/// lambda_max of sym(I_N (x) F - (L + C) (x) H^(s)) by a dense eigensolve.
inline double theorem2_margin_dense(const Matrix& F, const Matrix& H, const Matrix& L,
                                    const Vector& gains) {
  detail::check_theorem2_inputs(F, H, L, gains);
  const Index nodes = L.rows();
  Matrix lc = L;
  lc.diagonal() += gains;
  const Matrix big = kronecker(Matrix::Identity(nodes, nodes), F) - kronecker(lc, symmetric_part(H));
  return lambda_max_symmetric(big);
}

/// Same margin through eigenpairs when H^(s) = h I; nullopt when H is not of that form.
inline std::optional<double> theorem2_margin_fast(const Matrix& F, const Matrix& H, const Matrix& L,
                                                  const Vector& gains) {
  detail::check_theorem2_inputs(F, H, L, gains);
  const Matrix hs = symmetric_part(H);
  const double h = hs(0, 0);
  if ((hs - h * Matrix::Identity(hs.rows(), hs.cols())).cwiseAbs().maxCoeff() >
      1e-14 * std::max(1.0, std::abs(h)))
    return std::nullopt;
  Matrix lc = L;
  lc.diagonal() += gains;
  const Vector theta = symmetric_eigenvalues(lc);
  const double f_max = lambda_max_symmetric(F);
  return h >= 0.0 ? f_max - h * theta.minCoeff() : f_max - h * theta.maxCoeff();
}

inline Theorem2Result theorem2_feasibility(const Matrix& F, const Coupling& coupling,
                                           const Matrix& L, const Vector& gains) {
  const auto fast = theorem2_margin_fast(F, coupling.H, L, gains);
  const double margin = fast ? *fast : theorem2_margin_dense(F, coupling.H, L, gains);
  return {margin, margin < -kDefinitenessTol};
}

/// F = M + diag(k3/(2 alpha) + k2/(2 beta), alpha k3 / 2, beta k2 / 2) with
/// M = [[-a, a, 0], [b, -1, 0], [0, 0, -c]].
inline Matrix lorenz_F(const ValidationDomain& dom, const BoundFitParams& fit,
                       const LorenzParams& p = {}) {
  if (dom.dim() != 3) throw DimensionMismatch("lorenz_F: domain must be 3-dimensional");
  if (!(fit.alpha > 0.0) || !(fit.beta > 0.0)) throw Error("lorenz_F: alpha and beta must be positive");
  const double k2 = dom.bounds[1];
  const double k3 = dom.bounds[2];
  Matrix f(3, 3);
  f << -p.a, p.a, 0.0,  //
      p.b, -1.0, 0.0,   //
      0.0, 0.0, -p.c;
  f(0, 0) += k3 / (2.0 * fit.alpha) + k2 / (2.0 * fit.beta);
  f(1, 1) += fit.alpha * k3 / 2.0;
  f(2, 2) += fit.beta * k2 / 2.0;
  return f;
}

/// diag((k1 + k2)^2, k1^2, (8/3)^2 k3^2): componentwise suprema of G^T G over the box.
inline Matrix lorenz_Gamma(const ValidationDomain& dom) {
  if (dom.dim() != 3) throw DimensionMismatch("lorenz_Gamma: domain must be 3-dimensional");
  const Vector& k = dom.bounds;
  Matrix g = Matrix::Zero(3, 3);
  g(0, 0) = (k[0] + k[1]) * (k[0] + k[1]);
  g(1, 1) = k[0] * k[0];
  g(2, 2) = (64.0 / 9.0) * k[2] * k[2];
  return g;
}

/// F and Gamma as printed for the 100-node Lorenz figures. They do not follow
/// from lorenz_F / lorenz_Gamma at k = (20, 25, 50); kept for replication only.
inline Matrix paper_figures_F() {
  Matrix f(3, 3);
  f << 20.42, 10.00, 0.0,  //
      28.00, 22.50, 0.0,   //
      0.0, 0.0, 38.22;
  return f;
}

inline Matrix paper_figures_Gamma() {
  return Eigen::Vector3d(212.9, 400.0, 2500.0).asDiagonal();
}

inline constexpr BoundFitParams kPaperFit{0.957, 3.091};

/// Minimizes lambda_max(sym(lorenz_F)) over (alpha, beta) in [1e-2, 1e2]^2:
/// log grid, then coordinate descent on a shrinking multiplicative step
/// until the relative step is below 1e-4. Ties keep (1, 1).
inline BoundFitParams fit_alpha_beta(const ValidationDomain& dom, const LorenzParams& p = {}) {
  constexpr double lo = 1e-2;
  constexpr double hi = 1e2;
  constexpr int grid = 81;
  const auto objective = [&](double a, double b) {
    return lambda_max_symmetric(lorenz_F(dom, {a, b}, p));
  };
  BoundFitParams best{1.0, 1.0};
  double best_value = objective(1.0, 1.0);
  const auto improves = [&](double v) { return v < best_value - 1e-12 * std::max(1.0, std::abs(best_value)); };

  for (int i = 0; i < grid; ++i) {
    const double a = lo * std::pow(hi / lo, static_cast<double>(i) / (grid - 1));
    for (int j = 0; j < grid; ++j) {
      const double b = lo * std::pow(hi / lo, static_cast<double>(j) / (grid - 1));
      const double v = objective(a, b);
      if (improves(v)) {
        best = {a, b};
        best_value = v;
      }
    }
  }

  double log_step = std::log(hi / lo) / (grid - 1);
  while (log_step > 1e-4) {
    bool moved = false;
    const double r = std::exp(log_step);
    for (const auto& [da, db] : std::array<std::pair<double, double>, 4>{
             {{r, 1.0}, {1.0 / r, 1.0}, {1.0, r}, {1.0, 1.0 / r}}}) {
      const double a = std::clamp(best.alpha * da, lo, hi);
      const double b = std::clamp(best.beta * db, lo, hi);
      const double v = objective(a, b);
      if (improves(v)) {
        best = {a, b};
        best_value = v;
        moved = true;
      }
    }
    if (!moved) log_step *= 0.5;
  }
  return best;
}

/// Monte Carlo check of (x - s)^T [f(x) - f(s)] <= (x - s)^T F (x - s) over Omega x Omega.
template <SystemModel Sys>
ValidationResult validate_assumption2(const Sys& sys, const Matrix& F, const ValidationDomain& dom,
                                      long samples, std::uint64_t seed) {
  if (samples < 1) throw Error("validate_assumption2: samples must be positive");
  if (dom.dim() != sys.state_dim() || F.rows() != dom.dim() || F.cols() != dom.dim())
    throw DimensionMismatch("validate_assumption2: F and domain must match the state dimension");
  Rng rng(seed, 11);
  double worst = -std::numeric_limits<double>::infinity();
  double scale = 1.0;
  for (long k = 0; k < samples; ++k) {
    const typename Sys::State x = dom.sample(rng);
    const typename Sys::State s = dom.sample(rng);
    const Vector d = x - s;
    const double lhs = d.dot(Vector(sys.f(x) - sys.f(s)));
    const double rhs = d.dot(F * d);
    worst = std::max(worst, lhs - rhs);
    scale = std::max({scale, std::abs(lhs), std::abs(rhs)});
  }
  return {worst <= 1e-9 * scale, worst};
}

/// Monte Carlo check of dg^T G(x)^T G(x) dg <= Dg^T Gamma Dg over Omega x [-Dg, Dg].
template <SystemModel Sys>
ValidationResult validate_assumption3(const Sys& sys, const Matrix& gamma, const Vector& envelope,
                                      const ValidationDomain& dom, long samples, std::uint64_t seed) {
  if (samples < 1) throw Error("validate_assumption3: samples must be positive");
  if (envelope.size() != sys.mismatch_dim() || gamma.rows() != envelope.size() ||
      gamma.cols() != envelope.size() || dom.dim() != sys.state_dim())
    throw DimensionMismatch("validate_assumption3: dimensions do not match the system");
  Rng rng(seed, 12);
  const double rhs = envelope.dot(gamma * envelope);
  double worst = -std::numeric_limits<double>::infinity();
  double scale = std::max(1.0, std::abs(rhs));
  for (long k = 0; k < samples; ++k) {
    const typename Sys::State x = dom.sample(rng);
    Vector dg(envelope.size());
    for (Index j = 0; j < envelope.size(); ++j) dg[j] = rng.uniform(-envelope[j], envelope[j]);
    const double lhs = Vector(sys.G(x) * dg).squaredNorm();
    worst = std::max(worst, lhs - rhs);
    scale = std::max(scale, lhs);
  }
  return {worst <= 1e-9 * scale, worst};
}

}  // namespace netsync
