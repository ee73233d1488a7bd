#include <cmath>

#include <gtest/gtest.h>

#include "netsync/certify.hpp"
#include "support/oracles.hpp"

using namespace netsync;
using Eigen::Matrix3d;
using Eigen::Vector3d;

namespace {

LaplacianSpectrum spectrum_of(std::initializer_list<double> values) {
  LaplacianSpectrum s;
  s.eigenvalues = Vector(static_cast<Index>(values.size()));
  Index k = 0;
  for (double v : values) s.eigenvalues[k++] = v;
  s.fiedler_value = s.eigenvalues.size() > 1 ? s.eigenvalues[1] : 0.0;
  return s;
}

const ValidationDomain kPaperDomain{Vector3d(20, 25, 50)};
const Vector3d kPaperEnvelope(0.5, 1.4, 0.05 * 8.0 / 3.0);

double fit_objective(const ValidationDomain& dom, double a, double b) {
  return oracle::lambda_max_sym3(symmetric_part(lorenz_F(dom, {a, b})));
}

}  // namespace

TEST(SymmetricPart, Examples) {
  EXPECT_EQ(symmetric_part(Matrix::Identity(3, 3)), Matrix::Identity(3, 3));
  Matrix a(2, 2);
  a << 0, 2, 0, 0;
  Matrix expected(2, 2);
  expected << 0, 1, 1, 0;
  EXPECT_EQ(symmetric_part(a), expected);
  Matrix fs(3, 3);
  fs << 20.42, 19, 0, 19, 22.5, 0, 0, 0, 38.22;
  EXPECT_LT((symmetric_part(paper_figures_F()) - fs).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(symmetric_part(symmetric_part(a)), symmetric_part(a));
  EXPECT_THROW(symmetric_part(Matrix::Zero(2, 3)), NonSquare);
}

TEST(LambdaStar, TrivialCases) {
  EXPECT_DOUBLE_EQ(lambda_star(Matrix::Zero(3, 3), Coupling::identity(3), spectrum_of({0, 2, 3})), 2.0);
  EXPECT_DOUBLE_EQ(lambda_star(Matrix::Identity(3, 3), Coupling::identity(3), spectrum_of({0, 5})), 4.0);
  EXPECT_THROW(lambda_star(Matrix::Zero(3, 3), Coupling::identity(3), spectrum_of({0, 0})), Disconnected);
}

TEST(LambdaStar, PrintedLorenzMatrices) {
  // lambda_max of the printed F^(s): 2x2 block 21.46 + sqrt(1.04^2 + 19^2) beats 38.22.
  const double block = 21.46 + std::sqrt(1.04 * 1.04 + 19.0 * 19.0);
  EXPECT_NEAR(oracle::lambda_max_sym3(symmetric_part(paper_figures_F())), block, 1e-12);
  const double ls = lambda_star(paper_figures_F(), Coupling::identity(3), spectrum(global_coupling_matrix(100)));
  EXPECT_NEAR(ls, 100.0 - block, 1e-9);
  EXPECT_NEAR(ls, 59.5, 0.05);
}

TEST(LambdaStar, ScaleEquivariance) {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix f = oracle::random_matrix(rng, 3, 3);
    const Matrix h = oracle::random_matrix(rng, 3, 3);
    const auto spec = spectrum(laplacian(Topology(oracle::random_connected_weights(rng, 6))));
    const double c = rng.uniform(0.2, 5.0);
    LaplacianSpectrum scaled = spec;
    scaled.eigenvalues /= c;
    scaled.fiedler_value /= c;
    EXPECT_NEAR(lambda_star(f, Coupling{c * h}, scaled), lambda_star(f, Coupling{h}, spec), 1e-9);
  }
}

TEST(Theorem1Bound, Examples) {
  EXPECT_EQ(theorem1_bound(10, Vector3d::Zero(), Matrix::Identity(3, 3), 3.0), 0.0);
  EXPECT_DOUBLE_EQ(theorem1_bound(2, Vector3d(1, 0, 0), Matrix::Identity(3, 3), 2.0), 1.0);
  const double quad = 212.9 * 0.25 + 400.0 * 1.96 + 2500.0 * std::pow(0.4 / 3.0, 2);
  const double ls = 100.0 - (21.46 + std::sqrt(1.04 * 1.04 + 361.0));
  const double b = theorem1_bound(100, kPaperEnvelope, paper_figures_Gamma(), ls);
  EXPECT_NEAR(b, std::sqrt(200.0 * quad) / ls, 1e-12);
  EXPECT_NEAR(b, 7.06, 0.01);
  EXPECT_THROW(theorem1_bound(2, Vector3d(1, 0, 0), Matrix::Identity(3, 3), 0.0), InfeasibleCertificate);
  EXPECT_THROW(theorem1_bound(2, Vector3d(1, 0, 0), Matrix::Identity(3, 3), -1.0), InfeasibleCertificate);
}

TEST(Theorem1Bound, Monotonicity) {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = oracle::random_matrix(rng, 3, 3);
    const Matrix gamma = a * a.transpose();
    Vector3d env(rng.uniform(0, 2), rng.uniform(0, 2), rng.uniform(0, 2));
    const double l1 = rng.uniform(0.1, 10);
    const double l2 = l1 + rng.uniform(0.0, 10);
    EXPECT_GE(theorem1_bound(5, env, gamma, l1), theorem1_bound(5, env, gamma, l2));
    for (Index k = 0; k < 3; ++k) {
      Vector3d bigger = env;
      bigger[k] += rng.uniform(0.0, 1.0);
      // dg^T Gamma dg is monotone per component only for entrywise non-negative Gamma.
      const Matrix g_abs = gamma.cwiseAbs();
      EXPECT_GE(theorem1_bound(5, bigger, g_abs, l1), theorem1_bound(5, env, g_abs, l1) - 1e-12);
    }
  }
}

TEST(Theorem1Bound, SlackVariantIsLarger) {
  const double plain = theorem1_bound(10, kPaperEnvelope, paper_figures_Gamma(), 5.0);
  EXPECT_GT(theorem1_bound_with_slack(10, kPaperEnvelope, paper_figures_Gamma(), 5.0, 0.5), plain);
  EXPECT_THROW(theorem1_bound_with_slack(10, kPaperEnvelope, paper_figures_Gamma(), 5.0, 5.0), InfeasibleCertificate);
}

TEST(Theorem2, TrivialCases) {
  const auto a = theorem2_feasibility(-Matrix::Identity(3, 3), Coupling::identity(3), Matrix::Zero(4, 4), Vector::Zero(4));
  EXPECT_NEAR(a.margin, -1.0, 1e-12);
  EXPECT_TRUE(a.feasible);
  const auto b = theorem2_feasibility(Matrix::Identity(3, 3), Coupling::identity(3), Matrix::Zero(4, 4),
                                      Vector::Constant(4, 2.0));
  EXPECT_NEAR(b.margin, -1.0, 1e-12);
  EXPECT_TRUE(b.feasible);
  EXPECT_THROW(theorem2_feasibility(Matrix::Identity(3, 3), Coupling::identity(3), Matrix::Zero(4, 4), Vector::Zero(3)),
               DimensionMismatch);
  EXPECT_THROW(theorem2_feasibility(Matrix::Identity(3, 3), Coupling::identity(3), Matrix::Zero(2, 2),
                                    Vector::Constant(2, -1.0)),
               Error);
}

TEST(Theorem2, PrintedMatricesWithUnitPinningAreInfeasible) {
  const Matrix l = global_coupling_matrix(100);
  const Vector c = Vector::Ones(100);
  const double expected = oracle::lambda_max_sym3(symmetric_part(paper_figures_F())) - 1.0;
  const auto r = theorem2_feasibility(paper_figures_F(), Coupling::identity(3), l, c);
  EXPECT_NEAR(r.margin, expected, 1e-9);
  EXPECT_NEAR(r.margin, 39.5, 0.05);
  EXPECT_FALSE(r.feasible);
  EXPECT_NEAR(theorem2_margin_dense(paper_figures_F(), Matrix::Identity(3, 3), l, c), expected, 1e-8);
}

TEST(Theorem2, FastPathMatchesDense) {
  Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.canonical() * 12);
    const Matrix l = laplacian(Topology(oracle::random_connected_weights(rng, n)));
    Vector c(n);
    for (Index i = 0; i < n; ++i) c[i] = rng.canonical() < 0.5 ? 0.0 : rng.uniform(0, 5);
    const Matrix f = 3.0 * oracle::random_matrix(rng, 3, 3);
    const double h = rng.uniform(-2, 4);
    Matrix hm = h * Matrix::Identity(3, 3);
    hm(0, 1) = 0.7;  // skew part is invisible to the quadratic form
    hm(1, 0) = -0.7;
    const auto fast = theorem2_margin_fast(f, hm, l, c);
    ASSERT_TRUE(fast.has_value());
    EXPECT_NEAR(*fast, theorem2_margin_dense(f, hm, l, c), 1e-8);
  }
  Matrix general = Matrix::Identity(3, 3);
  general(2, 2) = 2.0;
  EXPECT_FALSE(theorem2_margin_fast(Matrix::Zero(3, 3), general, Matrix::Zero(2, 2), Vector::Zero(2)).has_value());
}

TEST(Theorem2, UncontrolledDirectionBlocksFeasibility) {
  Rng rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.canonical() * 8);
    const Matrix l = laplacian(Topology(oracle::random_connected_weights(rng, n)));
    const Matrix f = 2.0 * oracle::random_matrix(rng, 3, 3);
    const Matrix h = oracle::random_matrix(rng, 3, 3);
    const double margin = theorem2_margin_dense(f, h, l, Vector::Zero(n));
    const double f_max = lambda_max_symmetric(f);
    EXPECT_GE(margin, f_max - 1e-9);
    if (f_max > 0.0) EXPECT_FALSE(theorem2_feasibility(f, Coupling{h}, l, Vector::Zero(n)).feasible);
  }
}

TEST(LorenzF, Examples) {
  Matrix m(3, 3);
  m << -10, 10, 0, 28, -1, 0, 0, 0, -8.0 / 3.0;
  EXPECT_LT((lorenz_F(ValidationDomain(Vector3d::Zero()), {1, 1}) - m).cwiseAbs().maxCoeff(), 1e-15);

  const Matrix f = lorenz_F(kPaperDomain, kPaperFit);
  const Vector3d added = (f - m).diagonal();
  EXPECT_NEAR(added[0], 50.0 / (2 * 0.957) + 25.0 / (2 * 3.091), 1e-12);
  EXPECT_NEAR(added[0], 26.12 + 4.04, 0.01);
  EXPECT_NEAR(added[1], 23.925, 1e-12);
  EXPECT_NEAR(added[2], 38.6375, 1e-12);
  // The printed F agrees only at the unit level.
  EXPECT_LT((symmetric_part(f) - symmetric_part(paper_figures_F())).cwiseAbs().maxCoeff(), 2.5);

  const Matrix f_big = lorenz_F(kPaperDomain, {10.0, 10.0});
  EXPECT_GT(f_big(1, 1), f(1, 1));
  EXPECT_GT(f_big(2, 2), f(2, 2));
  EXPECT_THROW(lorenz_F(kPaperDomain, {0.0, 1.0}), Error);
}

TEST(FitAlphaBeta, DegenerateDomainKeepsUnitParameters) {
  const auto fit = fit_alpha_beta(ValidationDomain(Vector3d::Zero()));
  EXPECT_EQ(fit.alpha, 1.0);
  EXPECT_EQ(fit.beta, 1.0);
}

TEST(FitAlphaBeta, BeatsPrintedFitAndBruteForceGrid) {
  const auto fit = fit_alpha_beta(kPaperDomain);
  const double best = fit_objective(kPaperDomain, fit.alpha, fit.beta);
  EXPECT_LE(best, fit_objective(kPaperDomain, kPaperFit.alpha, kPaperFit.beta));
  double grid_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 400; ++i)
    for (int j = 0; j <= 400; ++j)
      grid_min = std::min(grid_min, fit_objective(kPaperDomain, std::pow(10.0, -2.0 + i / 100.0),
                                                  std::pow(10.0, -2.0 + j / 100.0)));
  EXPECT_LE(best, grid_min + 1e-6);
  EXPECT_NEAR(best, 40.39611, 1e-3);
}

TEST(FitAlphaBeta, LargerBoxNeverHelps) {
  const ValidationDomain doubled(Vector3d(40, 50, 100));
  const auto a = fit_alpha_beta(kPaperDomain);
  const auto b = fit_alpha_beta(doubled);
  EXPECT_GE(fit_objective(doubled, b.alpha, b.beta), fit_objective(kPaperDomain, a.alpha, a.beta));
}

TEST(LorenzGamma, Examples) {
  EXPECT_LT((lorenz_Gamma(ValidationDomain(Vector3d(1, 1, 1))) - Vector3d(4, 1, 64.0 / 9.0).asDiagonal().toDenseMatrix())
                .cwiseAbs()
                .maxCoeff(),
            1e-12);
  EXPECT_EQ(lorenz_Gamma(ValidationDomain(Vector3d::Zero())), Matrix::Zero(3, 3));
  const Matrix g = lorenz_Gamma(kPaperDomain);
  EXPECT_DOUBLE_EQ(g(0, 0), 2025.0);
  EXPECT_DOUBLE_EQ(g(1, 1), 400.0);
  EXPECT_NEAR(g(2, 2), 17777.78, 0.01);
}

TEST(Assumption2, LinearFieldIsTheEqualityCase) {
  Rng rng(31);
  const Matrix a = oracle::random_matrix(rng, 3, 3);
  const LinearSystem sys(a, Matrix::Identity(3, 3));
  const auto r = validate_assumption2(sys, symmetric_part(a), kPaperDomain, 2000, 1);
  EXPECT_TRUE(r.holds);
  EXPECT_LE(std::abs(r.worst_violation), 1e-10);
}

TEST(Assumption2, DerivedLorenzBoundHoldsNegativeBoundFails) {
  const auto fit = fit_alpha_beta(kPaperDomain);
  EXPECT_TRUE(validate_assumption2(Lorenz(), lorenz_F(kPaperDomain, fit), kPaperDomain, 20000, 2).holds);
  const auto bad = validate_assumption2(Lorenz(), -Matrix::Identity(3, 3), kPaperDomain, 2000, 2);
  EXPECT_FALSE(bad.holds);
  EXPECT_GT(bad.worst_violation, 0.0);
}

TEST(Assumption3, Examples) {
  EXPECT_TRUE(validate_assumption3(Lorenz(), Matrix::Zero(3, 3), Vector3d::Zero(), kPaperDomain, 100, 1).holds);
  EXPECT_TRUE(validate_assumption3(Lorenz(), lorenz_Gamma(kPaperDomain), kPaperEnvelope, kPaperDomain, 20000, 1).holds);
  EXPECT_TRUE(validate_assumption3(Lorenz(), lorenz_Gamma(kPaperDomain), Vector3d(3, 1, 7), kPaperDomain, 20000, 1).holds);
  EXPECT_FALSE(validate_assumption3(Lorenz(), Matrix::Zero(3, 3), kPaperEnvelope, kPaperDomain, 100, 1).holds);
}

TEST(ProofSupport, YoungInequalityOnRandomInstances) {
  Rng rng(37);
  for (int trial = 0; trial < 10000; ++trial) {
    const Index n = 1 + static_cast<Index>(rng.canonical() * 5);
    const Index m = 1 + static_cast<Index>(rng.canonical() * 5);
    const Vector x = oracle::random_matrix(rng, n, 1);
    const Vector y = oracle::random_matrix(rng, m, 1);
    const Matrix p = oracle::random_matrix(rng, n, m);
    const Matrix a = oracle::random_matrix(rng, m, m);
    const Matrix k = a * a.transpose() + 0.1 * Matrix::Identity(m, m);
    const auto [lhs, rhs] = oracle::young_inequality_sides(x, y, p, k);
    ASSERT_LE(lhs, rhs + 1e-9 * std::max(1.0, std::abs(rhs)));
  }
}
