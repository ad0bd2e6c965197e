#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "gao/affine/cir.hpp"
#include "gao/error.hpp"
#include "gao/numerics/linalg.hpp"
#include "gao/numerics/matrix_exp.hpp"
#include "gao/numerics/quadrature.hpp"
#include "gao/numerics/rk4.hpp"
#include "gao/numerics/stats.hpp"

using namespace gao;
using numerics::matrix_exp;

namespace {

Matrix power_series_exp(const Matrix& m, int terms) {
  Matrix sum = Matrix::Identity(m.rows(), m.cols());
  Matrix term = sum;
  for (int k = 1; k < terms; ++k) {
    term = term * m / k;
    sum += term;
  }
  return sum;
}

}  // namespace

TEST(MatrixExp, ZeroGivesIdentity) {
  EXPECT_EQ(matrix_exp(Matrix::Zero(2, 2)), Matrix::Identity(2, 2));
}

TEST(MatrixExp, Diagonal) {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  const Matrix e = matrix_exp(d);
  EXPECT_NEAR(e(0, 0), std::exp(1.0), 1e-14);
  EXPECT_NEAR(e(1, 1), std::exp(2.0), 1e-13);
  EXPECT_EQ(e(0, 1), 0.0);
}

TEST(MatrixExp, HalfTurnRotation) {
  Matrix a(2, 2);
  a << 0.0, 1.0, -1.0, 0.0;
  a *= std::numbers::pi;
  const Matrix e = matrix_exp(a);
  EXPECT_LE((e + Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((e - power_series_exp(a, 50)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(MatrixExp, CommutingPairs) {
  Matrix a(3, 3);
  a << 0.3, -0.2, 0.1, 0.05, -0.4, 0.2, 0.0, 0.1, 0.25;
  const Matrix b = 2.0 * a + 0.7 * a * a - 0.3 * Matrix::Identity(3, 3);  // polynomial in a
  const Matrix lhs = matrix_exp(a + b);
  const Matrix rhs = matrix_exp(a) * matrix_exp(b);
  EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((matrix_exp(a) * matrix_exp(-a) - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(MatrixExp, LargeNormAgainstSeries) {
  Matrix a(4, 4);
  a << -0.5, 0.4, 0.0, 0.0072, 0.007, -0.008, 0.0072, 0.0036, 0.0, 0.0, 0.5, -0.007, 1.0, 0.0, -0.4, 0.008;
  a *= 8.0;
  const Matrix e = matrix_exp(a);
  const Matrix s = power_series_exp(a, 200);
  EXPECT_LE((e - s).cwiseAbs().maxCoeff() / s.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(MatrixExp, RejectsNonFinite) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = std::nan("");
  EXPECT_THROW(matrix_exp(a), Error);
}

TEST(Rk4, ScalarExponential) {
  const double y = numerics::rk4_integrate([](double, double v) { return v; }, 0.0, 1.0, 1.0, 1000);
  EXPECT_NEAR(y, std::exp(1.0), 1e-9);
}

TEST(Rk4, ConstantSolution) {
  Matrix y0(2, 2);
  y0 << 1.0, 2.0, 3.0, 4.0;
  const Matrix y = numerics::rk4_integrate([](double, const Matrix& v) { return Matrix::Zero(v.rows(), v.cols()).eval(); },
                                           0.0, 3.0, y0, 17);
  EXPECT_EQ(y, y0);
}

TEST(Rk4, CirRiccatiMatchesClosedForm) {
  const affine::CirFactor f{0.3731, 0.074484, 0.0452, 0.05};
  auto deriv = [&](double, double psi) { return 1.0 - f.k * psi - 0.5 * f.sigma * f.sigma * psi * psi; };
  const double psi = numerics::rk4_integrate(deriv, 0.0, 1.0, 0.0, 1000);
  EXPECT_NEAR(psi, affine::cir_riccati(1.0, 1.0, f).psi, 1e-9);
}

TEST(Rk4, FourthOrderConvergence) {
  auto deriv = [](double t, double y) { return -2.0 * t * y + std::cos(t); };
  const double ref = numerics::rk4_integrate(deriv, 0.0, 2.0, 0.5, 20000);
  const double e1 = std::abs(numerics::rk4_integrate(deriv, 0.0, 2.0, 0.5, 20) - ref);
  const double e2 = std::abs(numerics::rk4_integrate(deriv, 0.0, 2.0, 0.5, 40) - ref);
  const double ratio = e1 / e2;
  EXPECT_GE(ratio, 8.0);
  EXPECT_LE(ratio, 32.0);
}

TEST(Rk4, BlowUpNamesStep) {
  try {
    numerics::rk4_integrate([](double, double y) { return y * y; }, 0.0, 2.0, 1.0, 100);
    FAIL() << "expected numerical_blowup";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::numerical_blowup);
    EXPECT_NE(std::string(e.what()).find("step"), std::string::npos);
  }
}

TEST(Quadrature, GaussLegendreIsExactForPolynomials) {
  const auto gl = numerics::gauss_legendre(8);
  double w = 0.0, x14 = 0.0, x15 = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    w += gl.weights[i];
    x14 += gl.weights[i] * std::pow(gl.nodes[i], 14);
    x15 += gl.weights[i] * std::pow(gl.nodes[i], 15);
  }
  EXPECT_NEAR(w, 2.0, 1e-14);
  EXPECT_NEAR(x14, 2.0 / 15.0, 1e-14);
  EXPECT_NEAR(x15, 0.0, 1e-14);
}

TEST(Quadrature, Exponential) {
  const auto r = numerics::integrate_semi_infinite([](double x) { return std::complex<double>(std::exp(-x)); }, {});
  EXPECT_NEAR(r.value.real(), 1.0, 1e-10);
  EXPECT_FALSE(r.tail_warning);
}

TEST(Quadrature, Arctan) {
  numerics::QuadratureRule rule;
  rule.eta_max = 1e9;
  rule.tail_tol = 1e-9;
  const auto r = numerics::integrate_semi_infinite([](double x) { return std::complex<double>(1.0 / (1.0 + x * x)); },
                                                   rule);
  // the tail beyond the stopping point is about 1 / eta_reached
  EXPECT_NEAR(r.value.real() + 1.0 / r.eta_reached, std::numbers::pi / 2, 1e-8);
}

TEST(Quadrature, Linearity) {
  auto f = [](double x) { return std::complex<double>(std::exp(-x) * std::cos(x), std::exp(-2 * x)); };
  auto g = [](double x) { return std::complex<double>(1.0 / (1.0 + x * x * x * x), 0.0); };
  numerics::QuadratureRule rule;
  rule.tail_tol = 1e-14;
  const auto a = numerics::integrate_semi_infinite(f, rule).value;
  const auto b = numerics::integrate_semi_infinite(g, rule).value;
  const auto c = numerics::integrate_semi_infinite([&](double x) { return 2.0 * f(x) - 3.0 * g(x); }, rule).value;
  EXPECT_NEAR(std::abs(c - (2.0 * a - 3.0 * b)), 0.0, 1e-9);
}

TEST(Quadrature, TailWarningWhenNotDecayed) {
  numerics::QuadratureRule rule;
  rule.eta_max = 50.0;
  const auto r = numerics::integrate_semi_infinite([](double x) { return std::complex<double>(1.0 / (1.0 + x)); }, rule);
  EXPECT_TRUE(r.tail_warning);
}

TEST(Linalg, PsdChecksAndProjection) {
  Matrix a(2, 2);
  a << 1.0, 2.0, 2.0, 1.0;  // eigenvalues 3, -1
  EXPECT_FALSE(numerics::is_psd(a));
  const Matrix p = numerics::project_psd(a);
  EXPECT_TRUE(numerics::is_psd(p));
  EXPECT_NEAR(p(0, 0), 1.5, 1e-14);
  const Matrix s = numerics::sqrt_psd(p);
  EXPECT_LE((s * s - p).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Linalg, PseudoInverseFlagsRankDeficiency) {
  Matrix a(2, 2);
  a << 1.0, 1.0, 1.0, 1.0;
  bool deficient = false;
  const Matrix p = numerics::pseudo_inverse(a, &deficient);
  EXPECT_TRUE(deficient);
  EXPECT_LE((a * p * a - a).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(RunningStats, MergeMatchesSinglePass) {
  numerics::RunningStats all, left, right;
  for (int i = 0; i < 1000; ++i) {
    const double x = std::sin(i * 0.37) + 0.001 * i;
    all.push(x);
    (i < 400 ? left : right).push(x);
  }
  left.merge(right);
  EXPECT_EQ(left.n, all.n);
  EXPECT_NEAR(left.mean, all.mean, 1e-14);
  EXPECT_NEAR(left.variance(), all.variance(), 1e-13);
}
