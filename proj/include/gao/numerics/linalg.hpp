#pragma once

#include <complex>

#include <Eigen/Dense>

namespace gao {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// State of the driving factor X: a p x 1 column for multi-factor CIR,
/// a symmetric d x d matrix for Wishart. Exponents share the same shape.
using State = Eigen::MatrixXd;

namespace numerics {

/// Eigenvalue floor used by PSD checks.
inline constexpr double kPsdTol = 1e-12;

/// <a, b> = sum_ij a_ij b_ij; equals Tr[a b] for symmetric matrices.
inline double pairing(const State& a, const State& b) { return (a.array() * b.array()).sum(); }

inline Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

bool all_finite(const Matrix& m);
bool is_symmetric(const Matrix& m, double tol = 1e-12);
bool is_psd(const Matrix& m, double tol = kPsdTol);

/// Symmetric square root of a PSD matrix; tiny negative eigenvalues are clamped to 0.
Matrix sqrt_psd(const Matrix& m);

/// Clamp negative eigenvalues of a symmetric matrix to zero.
Matrix project_psd(const Matrix& m);

/// Determinant of a complex square matrix by partial-pivoting LU.
Complex complex_det(const ComplexMatrix& m);

/// Moore-Penrose pseudo-inverse; `rank_deficient` is set when any singular
/// value falls below rel_tol times the largest one.
Matrix pseudo_inverse(const Matrix& m, bool* rank_deficient = nullptr, double rel_tol = 1e-12);

}  // namespace numerics
}  // namespace gao
