#include "gao/affine/wishart.hpp"

#include <cmath>
#include <string>

#include "gao/error.hpp"
#include "gao/numerics/matrix_exp.hpp"
#include "gao/numerics/rk4.hpp"

namespace gao::affine {

namespace {

constexpr double kMaxRiccatiPiece = 1.0;

void require_square(const Matrix& m, Eigen::Index d, const char* name) {
  if (m.rows() != d || m.cols() != d)
    throw Error(ErrorKind::invalid_argument, std::string("wishart: ") + name + " must be " + std::to_string(d) + "x" + std::to_string(d));
  if (!m.allFinite()) throw Error(ErrorKind::invalid_argument, std::string("wishart: ") + name + " has non-finite entries");
}

}  // namespace

WishartModel::WishartModel(double beta, Matrix H, Matrix Q, Matrix x0, Matrix R, Matrix M, double r_bar, double mu_bar)
    : beta_(beta), H_(std::move(H)), Q_(std::move(Q)), x0_(std::move(x0)), R_(std::move(R)), M_(std::move(M)),
      r_bar_(r_bar), mu_bar_(mu_bar) {
  const Eigen::Index d = H_.rows();
  if (d < 1) throw Error(ErrorKind::invalid_argument, "wishart: dimension must be >= 1");
  require_square(H_, d, "H");
  require_square(Q_, d, "Q");
  require_square(x0_, d, "x0");
  require_square(R_, d, "R");
  require_square(M_, d, "M");
  if (!std::isfinite(beta_) || beta_ < static_cast<double>(d - 1))
    throw Error(ErrorKind::invalid_argument, "wishart: beta must be >= d-1");
  if (!(std::abs(Q_.determinant()) > 1e-14)) throw Error(ErrorKind::invalid_argument, "wishart: Q must be invertible");
  if (!numerics::is_psd(x0_)) throw Error(ErrorKind::invalid_argument, "wishart: x0 must be symmetric PSD");
  if (!numerics::is_symmetric(R_) || !numerics::is_symmetric(M_))
    throw Error(ErrorKind::invalid_argument, "wishart: R and M must be symmetric");
  if (!numerics::is_psd(R_ + M_)) throw Error(ErrorKind::invalid_argument, "wishart: R+M must be PSD");
  if (!std::isfinite(r_bar_) || !std::isfinite(mu_bar_)) throw Error(ErrorKind::invalid_argument, "wishart: non-finite shift");
}

RiccatiSolution wishart_riccati(double tau, const Matrix& U, const WishartModel& model) {
  if (tau < 0.0) throw Error(ErrorKind::invalid_argument, "wishart_riccati: tau must be >= 0");
  const Eigen::Index d = model.dim();
  RiccatiSolution out;
  out.tau = tau;
  out.psi = Matrix::Zero(d, d);
  if (tau == 0.0) return out;
  const Matrix& H = model.H();
  Matrix block(2 * d, 2 * d);
  block << H, 2.0 * model.Q().transpose() * model.Q(), U, -H.transpose();
  // The row block [P, S] with [P, S]' = [P, S] B gives psi = S^{-1} P. Starting each
  // sub-interval from [psi, I] keeps the exponential well conditioned; one shot over
  // tau = 49 loses about 1e-5 in psi.
  const int pieces = std::max(1, static_cast<int>(std::ceil(tau / kMaxRiccatiPiece)));
  const double step = tau / pieces;
  const Matrix e = numerics::matrix_exp(step * block);
  const Matrix a11 = e.topLeftCorner(d, d), a12 = e.topRightCorner(d, d);
  const Matrix a21 = e.bottomLeftCorner(d, d), a22 = e.bottomRightCorner(d, d);
  double log_det = 0.0;
  for (int k = 0; k < pieces; ++k) {
    const Matrix s = out.psi * a12 + a22;
    const double det = s.determinant();
    if (!(det > 1e-14)) {
      throw Error(ErrorKind::linearization_breakdown,
                  "det A22 = " + std::to_string(det) + " at tau = " + std::to_string(step * (k + 1)));
    }
    out.psi = numerics::symmetrize(s.partialPivLu().solve(out.psi * a11 + a21));
    log_det += std::log(det);
  }
  out.phi = 0.5 * model.beta() * (log_det + tau * H.trace());
  return out;
}

RiccatiSolution WishartModel::riccati(double tau, const State& u) const { return wishart_riccati(tau, u, *this); }

RiccatiSolution WishartModel::riccati_ode(double tau, const State& u, int steps) const {
  const Eigen::Index d = dim();
  const Matrix qq = Q_.transpose() * Q_;
  // y = [psi | phi * I] packed as d x 2d; phi stored on the (0, d) entry.
  auto deriv = [&](double, const Matrix& y) {
    const Matrix psi = y.leftCols(d);
    Matrix dy = Matrix::Zero(d, 2 * d);
    dy.leftCols(d) = psi * H_ + H_.transpose() * psi - 2.0 * psi * qq * psi + u;
    dy(0, d) = beta_ * (qq * psi).trace();
    return dy;
  };
  const Matrix y = numerics::rk4_integrate(deriv, 0.0, tau, Matrix::Zero(d, 2 * d).eval(), steps);
  RiccatiSolution out;
  out.tau = tau;
  out.psi = numerics::symmetrize(y.leftCols(d));
  out.phi = y(0, d);
  return out;
}

double WishartModel::initial_correlation() const {
  // d<Tr[AX], Tr[BX]>_t = 4 Tr[A Q'Q B X_t] dt
  const Matrix qq = Q_.transpose() * Q_;
  const double cov = (R_ * qq * M_ * x0_).trace();
  const double var_r = (R_ * qq * R_ * x0_).trace();
  const double var_mu = (M_ * qq * M_ * x0_).trace();
  if (!(var_r > 0.0) || !(var_mu > 0.0))
    throw Error(ErrorKind::undefined_correlation, "wishart: r or mu has zero instantaneous variance");
  return cov / std::sqrt(var_r * var_mu);
}

}  // namespace gao::affine
