#include "gao/measure/wishart_law.hpp"

#include <cmath>
#include <vector>

#include "gao/error.hpp"
#include "gao/numerics/rk4.hpp"

namespace gao::measure {

WishartTransformedLaw wishart_transformed_law(const affine::WishartModel& model, double T, MeasureConvention c,
                                              std::optional<int> steps_opt) {
  if (!(T > 0.0)) throw Error(ErrorKind::invalid_argument, "wishart_transformed_law: T must be > 0");
  const Eigen::Index d = model.dim();
  const int steps = steps_opt.value_or(numerics::default_rk4_steps(T));
  const double h = T / steps;
  const double factor = (c == MeasureConvention::forward) ? 2.0 : 1.0;
  const Matrix qq = model.Q().transpose() * model.Q();
  const Matrix loading = model.discount_loading();

  // psi(s) of the discount Riccati on the half-step grid s = j h / 2
  std::vector<Matrix> drift_fix(2 * steps + 1);
  for (int j = 0; j <= 2 * steps; ++j)
    drift_fix[j] = model.H().transpose() - factor * affine::wishart_riccati(0.5 * h * j, loading, model).psi * qq;

  // integrate in time-to-maturity s = T - t: psi' = (H' - f psi~(s) Q'Q) psi, V' = psi' Q'Q psi
  auto deriv = [&](double s, const Matrix& y) {
    const auto j = static_cast<std::size_t>(std::lround(2.0 * s / h));
    const Matrix psi = y.leftCols(d);
    Matrix dy(d, 2 * d);
    dy.leftCols(d) = drift_fix[std::min(j, drift_fix.size() - 1)] * psi;
    dy.rightCols(d) = psi.transpose() * qq * psi;
    return dy;
  };
  Matrix y0(d, 2 * d);
  y0 << Matrix::Identity(d, d), Matrix::Zero(d, d);
  const Matrix y = numerics::rk4_integrate(deriv, 0.0, T, y0, steps);

  WishartTransformedLaw out;
  out.convention = c;
  out.psi0 = y.leftCols(d);
  out.V0 = numerics::symmetrize(y.rightCols(d));
  out.omega = numerics::symmetrize(out.psi0.transpose() * model.initial_state() * out.psi0);
  bool deficient = false;
  const Matrix v_inv = numerics::pseudo_inverse(out.V0, &deficient);
  out.pseudo_inverse_used = deficient;
  out.law.beta = model.beta();
  out.law.V0 = out.V0;
  if (c == MeasureConvention::forward) {
    out.law.Theta = v_inv * out.omega;
  } else {
    // printed ordering Tr[Theta (I + 2 V0 U)^{-1} V0 U] with Theta = V0^{-1} omega,
    // rewritten in the canonical form used by the law
    out.law.Theta = v_inv * v_inv * out.omega * out.V0;
  }
  out.law.validate();
  return out;
}

WishartTerminalLaw::WishartTerminalLaw(WishartTransformedLaw law) : law_(std::move(law)) {
  if (law_.pseudo_inverse_used) warnings_.push_back("V(0) is singular; non-centrality computed with a pseudo-inverse");
  unsupported_ = dist::NcwSampler::unsupported_reason(law_.law);
  if (unsupported_.empty()) sampler_.emplace(law_.law);
}

std::function<Complex(Complex)> WishartTerminalLaw::ray(const State& u) const {
  const Eigen::Index d = law_.law.dim();
  const Matrix root = numerics::sqrt_psd(law_.law.V0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(numerics::symmetrize(root * u * root), Eigen::EigenvaluesOnly);
  const Vector mu = es.eigenvalues();
  const ComplexMatrix uv = (u * law_.law.V0).cast<Complex>();
  const ComplexMatrix uc = u.cast<Complex>();
  const ComplexMatrix om = law_.law.noncentral_mean().cast<Complex>();
  const double half_beta = 0.5 * law_.law.beta;
  const bool zero = u.isZero(0.0);
  return [=](Complex w) -> Complex {
    if (zero || w == 0.0) return 1.0;
    Complex det_pow = 1.0;
    for (Eigen::Index k = 0; k < d; ++k) {
      const Complex f = 1.0 + 2.0 * w * mu(k);
      if (!(f.real() > 0.0)) throw Error(ErrorKind::divergence, "wishart transform: argument outside the convergence strip");
      det_pow *= std::pow(f, -half_beta);
    }
    const ComplexMatrix a = ComplexMatrix::Identity(d, d) + 2.0 * w * uv;
    const Complex expo = -w * (om * a.partialPivLu().solve(uc)).trace();
    return det_pow * std::exp(expo);
  };
}

State WishartTerminalLaw::sample(Rng& rng) const {
  if (!sampler_) throw Error(ErrorKind::unsupported_shape, "wishart terminal law: " + unsupported_);
  return sampler_->draw(rng);
}

}  // namespace gao::measure
