#include "gao/measure/cir_law.hpp"

#include <cmath>

#include "gao/error.hpp"

namespace gao::measure {

CirTransformedLaw cir_transformed_law(const affine::CirModel& model, double T, MeasureConvention c) {
  if (!(T > 0.0)) throw Error(ErrorKind::invalid_argument, "cir_transformed_law: T must be > 0");
  CirTransformedLaw out;
  out.convention = c;
  const State u = model.discount_loading();
  for (int j = 0; j < model.size(); ++j) {
    const affine::CirFactor& f = model.factors()[j];
    CirFactorLaw fl;
    fl.k_prime = f.k;
    fl.theta_prime = f.theta;
    if (f.sigma == 0.0) {
      fl.degenerate = true;
      fl.point = f.mean_at(T);
      out.factors.push_back(fl);
      continue;
    }
    const double s2 = f.sigma * f.sigma;
    fl.chi2.nu = 4.0 * f.k * f.theta / s2;
    if (c == MeasureConvention::literal) {
      fl.chi2.c = 4.0 * f.k / (s2 * -std::expm1(-f.k * T));
      fl.chi2.lambda = fl.chi2.c * f.x0 * std::exp(-f.k * T);
    } else {
      const double h = std::sqrt(f.k * f.k + 2.0 * u(j, 0) * s2);
      const double em1 = std::expm1(h * T);
      const double den = (h + f.k) * em1 + 2.0 * h;
      fl.chi2.c = 2.0 * den / (s2 * em1);
      fl.chi2.lambda = 4.0 * h * h * std::exp(h * T) * f.x0 * fl.chi2.c / (den * den);
      fl.k_prime = f.k + s2 * affine::cir_riccati(T, u(j, 0), f).psi;
      fl.theta_prime = f.k * f.theta / fl.k_prime;
    }
    if (fl.chi2.nu <= 0.0) {
      // theta = 0 leaves no central part; treat as the limit of a tiny one
      fl.chi2.nu = 1e-300;
    }
    fl.chi2.validate();
    out.factors.push_back(fl);
  }
  return out;
}

CirTerminalLaw::CirTerminalLaw(CirTransformedLaw law) : law_(std::move(law)) {
  point_state_ = State::Zero(static_cast<Eigen::Index>(law_.factors.size()), 1);
  for (std::size_t j = 0; j < law_.factors.size(); ++j)
    if (law_.factors[j].degenerate) point_state_(static_cast<Eigen::Index>(j), 0) = law_.factors[j].point;
}

double CirTerminalLaw::laplace(const State& u) const {
  if (u.isZero(0.0)) return 1.0;
  double prod = 1.0;
  for (std::size_t j = 0; j < law_.factors.size(); ++j)
    if (!law_.factors[j].degenerate) prod *= dist::ncx2_laplace(law_.factors[j].chi2, u(static_cast<Eigen::Index>(j), 0));
  return std::exp(-numerics::pairing(u, point_state_)) * prod;
}

Complex CirTerminalLaw::transform(const State& u, Complex w) const {
  if (w == 0.0 || u.isZero(0.0)) return 1.0;
  Complex prod = 1.0;
  for (std::size_t j = 0; j < law_.factors.size(); ++j) {
    const double uj = u(static_cast<Eigen::Index>(j), 0);
    const CirFactorLaw& f = law_.factors[j];
    prod *= f.degenerate ? std::exp(-w * uj * f.point) : dist::ncx2_mgf(f.chi2, -w * uj);
  }
  return prod;
}

State CirTerminalLaw::sample(Rng& rng) const {
  State x = point_state_;
  for (std::size_t j = 0; j < law_.factors.size(); ++j)
    if (!law_.factors[j].degenerate) x(static_cast<Eigen::Index>(j), 0) = dist::ncx2_sample(law_.factors[j].chi2, rng);
  return x;
}

}  // namespace gao::measure
