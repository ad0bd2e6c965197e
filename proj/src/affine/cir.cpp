#include "gao/affine/cir.hpp"

#include <cmath>
#include <string>

#include "gao/error.hpp"
#include "gao/numerics/rk4.hpp"

namespace gao::affine {

void CirFactor::validate(int index) const {
  const std::string where = "factor " + std::to_string(index + 1) + ": ";
  if (!std::isfinite(k) || !std::isfinite(theta) || !std::isfinite(sigma) || !std::isfinite(x0))
    throw Error(ErrorKind::invalid_argument, where + "non-finite parameter");
  if (!(k > 0.0)) throw Error(ErrorKind::invalid_argument, where + "mean reversion k must be > 0 (got " + std::to_string(k) + ")");
  if (sigma < 0.0) throw Error(ErrorKind::invalid_argument, where + "sigma must be >= 0");
  if (x0 < 0.0) throw Error(ErrorKind::invalid_argument, where + "x0 must be >= 0");
  if (theta < 0.0) throw Error(ErrorKind::invalid_argument, where + "theta must be >= 0");
}

double CirFactor::mean_at(double t) const {
  const double e = std::exp(-k * t);
  return x0 * e + theta * (1.0 - e);
}

ScalarRiccati cir_riccati(double tau, double u, const CirFactor& f) {
  if (tau < 0.0) throw Error(ErrorKind::invalid_argument, "cir_riccati: tau must be >= 0");
  if (u < 0.0) throw Error(ErrorKind::unsupported_exponent, "cir_riccati: exponent u must be >= 0 (got " + std::to_string(u) + ")");
  if (tau == 0.0 || u == 0.0) return {};
  const double k = f.k;
  if (f.sigma == 0.0) {
    const double a = -std::expm1(-k * tau) / k;  // (1 - e^{-k tau}) / k
    return {u * f.theta * (tau - a), u * a};
  }
  const double s2 = f.sigma * f.sigma;
  const double h = std::sqrt(k * k + 2.0 * u * s2);
  const double em1 = std::expm1(h * tau);
  const double den = (h + k) * em1 + 2.0 * h;
  const double psi = 2.0 * u * em1 / den;
  const double phi = -(2.0 * k * f.theta / s2) * (std::log(2.0 * h / den) + 0.5 * (k + h) * tau);
  return {phi, psi};
}

CirModel::CirModel(std::vector<CirFactor> factors, Vector R, Vector M, double r_bar, double mu_bar)
    : factors_(std::move(factors)), R_(std::move(R)), M_(std::move(M)), r_bar_(r_bar), mu_bar_(mu_bar) {
  if (factors_.empty()) throw Error(ErrorKind::invalid_argument, "mcir: at least one factor is required");
  const auto p = static_cast<Eigen::Index>(factors_.size());
  if (R_.size() != p || M_.size() != p)
    throw Error(ErrorKind::invalid_argument, "mcir: R and M must have one entry per factor");
  if (!R_.allFinite() || !M_.allFinite() || !std::isfinite(r_bar_) || !std::isfinite(mu_bar_))
    throw Error(ErrorKind::invalid_argument, "mcir: non-finite loading or shift");
  x0_.resize(p, 1);
  for (Eigen::Index i = 0; i < p; ++i) {
    factors_[i].validate(static_cast<int>(i));
    if (R_(i) + M_(i) < 0.0)
      throw Error(ErrorKind::invalid_argument, "mcir: R+M must be >= 0 (factor " + std::to_string(i + 1) + ")");
    x0_(i, 0) = factors_[i].x0;
  }
}

RiccatiSolution CirModel::riccati(double tau, const State& u) const {
  RiccatiSolution out;
  out.tau = tau;
  out.psi = State::Zero(size(), 1);
  for (int i = 0; i < size(); ++i) {
    const ScalarRiccati s = cir_riccati(tau, u(i, 0), factors_[i]);
    out.phi += s.phi;
    out.psi(i, 0) = s.psi;
  }
  return out;
}

RiccatiSolution CirModel::riccati_ode(double tau, const State& u, int steps) const {
  RiccatiSolution out;
  out.tau = tau;
  out.psi = State::Zero(size(), 1);
  for (int i = 0; i < size(); ++i) {
    const CirFactor& f = factors_[i];
    const double ui = u(i, 0);
    // y = (psi, phi)
    auto deriv = [&](double, const Eigen::Vector2d& y) {
      return Eigen::Vector2d(ui - f.k * y(0) - 0.5 * f.sigma * f.sigma * y(0) * y(0), f.k * f.theta * y(0));
    };
    const Eigen::Vector2d y = numerics::rk4_integrate(deriv, 0.0, tau, Eigen::Vector2d::Zero().eval(), steps);
    out.psi(i, 0) = y(0);
    out.phi += y(1);
  }
  return out;
}

double CirModel::initial_correlation() const {
  double cov = 0.0, var_r = 0.0, var_mu = 0.0;
  for (int i = 0; i < size(); ++i) {
    const double s = factors_[i].sigma * factors_[i].sigma * factors_[i].x0;
    cov += R_(i) * M_(i) * s;
    var_r += R_(i) * R_(i) * s;
    var_mu += M_(i) * M_(i) * s;
  }
  const double den = std::sqrt(var_r) * std::sqrt(var_mu);
  if (!(den > 0.0)) throw Error(ErrorKind::undefined_correlation, "mcir: r or mu has zero instantaneous variance");
  return cov / den;
}

double calibrate_last_mortality_loading(const CirModel& model, double target, double T) {
  const int last = model.size() - 1;
  const double e_last = model.factors()[last].mean_at(T);
  if (!(std::abs(e_last) > 1e-14)) throw Error(ErrorKind::calibration, "E[X_T] of the last factor is ~0");
  double rest = model.mu_bar();
  for (int i = 0; i < last; ++i) rest += model.mortality_loading()(i) * model.factors()[i].mean_at(T);
  return (target - rest) / e_last;
}

double calibrate_m3(const CirModel& model, double target, double m2, double T) {
  if (model.size() < 3) throw Error(ErrorKind::calibration, "calibrate_m3 needs at least three factors");
  const auto& f = model.factors();
  const double e3 = f[2].mean_at(T);
  if (!(std::abs(e3) > 1e-14)) throw Error(ErrorKind::calibration, "E[X3_T] is ~0");
  const double m1 = model.mortality_loading()(0);
  return (target - model.mu_bar() - m1 * f[0].mean_at(T) - m2 * f[1].mean_at(T)) / e3;
}

}  // namespace gao::affine
