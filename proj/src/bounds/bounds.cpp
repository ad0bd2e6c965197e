#include "gao/bounds/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "gao/error.hpp"

namespace gao::bounds {

namespace {

constexpr Complex kI{0.0, 1.0};

double basket_value(const affine::TenorCurve& curve, const measure::TerminalLaw& law) {
  double sum = 0.0;
  for (std::size_t k = 0; k < curve.tenor.size(); ++k) sum += curve.s0[k] * law.laplace(curve.tenor[k].psi);
  return sum;
}

}  // namespace

void DampingSpec::validate() const {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw Error(ErrorKind::invalid_argument, "damping delta must be > 0");
}

double gao_lower_bound(const affine::TenorCurve& curve, const measure::TerminalLaw& law) {
  const auto& c = curve.contract;
  return c.g * curve.szcb_T * std::max(basket_value(curve, law) - (c.K - 1.0), 0.0);
}

double gao_lower_bound_model_free(const affine::AffineModel& model, const affine::TenorCurve& curve) {
  const auto& c = curve.contract;
  double sum = 0.0;
  for (int i = 1; i <= c.tenors(); ++i) sum += model.szcb_price(c.T + i);
  return c.g * std::max(sum - (c.K - 1.0) * curve.szcb_T, 0.0);
}

Complex geometric_charfn(const measure::TerminalLaw& law, const affine::TenorCurve& curve, Complex z) {
  if (z == 0.0) return 1.0;
  const double n1 = curve.contract.n - 1;
  return std::exp(kI * z * curve.log_geometric_s0()) * law.transform(curve.psi_sum(), kI * z / n1);
}

FourierCallResult fourier_geometric_call(const measure::TerminalLaw& law, const affine::TenorCurve& curve, double strike,
                                         const DampingSpec& damping, const numerics::QuadratureRule& rule) {
  if (!(strike > 0.0)) throw Error(ErrorKind::invalid_argument, "fourier_geometric_call: strike must be > 0");
  damping.validate();
  const double delta = damping.delta;
  const double log_k = std::log(strike);
  const double y0 = curve.log_geometric_s0();
  const double n1 = curve.contract.n - 1;
  const auto ray = law.ray(curve.psi_sum());
  // the (delta+1) moment of G_T must exist
  (void)ray(Complex(delta + 1.0, 0.0) / n1);

  auto integrand = [&](double eta) -> Complex {
    const Complex z(eta, -(delta + 1.0));
    const Complex cf = std::exp(kI * z * y0) * ray(kI * z / n1);
    const Complex den(delta * delta + delta - eta * eta, eta * (2.0 * delta + 1.0));
    return (std::exp(-kI * eta * log_k) * cf / den).real();
  };
  FourierCallResult out;
  out.quad = numerics::integrate_semi_infinite(integrand, rule);
  double v = std::exp(-delta * log_k) / std::numbers::pi * out.quad.value.real();
  if (v < -1e-8) throw Error(ErrorKind::quadrature_failure, "geometric call evaluated to " + std::to_string(v));
  out.value = std::max(v, 0.0);
  return out;
}

double expected_arithmetic(const measure::TerminalLaw& law, const affine::TenorCurve& curve) {
  return basket_value(curve, law) / static_cast<double>(curve.contract.n - 1);
}

double expected_geometric(const measure::TerminalLaw& law, const affine::TenorCurve& curve) {
  return geometric_charfn(law, curve, Complex(0.0, -1.0)).real();
}

double gao_upper_bound(const measure::TerminalLaw& law, const affine::TenorCurve& curve, const DampingSpec& damping,
                       const numerics::QuadratureRule& rule) {
  const auto& c = curve.contract;
  const double call = fourier_geometric_call(law, curve, c.basket_strike(), damping, rule).value;
  return c.g * (c.n - 1) * curve.szcb_T * (call + expected_arithmetic(law, curve) - expected_geometric(law, curve));
}

BoundReport compute_bounds(const affine::AffineModel& model, const affine::TenorCurve& curve,
                           const measure::TerminalLaw& law, const DampingSpec& damping,
                           const numerics::QuadratureRule& rule) {
  const auto& c = curve.contract;
  BoundReport r;
  r.szcb_T = curve.szcb_T;
  r.lower = gao_lower_bound(curve, law);
  r.e_arith = expected_arithmetic(law, curve);
  r.e_geom = expected_geometric(law, curve);
  const FourierCallResult call = fourier_geometric_call(law, curve, c.basket_strike(), damping, rule);
  r.fourier_call = call.value;
  r.quad_last_panel = call.quad.last_panel_abs;
  r.quad_eta_reached = call.quad.eta_reached;
  r.quad_tail_warning = call.quad.tail_warning;
  if (call.quad.tail_warning)
    r.warnings.push_back("Fourier integrand had not decayed below tail_tol at eta_max=" + std::to_string(rule.eta_max));
  r.upper = c.g * (c.n - 1) * curve.szcb_T * (r.fourier_call + r.e_arith - r.e_geom);
  try {
    r.rho0 = model.initial_correlation();
  } catch (const Error& e) {
    r.rho0 = std::numeric_limits<double>::quiet_NaN();
    r.warnings.push_back(e.what());
  }
  r.identity_residual = measure::bond_consistency(model, curve, law).max_residual;
  for (const auto& w : law.warnings()) r.warnings.push_back(w);
  return r;
}

}  // namespace gao::bounds
