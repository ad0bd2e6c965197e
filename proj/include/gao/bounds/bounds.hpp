#pragma once

#include <string>
#include <vector>

#include "gao/affine/model.hpp"
#include "gao/affine/tenor_curve.hpp"
#include "gao/measure/terminal_law.hpp"
#include "gao/numerics/quadrature.hpp"

namespace gao::bounds {

struct DampingSpec {
  double delta = 1.5;
  void validate() const;
};

struct BoundReport {
  double lower = 0.0;
  double upper = 0.0;
  double e_arith = 0.0;       // E~[A_T]
  double e_geom = 0.0;        // E~[G_T]
  double fourier_call = 0.0;  // E~[(G_T - K')^+]
  double rho0 = 0.0;          // NaN when undefined
  double szcb_T = 0.0;
  // diagnostics
  double quad_last_panel = 0.0;
  double quad_eta_reached = 0.0;
  bool quad_tail_warning = false;
  double identity_residual = 0.0;  // max bond-consistency residual of the law used
  std::vector<std::string> warnings;
};

/// g P(0,T) (sum_i S0_i L(psi(i)) - (K-1))^+ with L the Laplace transform of X_T.
double gao_lower_bound(const affine::TenorCurve& curve, const measure::TerminalLaw& law);

/// g (sum_i P(0,T+i) - (K-1) P(0,T))^+, the same bound written with bond prices only.
double gao_lower_bound_model_free(const affine::AffineModel& model, const affine::TenorCurve& curve);

/// E~[exp(i z ln G_T)] = e^{i z Y0} E~[exp(-(i z/(n-1)) <sum_k psi(k), X_T>)].
Complex geometric_charfn(const measure::TerminalLaw& law, const affine::TenorCurve& curve, Complex z);

struct FourierCallResult {
  double value = 0.0;
  numerics::QuadratureResult quad;
};

/// E~[(G_T - strike)^+] by damped Fourier inversion:
/// (e^{-delta k}/pi) int_0^inf Re[e^{-i eta k} cf(eta - i(delta+1)) / (delta^2 + delta - eta^2 + i eta (2 delta + 1))] d eta,
/// k = ln strike.
FourierCallResult fourier_geometric_call(const measure::TerminalLaw& law, const affine::TenorCurve& curve, double strike,
                                         const DampingSpec& damping, const numerics::QuadratureRule& rule);

/// (1/(n-1)) sum_k S0_k L(psi(k))
double expected_arithmetic(const measure::TerminalLaw& law, const affine::TenorCurve& curve);

/// geometric_charfn at z = -i
double expected_geometric(const measure::TerminalLaw& law, const affine::TenorCurve& curve);

/// g (n-1) P(0,T) (call + E~[A] - E~[G])
double gao_upper_bound(const measure::TerminalLaw& law, const affine::TenorCurve& curve, const DampingSpec& damping,
                       const numerics::QuadratureRule& rule);

/// Both bounds with all intermediate quantities.
BoundReport compute_bounds(const affine::AffineModel& model, const affine::TenorCurve& curve,
                           const measure::TerminalLaw& law, const DampingSpec& damping,
                           const numerics::QuadratureRule& rule);

}  // namespace gao::bounds
