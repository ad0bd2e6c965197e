#pragma once

#include <memory>
#include <string>

#include "gao/numerics/linalg.hpp"

namespace gao::affine {

/// phi(tau), psi(tau) such that E[exp(-int_0^tau <u, X_s> ds)] = exp(-phi - <psi, x0>).
/// psi has the shape of the state (p x 1 for CIR, d x d for Wishart).
struct RiccatiSolution {
  double tau = 0.0;
  double phi = 0.0;
  State psi;
};

enum class ModelFamily { cir, wishart };

/// Common face of the two affine families. Rates are r = r_bar + <R, X>,
/// mu = mu_bar + <M, X>; the survival-bond discount exponent is R + M.
class AffineModel {
 public:
  virtual ~AffineModel() = default;

  virtual ModelFamily family() const = 0;
  virtual std::string name() const = 0;
  /// r_bar + mu_bar, applied outside phi.
  virtual double shift() const = 0;
  virtual const State& initial_state() const = 0;
  virtual State discount_loading() const = 0;
  /// Closed-form Riccati solution for exponent u.
  virtual RiccatiSolution riccati(double tau, const State& u) const = 0;
  /// Same quantity by RK4 on the Riccati ODE; used as an oracle.
  virtual RiccatiSolution riccati_ode(double tau, const State& u, int steps) const = 0;
  /// Instantaneous correlation of r and mu at t = 0.
  virtual double initial_correlation() const = 0;
  virtual std::unique_ptr<AffineModel> clone() const = 0;

  RiccatiSolution discount_riccati(double tau) const { return riccati(tau, discount_loading()); }

  /// Survival zero-coupon bond price P(0, tau) from state x.
  double szcb_price(double tau, const State& x) const;
  double szcb_price(double tau) const { return szcb_price(tau, initial_state()); }
};

}  // namespace gao::affine
