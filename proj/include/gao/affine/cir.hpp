#pragma once

#include <vector>

#include "gao/affine/model.hpp"

namespace gao::affine {

/// dX = k(theta - X)dt + sigma sqrt(X) dW under the pricing measure.
struct CirFactor {
  double k = 0.0;
  double theta = 0.0;
  double sigma = 0.0;
  double x0 = 0.0;

  void validate(int index) const;
  /// E[X_t] from x0.
  double mean_at(double t) const;
};

struct ScalarRiccati {
  double phi = 0.0;
  double psi = 0.0;
};

/// Closed-form solution of psi' = u - k psi - (sigma^2/2) psi^2, phi' = k theta psi,
/// with psi(0) = phi(0) = 0. Throws unsupported_exponent for u < 0.
ScalarRiccati cir_riccati(double tau, double u, const CirFactor& f);

/// Independent CIR factors with r = r_bar + R.X and mu = mu_bar + M.X.
class CirModel final : public AffineModel {
 public:
  CirModel(std::vector<CirFactor> factors, Vector R, Vector M, double r_bar, double mu_bar);

  const std::vector<CirFactor>& factors() const { return factors_; }
  const Vector& rate_loading() const { return R_; }
  const Vector& mortality_loading() const { return M_; }
  double r_bar() const { return r_bar_; }
  double mu_bar() const { return mu_bar_; }
  int size() const { return static_cast<int>(factors_.size()); }

  ModelFamily family() const override { return ModelFamily::cir; }
  std::string name() const override { return "mcir"; }
  double shift() const override { return r_bar_ + mu_bar_; }
  const State& initial_state() const override { return x0_; }
  State discount_loading() const override { return R_ + M_; }
  RiccatiSolution riccati(double tau, const State& u) const override;
  RiccatiSolution riccati_ode(double tau, const State& u, int steps) const override;
  double initial_correlation() const override;
  std::unique_ptr<AffineModel> clone() const override { return std::make_unique<CirModel>(*this); }

 private:
  std::vector<CirFactor> factors_;
  Vector R_, M_;
  double r_bar_ = 0.0, mu_bar_ = 0.0;
  State x0_;
};

/// Solves for the last mortality loading so that E[mu_T] = target under the
/// pricing measure, keeping the other loadings of `model` fixed.
double calibrate_last_mortality_loading(const CirModel& model, double target, double T);

/// Three-factor form: m3 = (target - mu_bar - m2 E[X2_T]) / E[X3_T] with the
/// first mortality loading taken from the model (zero in the usual setup).
double calibrate_m3(const CirModel& model, double target, double m2, double T);

}  // namespace gao::affine
