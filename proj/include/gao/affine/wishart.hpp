#pragma once

#include "gao/affine/model.hpp"

namespace gao::affine {

/// dX = (beta Q'Q + H X + X H')dt + sqrt(X) dW Q + Q' dW' sqrt(X),
/// r = r_bar + Tr[R X], mu = mu_bar + Tr[M X].
class WishartModel final : public AffineModel {
 public:
  WishartModel(double beta, Matrix H, Matrix Q, Matrix x0, Matrix R, Matrix M, double r_bar, double mu_bar);

  int dim() const { return static_cast<int>(H_.rows()); }
  double beta() const { return beta_; }
  const Matrix& H() const { return H_; }
  const Matrix& Q() const { return Q_; }
  const Matrix& rate_loading() const { return R_; }
  const Matrix& mortality_loading() const { return M_; }
  double r_bar() const { return r_bar_; }
  double mu_bar() const { return mu_bar_; }

  ModelFamily family() const override { return ModelFamily::wishart; }
  std::string name() const override { return "wishart"; }
  double shift() const override { return r_bar_ + mu_bar_; }
  const State& initial_state() const override { return x0_; }
  State discount_loading() const override { return R_ + M_; }
  RiccatiSolution riccati(double tau, const State& u) const override;
  RiccatiSolution riccati_ode(double tau, const State& u, int steps) const override;
  double initial_correlation() const override;
  std::unique_ptr<AffineModel> clone() const override { return std::make_unique<WishartModel>(*this); }

 private:
  double beta_;
  Matrix H_, Q_, x0_, R_, M_;
  double r_bar_, mu_bar_;
};

/// Riccati solution via the doubled linear system: exp(tau [[H, 2Q'Q], [U, -H']]),
/// psi = A22^{-1} A21 (symmetrized), phi = (beta/2)(log det A22 + tau Tr H). Long
/// horizons are split into pieces of at most one year, each started from the
/// current psi. Throws linearization_breakdown when a determinant is not safely positive.
RiccatiSolution wishart_riccati(double tau, const Matrix& U, const WishartModel& model);

}  // namespace gao::affine
