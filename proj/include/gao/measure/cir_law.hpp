#pragma once

#include <vector>

#include "gao/affine/cir.hpp"
#include "gao/dist/ncx2.hpp"
#include "gao/measure/terminal_law.hpp"

namespace gao::measure {

/// Law of one factor at T. Under the forward measure the drift is
/// k theta - (k + sigma^2 psi(T-t)) x, time dependent; the t = 0 values are kept
/// for reporting.
struct CirFactorLaw {
  double k_prime = 0.0;      // effective mean reversion at t = 0
  double theta_prime = 0.0;  // effective long-run level at t = 0
  bool degenerate = false;   // sigma = 0: point mass
  double point = 0.0;
  dist::NoncentralChiSquareScaled chi2;
};

struct CirTransformedLaw {
  MeasureConvention convention = MeasureConvention::forward;
  std::vector<CirFactorLaw> factors;
};

CirTransformedLaw cir_transformed_law(const affine::CirModel& model, double T, MeasureConvention c);

class CirTerminalLaw final : public TerminalLaw {
 public:
  explicit CirTerminalLaw(CirTransformedLaw law);

  const CirTransformedLaw& parameters() const { return law_; }

  MeasureConvention convention() const override { return law_.convention; }
  double laplace(const State& u) const override;
  Complex transform(const State& u, Complex w) const override;
  bool has_sampler() const override { return true; }
  std::string sampler_unsupported_reason() const override { return {}; }
  State sample(Rng& rng) const override;

 private:
  CirTransformedLaw law_;
  State point_state_;  // degenerate factors at their point, others 0
};

}  // namespace gao::measure
