#pragma once

#include <optional>

#include "gao/affine/wishart.hpp"
#include "gao/dist/ncwishart.hpp"
#include "gao/measure/terminal_law.hpp"

namespace gao::measure {

/// psi0, V0 from the backward linear system
///   dpsi/dt = -H(t)' psi, dV/dt = -psi' Q'Q psi, psi(T) = I, V(T) = 0,
/// with H(t) = H - f Q'Q psi(T - t) (f = 2 forward, f = 1 literal).
struct WishartTransformedLaw {
  MeasureConvention convention = MeasureConvention::forward;
  Matrix psi0;
  Matrix V0;
  Matrix omega;  // psi0' x0 psi0
  dist::NoncentralWishartLaw law;
  bool pseudo_inverse_used = false;
};

WishartTransformedLaw wishart_transformed_law(const affine::WishartModel& model, double T, MeasureConvention c,
                                              std::optional<int> steps = std::nullopt);

class WishartTerminalLaw final : public TerminalLaw {
 public:
  explicit WishartTerminalLaw(WishartTransformedLaw law);

  const WishartTransformedLaw& parameters() const { return law_; }

  MeasureConvention convention() const override { return law_.convention; }
  double laplace(const State& u) const override { return dist::ncw_laplace(law_.law, u); }
  Complex transform(const State& u, Complex w) const override { return dist::ncw_transform(law_.law, u, w); }
  std::function<Complex(Complex)> ray(const State& u) const override;
  bool has_sampler() const override { return sampler_.has_value(); }
  std::string sampler_unsupported_reason() const override { return unsupported_; }
  State sample(Rng& rng) const override;

 private:
  WishartTransformedLaw law_;
  std::optional<dist::NcwSampler> sampler_;
  std::string unsupported_;
};

}  // namespace gao::measure
