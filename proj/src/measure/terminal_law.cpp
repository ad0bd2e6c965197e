#include "gao/measure/terminal_law.hpp"

#include <cmath>

#include "gao/affine/cir.hpp"
#include "gao/affine/wishart.hpp"
#include "gao/error.hpp"
#include "gao/measure/cir_law.hpp"
#include "gao/measure/wishart_law.hpp"

namespace gao::measure {

const char* to_string(MeasureConvention c) { return c == MeasureConvention::forward ? "forward" : "literal"; }

MeasureConvention parse_convention(const std::string& s) {
  if (s == "forward") return MeasureConvention::forward;
  if (s == "literal") return MeasureConvention::literal;
  throw Error(ErrorKind::config, "measure must be \"forward\" or \"literal\" (got \"" + s + "\")");
}

std::function<Complex(Complex)> TerminalLaw::ray(const State& u) const {
  return [this, u](Complex w) { return transform(u, w); };
}

std::unique_ptr<TerminalLaw> terminal_law(const affine::AffineModel& model, double T, MeasureConvention c) {
  if (const auto* cir = dynamic_cast<const affine::CirModel*>(&model))
    return std::make_unique<CirTerminalLaw>(cir_transformed_law(*cir, T, c));
  if (const auto* wis = dynamic_cast<const affine::WishartModel*>(&model))
    return std::make_unique<WishartTerminalLaw>(wishart_transformed_law(*wis, T, c));
  throw Error(ErrorKind::invalid_argument, "terminal_law: unknown model family");
}

BondConsistency bond_consistency(const affine::AffineModel& model, const affine::TenorCurve& curve,
                                 const TerminalLaw& law) {
  BondConsistency out;
  for (std::size_t k = 0; k < curve.tenor.size(); ++k) {
    const double target = model.szcb_price(curve.contract.T + static_cast<double>(k + 1));
    const double got = curve.szcb_T * curve.s0[k] * law.laplace(curve.tenor[k].psi);
    const double r = std::abs(got - target) / target;
    out.residuals.push_back(r);
    out.max_residual = std::max(out.max_residual, r);
  }
  return out;
}

std::unique_ptr<TerminalLaw> checked_terminal_law(const affine::AffineModel& model, const affine::TenorCurve& curve,
                                                  MeasureConvention c, double tol) {
  auto law = terminal_law(model, curve.contract.T, c);
  if (c == MeasureConvention::forward) {
    const BondConsistency bc = bond_consistency(model, curve, *law);
    if (!(bc.max_residual <= tol)) {
      std::string msg = "bond-consistency residuals above " + std::to_string(tol) + ":";
      for (std::size_t k = 0; k < bc.residuals.size(); ++k)
        if (!(bc.residuals[k] <= tol)) msg += " i=" + std::to_string(k + 1) + ":" + std::to_string(bc.residuals[k]);
      throw Error(ErrorKind::measure_construction, msg);
    }
  }
  return law;
}

}  // namespace gao::measure
