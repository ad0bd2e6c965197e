#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gao/affine/model.hpp"
#include "gao/affine/tenor_curve.hpp"
#include "gao/dist/rng.hpp"

namespace gao::measure {

/// Which law of X_T the bounds are evaluated under.
///  forward: the exact law under the survival-bond numeraire measure.
///  literal: the transformed-measure formulas taken as printed in the source
///           tables' derivation (CIR: pricing-measure drift kept; Wishart: drift
///           correction Q'Q psi with unit factor and Theta-first trace ordering).
///           Reproduces the published bound columns, fails bond consistency.
enum class MeasureConvention { forward, literal };

const char* to_string(MeasureConvention c);
MeasureConvention parse_convention(const std::string& s);

/// Law of X_T under a given measure.
class TerminalLaw {
 public:
  virtual ~TerminalLaw() = default;

  virtual MeasureConvention convention() const = 0;
  /// E[exp(-<u, X_T>)]; exactly 1 at u = 0.
  virtual double laplace(const State& u) const = 0;
  /// E[exp(-w <u, X_T>)] for complex w in the convergence strip.
  virtual Complex transform(const State& u, Complex w) const = 0;
  /// w -> transform(u, w) with u-dependent work done once.
  virtual std::function<Complex(Complex)> ray(const State& u) const;

  virtual bool has_sampler() const = 0;
  /// Empty when has_sampler().
  virtual std::string sampler_unsupported_reason() const = 0;
  virtual State sample(Rng& rng) const = 0;

  const std::vector<std::string>& warnings() const { return warnings_; }

 protected:
  std::vector<std::string> warnings_;
};

std::unique_ptr<TerminalLaw> terminal_law(const affine::AffineModel& model, double T, MeasureConvention c);

/// Relative residuals |P(0,T) S0_i L(psi(i)) - P(0,T+i)| / P(0,T+i), i = 1..n-1.
struct BondConsistency {
  std::vector<double> residuals;
  double max_residual = 0.0;
};
BondConsistency bond_consistency(const affine::AffineModel& model, const affine::TenorCurve& curve,
                                 const TerminalLaw& law);

/// terminal_law for curve.contract.T. A forward law whose bond-consistency residual
/// exceeds tol raises measure_construction listing the residuals; literal laws are
/// not checked since they are not expected to pass.
std::unique_ptr<TerminalLaw> checked_terminal_law(const affine::AffineModel& model, const affine::TenorCurve& curve,
                                                  MeasureConvention c, double tol = 1e-6);

}  // namespace gao::measure
