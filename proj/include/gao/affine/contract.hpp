#pragma once

namespace gao::affine {

/// GAO terms: guaranteed rate g, maturity T (years) and n annuity dates,
/// i.e. a basket of n-1 survival bonds paying at T+1..T+n-1.
struct ContractSpec {
  double g = 0.0;
  int T = 0;
  int n = 0;
  double K = 0.0;  // 1/g

  static ContractSpec make(double g, int T, int n);

  int tenors() const { return n - 1; }
  /// Strike of the geometric-average call: (K-1)/(n-1).
  double basket_strike() const { return (K - 1.0) / (n - 1); }
};

}  // namespace gao::affine
