#pragma once

#include <vector>

#include "gao/affine/contract.hpp"
#include "gao/affine/model.hpp"

namespace gao::affine {

/// Riccati data of the n-1 basket bonds. At T the bond paying at T+i is
/// worth S0[i-1] * exp(-<tenor[i-1].psi, X_T>).
struct TenorCurve {
  ContractSpec contract;
  double shift = 0.0;
  RiccatiSolution maturity;  // horizon T, numeraire bond
  double szcb_T = 0.0;       // P(0, T)
  std::vector<RiccatiSolution> tenor;
  std::vector<double> s0;

  /// sum_k psi(k)
  State psi_sum() const;
  /// (1/(n-1)) sum_k ln S0_k
  double log_geometric_s0() const;
};

TenorCurve tenor_curve(const AffineModel& model, const ContractSpec& contract);

}  // namespace gao::affine
