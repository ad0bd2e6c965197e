#pragma once

#include <optional>

#include "gao/affine/cir.hpp"
#include "gao/affine/contract.hpp"
#include "gao/affine/wishart.hpp"
#include "gao/app/builtin.hpp"
#include "gao/app/config.hpp"

namespace gao::testing {

inline affine::ContractSpec paper_contract() { return affine::ContractSpec::make(0.111, 15, 35); }

/// Three-factor CIR with m2 set and m3 calibrated to E[mu_15] = 0.0125.
inline affine::CirModel table1_model(double m2 = 0.0) {
  app::RunConfig cfg;
  cfg.model = app::mcir_table1_spec();
  cfg.sweep = app::Sweep{app::SweepParameter::m2, {m2}};
  auto m = app::build_model(cfg, m2);
  return dynamic_cast<const affine::CirModel&>(*m);
}

/// Wishart example 1, 2 or 3 with the swept entry set when given.
inline affine::WishartModel wishart_example(int example, std::optional<double> sweep = std::nullopt) {
  app::RunConfig cfg;
  cfg.model = app::wishart_example_spec(example);
  if (sweep)
    cfg.sweep = app::Sweep{example == 3 ? app::SweepParameter::q12 : app::SweepParameter::x0_12, {*sweep}};
  auto m = app::build_model(cfg, sweep);
  return dynamic_cast<const affine::WishartModel&>(*m);
}

}  // namespace gao::testing
