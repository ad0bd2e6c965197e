#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "gao/affine/cir.hpp"
#include "gao/affine/contract.hpp"
#include "gao/affine/wishart.hpp"
#include "gao/bounds/bounds.hpp"
#include "gao/mc/montecarlo.hpp"
#include "gao/measure/terminal_law.hpp"
#include "gao/numerics/quadrature.hpp"

namespace gao::app {

struct McirSpec {
  std::vector<affine::CirFactor> factors;
  std::vector<double> R;
  std::vector<double> M;  // last entry ignored when mortality_target is set
  double r_bar = 0.0;
  double mu_bar = 0.0;
  // E[mu_T] target used to solve for the last mortality loading
  std::optional<double> mortality_target;
};

struct WishartSpec {
  double beta = 0.0;
  Matrix H, Q, x0, R, M;
  double r_bar = 0.0;
  double mu_bar = 0.0;
};

enum class SweepParameter { m2, x0_12, q12 };
const char* to_string(SweepParameter p);

struct Sweep {
  SweepParameter parameter = SweepParameter::m2;
  std::vector<double> values;
};

struct BoundsSettings {
  bounds::DampingSpec damping;
  numerics::QuadratureRule rule;
};

struct McSettings {
  long n_sims = 0;  // 0 disables Monte Carlo
  std::uint64_t seed = 1;
  mc::Estimator estimator = mc::Estimator::direct_terminal;
  int steps_per_year = 200;
};

struct RunConfig {
  std::string label;
  std::variant<McirSpec, WishartSpec> model;
  affine::ContractSpec contract = affine::ContractSpec::make(0.111, 15, 35);
  measure::MeasureConvention measure = measure::MeasureConvention::forward;
  BoundsSettings bounds;
  McSettings mc;
  std::optional<Sweep> sweep;
};

/// Strict parse: unknown keys, wrong types and bad values raise Error(config)
/// naming the offending field, e.g. "model.factors[1].sigma".
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& cfg);

/// Model at a sweep point (or the base model when value is empty). Invalid model
/// parameters raise Error(config).
std::unique_ptr<affine::AffineModel> build_model(const RunConfig& cfg, std::optional<double> sweep_value = std::nullopt);

/// Sweep values, or a single empty point when the config has no sweep.
std::vector<std::optional<double>> sweep_points(const RunConfig& cfg);

}  // namespace gao::app
