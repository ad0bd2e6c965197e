#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gao/app/config.hpp"

namespace gao::app {

struct CheckResult {
  std::string name;
  std::optional<double> sweep_value;
  bool passed = false;
  bool informational = false;  // reported, never fails the run
  double value = 0.0;          // residual or statistic compared with tolerance
  double tolerance = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::string label;
  std::vector<CheckResult> checks;

  bool passed() const;
  nlohmann::json to_json() const;
};

struct ValidateOptions {
  long transform_draws = 100000;
  long default_paths = 20000;  // when the config disables Monte Carlo
  unsigned threads = 1;
};

/// Deterministic checks at every sweep point (Riccati vs RK4, bond consistency,
/// bound ordering, damping robustness); Monte Carlo checks (transform vs sampler,
/// direct vs rnpath, weight normalization) at the first point. A model that
/// fails its own invariants yields a failed "model" check.
ValidationReport run_validate(const RunConfig& cfg, const ValidateOptions& opt);

}  // namespace gao::app
