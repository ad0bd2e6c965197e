#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "gao/affine/model.hpp"
#include "gao/dist/rng.hpp"

namespace gao::measure {

/// Paths are grouped in blocks of this size; block b always uses stream (seed, b),
/// so results do not depend on the worker count.
inline constexpr long kPathsPerBlock = 1000;

struct PathConfig {
  long n_paths = 20000;
  int steps_per_year = 200;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

/// One path under the pricing measure: X_T and int_0^T (r + mu) dt.
class PathSimulator {
 public:
  virtual ~PathSimulator() = default;
  virtual void simulate(Rng& rng, State& x_T, double& discount_integral) const = 0;
};

/// CIR: full-truncation Euler per factor. Wishart with integer beta >= d: exact
/// transitions of beta Gaussian OU vectors whose outer products sum to X; other
/// shapes use Euler with eigenvalue-floor projection each step. Trapezoidal rule
/// for the discount integral.
std::unique_ptr<PathSimulator> make_path_simulator(const affine::AffineModel& model, double T, int steps_per_year);

struct WeightedEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  double mean_weight = 0.0;
  double weight_std_error = 0.0;
  long n = 0;
};

/// E~[f(X_T)] = E[eta_T f(X_T)], eta_T = exp(-int_0^T (r + mu) dt) / P(0, T).
/// f must be safe to call concurrently.
WeightedEstimate rn_path_expectation(const affine::AffineModel& model, double T,
                                     const std::function<double(const State&)>& payoff, const PathConfig& cfg);

struct WeightedDraw {
  State x;
  double weight = 0.0;
};

/// Terminal states with their weights eta_T, in deterministic order.
std::vector<WeightedDraw> rn_path_draws(const affine::AffineModel& model, double T, const PathConfig& cfg);

}  // namespace gao::measure
