#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gao/affine/model.hpp"
#include "gao/affine/tenor_curve.hpp"
#include "gao/measure/terminal_law.hpp"

namespace gao::mc {

enum class Estimator { direct_terminal, rn_path };

const char* to_string(Estimator e);
/// Accepts "direct", "direct_terminal", "rnpath", "rn_path".
Estimator parse_estimator(const std::string& s);

struct McConfig {
  long n_sims = 50000;
  std::uint64_t seed = 1;
  Estimator estimator = Estimator::direct_terminal;
  int steps_per_year = 200;  // rn_path only
  unsigned threads = 1;

  void validate() const;
};

struct McResult {
  double estimate = 0.0;
  double std_error = 0.0;
  long n_sims = 0;
  double wall_time_seconds = 0.0;
  Estimator used = Estimator::direct_terminal;
  std::string warning;
};

/// (sum_i S0_i exp(-<psi(i), x>) - (K-1))^+
double gao_payoff(const affine::TenorCurve& curve, const State& x);

/// g P(0,T) E~[payoff(X_T)]. direct_terminal samples `law`; rn_path simulates the
/// model under the pricing measure with the numeraire weight, which always targets
/// the exact forward law. A law without a sampler falls back to rn_path with a warning.
McResult mc_gao_price(const affine::AffineModel& model, const affine::TenorCurve& curve, const measure::TerminalLaw& law,
                      const McConfig& cfg);

/// Direct draws of X_T from `law`, block-seeded like mc_gao_price.
std::vector<State> direct_draws(const measure::TerminalLaw& law, long n, std::uint64_t seed, unsigned threads);

enum class BracketStatus { pass, flag };
const char* to_string(BracketStatus s);

struct BracketReport {
  BracketStatus status = BracketStatus::pass;
  std::string detail;
};

/// PASS when lb - n_se*SE <= mc <= ub + n_se*SE (plus 1e-12 slack), else FLAG.
BracketReport mc_bracket_check(double lb, double ub, const McResult& mc, double n_se = 4.0);

}  // namespace gao::mc
