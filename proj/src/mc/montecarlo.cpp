#include "gao/mc/montecarlo.hpp"

#include <chrono>
#include <cmath>

#include "gao/error.hpp"
#include "gao/measure/paths.hpp"
#include "gao/numerics/stats.hpp"
#include "gao/parallel.hpp"

namespace gao::mc {

const char* to_string(Estimator e) { return e == Estimator::direct_terminal ? "direct" : "rnpath"; }

Estimator parse_estimator(const std::string& s) {
  if (s == "direct" || s == "direct_terminal") return Estimator::direct_terminal;
  if (s == "rnpath" || s == "rn_path") return Estimator::rn_path;
  throw Error(ErrorKind::config, "estimator must be \"direct\" or \"rnpath\" (got \"" + s + "\")");
}

void McConfig::validate() const {
  if (n_sims < 100) throw Error(ErrorKind::invalid_argument, "mc: n_sims must be >= 100");
  if (steps_per_year < 50) throw Error(ErrorKind::invalid_argument, "mc: steps_per_year must be >= 50");
}

double gao_payoff(const affine::TenorCurve& curve, const State& x) {
  double sum = 0.0;
  for (std::size_t k = 0; k < curve.tenor.size(); ++k)
    sum += curve.s0[k] * std::exp(-numerics::pairing(curve.tenor[k].psi, x));
  return std::max(sum - (curve.contract.K - 1.0), 0.0);
}

std::vector<State> direct_draws(const measure::TerminalLaw& law, long n, std::uint64_t seed, unsigned threads) {
  if (!law.has_sampler()) throw Error(ErrorKind::unsupported_shape, law.sampler_unsupported_reason());
  std::vector<State> out(static_cast<std::size_t>(std::max(0L, n)));
  const long blocks = (n + measure::kPathsPerBlock - 1) / measure::kPathsPerBlock;
  parallel_for(static_cast<std::size_t>(blocks), threads, [&](std::size_t b) {
    Rng rng = make_stream(seed, b);
    const long first = static_cast<long>(b) * measure::kPathsPerBlock;
    const long count = std::min(measure::kPathsPerBlock, n - first);
    for (long i = 0; i < count; ++i) out[static_cast<std::size_t>(first + i)] = law.sample(rng);
  });
  return out;
}

McResult mc_gao_price(const affine::AffineModel& model, const affine::TenorCurve& curve, const measure::TerminalLaw& law,
                      const McConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const double scale = curve.contract.g * curve.szcb_T;
  McResult r;
  r.n_sims = cfg.n_sims;
  r.used = cfg.estimator;
  if (r.used == Estimator::direct_terminal && !law.has_sampler()) {
    r.warning = "direct sampling unavailable (" + law.sampler_unsupported_reason() + "); used rnpath";
    r.used = Estimator::rn_path;
  }
  if (r.used == Estimator::direct_terminal) {
    const long blocks = (cfg.n_sims + measure::kPathsPerBlock - 1) / measure::kPathsPerBlock;
    std::vector<numerics::RunningStats> stats(blocks);
    parallel_for(static_cast<std::size_t>(blocks), cfg.threads, [&](std::size_t b) {
      Rng rng = make_stream(cfg.seed, b);
      const long first = static_cast<long>(b) * measure::kPathsPerBlock;
      const long count = std::min(measure::kPathsPerBlock, cfg.n_sims - first);
      for (long i = 0; i < count; ++i) stats[b].push(gao_payoff(curve, law.sample(rng)));
    });
    numerics::RunningStats all;
    for (const auto& s : stats) all.merge(s);
    r.estimate = scale * all.mean;
    r.std_error = scale * all.std_error();
  } else {
    measure::PathConfig pc;
    pc.n_paths = cfg.n_sims;
    pc.steps_per_year = cfg.steps_per_year;
    pc.seed = cfg.seed;
    pc.threads = cfg.threads;
    const auto est = measure::rn_path_expectation(
        model, curve.contract.T, [&curve](const State& x) { return gao_payoff(curve, x); }, pc);
    r.estimate = scale * est.estimate;
    r.std_error = scale * est.std_error;
  }
  r.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

const char* to_string(BracketStatus s) { return s == BracketStatus::pass ? "PASS" : "FLAG"; }

BracketReport mc_bracket_check(double lb, double ub, const McResult& mc, double n_se) {
  const double band = n_se * mc.std_error + 1e-12;
  BracketReport r;
  if (mc.estimate < lb - band) {
    r.status = BracketStatus::flag;
    r.detail = "mc below lower bound";
  } else if (mc.estimate > ub + band) {
    r.status = BracketStatus::flag;
    r.detail = "mc above upper bound";
  } else {
    r.status = BracketStatus::pass;
  }
  return r;
}

}  // namespace gao::mc
