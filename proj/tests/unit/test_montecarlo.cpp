#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "gao/affine/tenor_curve.hpp"
#include "gao/bounds/bounds.hpp"
#include "gao/error.hpp"
#include "gao/mc/montecarlo.hpp"

using namespace gao;
using gao::testing::paper_contract;
using gao::testing::table1_model;
using gao::testing::wishart_example;
using measure::MeasureConvention;

namespace {

mc::McResult price(const affine::AffineModel& m, MeasureConvention conv, long n, std::uint64_t seed,
                   unsigned threads = 1, mc::Estimator e = mc::Estimator::direct_terminal, int steps = 200) {
  const auto curve = affine::tenor_curve(m, paper_contract());
  const auto law = measure::terminal_law(m, 15.0, conv);
  mc::McConfig cfg;
  cfg.n_sims = n;
  cfg.seed = seed;
  cfg.threads = threads;
  cfg.estimator = e;
  cfg.steps_per_year = steps;
  return mc::mc_gao_price(m, curve, *law, cfg);
}

}  // namespace

TEST(MonteCarlo, ZeroVolatilityEqualsLowerBoundExactly) {
  std::vector<affine::CirFactor> f = {{0.3731, 0.074484, 0.0, 0.0510234}, {0.011, 0.245455, 0.0, 0.0890707}};
  Vector R(2), M(2);
  R << 1.0, 0.0;
  M << 0.0, 0.3;
  const affine::CirModel m(f, R, M, -0.06, 0.0);
  const auto curve = affine::tenor_curve(m, paper_contract());
  const auto law = measure::terminal_law(m, 15.0, MeasureConvention::forward);
  const auto r = price(m, MeasureConvention::forward, 3000, 1);
  EXPECT_EQ(r.estimate, bounds::gao_lower_bound(curve, *law));
  EXPECT_EQ(r.std_error, 0.0);
}

TEST(MonteCarlo, BitIdenticalAcrossWorkerCounts) {
  const auto m = table1_model(0.02);
  const auto a = price(m, MeasureConvention::literal, 12345, 7, 1);
  const auto b = price(m, MeasureConvention::literal, 12345, 7, 4);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.std_error, b.std_error);
  const auto c = price(wishart_example(1), MeasureConvention::forward, 5000, 7, 3);
  const auto d = price(wishart_example(1), MeasureConvention::forward, 5000, 7, 1);
  EXPECT_EQ(c.estimate, d.estimate);
}

TEST(MonteCarlo, StandardErrorHalvesWhenSamplesQuadruple) {
  const auto m = table1_model(0.0);
  double ratio = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ratio += price(m, MeasureConvention::forward, 2000, seed).std_error /
             price(m, MeasureConvention::forward, 8000, seed + 100).std_error;
  }
  ratio /= 10.0;
  EXPECT_NEAR(ratio, 2.0, 0.4);
}

TEST(MonteCarlo, MissingSamplerFallsBackToPaths) {
  const auto r = price(wishart_example(1), MeasureConvention::literal, 200, 3, 1, mc::Estimator::direct_terminal, 50);
  EXPECT_EQ(r.used, mc::Estimator::rn_path);
  EXPECT_FALSE(r.warning.empty());
}

TEST(MonteCarlo, ArithmeticCallDominatesGeometricOnDraws) {
  const auto m = table1_model(0.05);
  const auto curve = affine::tenor_curve(m, paper_contract());
  const auto law = measure::terminal_law(m, 15.0, MeasureConvention::forward);
  const double kp = curve.contract.basket_strike();
  const auto draws = mc::direct_draws(*law, 5000, 2, 1);
  double sum_a = 0.0, sum_g = 0.0;
  for (const auto& x : draws) {
    double a = 0.0, lg = 0.0;
    for (std::size_t k = 0; k < curve.tenor.size(); ++k) {
      const double s = curve.s0[k] * std::exp(-numerics::pairing(curve.tenor[k].psi, x));
      a += s;
      lg += std::log(s);
    }
    a /= 34.0;
    const double g = std::exp(lg / 34.0);
    EXPECT_GE(std::max(a - kp, 0.0), std::max(g - kp, 0.0));
    sum_a += std::max(a - kp, 0.0);
    sum_g += std::max(g - kp, 0.0);
  }
  EXPECT_GE(sum_a, sum_g);
}

TEST(MonteCarlo, PriceAboveLowerBoundUnderItsOwnLaw) {
  const auto m = table1_model(0.0);
  for (auto conv : {MeasureConvention::forward, MeasureConvention::literal}) {
    const auto curve = affine::tenor_curve(m, paper_contract());
    const auto law = measure::terminal_law(m, 15.0, conv);
    const auto r = price(m, conv, 20000, 5);
    EXPECT_GE(r.estimate + 4.0 * r.std_error, bounds::gao_lower_bound(curve, *law));
  }
}

TEST(MonteCarlo, TooFewSamplesRejected) {
  EXPECT_THROW(price(table1_model(), MeasureConvention::forward, 10, 1), Error);
}

TEST(BracketCheck, Examples) {
  mc::McResult r;
  r.estimate = 0.2019;
  r.std_error = 0.0004;
  EXPECT_EQ(mc::mc_bracket_check(0.2017, 0.2635, r).status, mc::BracketStatus::pass);

  r.estimate = 0.25;
  r.std_error = 0.0;
  EXPECT_EQ(mc::mc_bracket_check(0.25, 0.25, r).status, mc::BracketStatus::pass);

  // Q12 = 0.01 row of the published Wishart example 3 table
  r.estimate = 0.212744888444368;
  r.std_error = 0.0005;
  const auto flag = mc::mc_bracket_check(0.196440417823759, 0.204994244625801, r);
  EXPECT_EQ(flag.status, mc::BracketStatus::flag);
  EXPECT_EQ(flag.detail, "mc above upper bound");

  r.estimate = 0.19;
  EXPECT_EQ(mc::mc_bracket_check(0.196440417823759, 0.204994244625801, r).detail, "mc below lower bound");
}

TEST(Estimator, Parsing) {
  EXPECT_EQ(mc::parse_estimator("direct"), mc::Estimator::direct_terminal);
  EXPECT_EQ(mc::parse_estimator("rn_path"), mc::Estimator::rn_path);
  EXPECT_THROW(mc::parse_estimator("qmc"), Error);
}
