// Acceptance runner. Prints one PASS/FAIL line per criterion followed by
// indented detail lines. `--criterion N` runs a single criterion (used by ctest).
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gao/affine/tenor_curve.hpp"
#include "gao/app/builtin.hpp"
#include "gao/app/csv.hpp"
#include "gao/app/runner.hpp"
#include "gao/bounds/bounds.hpp"
#include "gao/mc/montecarlo.hpp"
#include "gao/numerics/matrix_exp.hpp"
#include "gao/numerics/rk4.hpp"
#include "gao/numerics/stats.hpp"

using namespace gao;
using app::BuiltinTable;
using measure::MeasureConvention;

namespace {

// pinned tolerances
constexpr double kTable2LbRel = 1e-6;
constexpr double kTable2RhoAbs = 1e-9;
constexpr double kTable2Seconds = 1.0;
constexpr double kUbRel = 5e-4;
constexpr double kDampingAbs = 1e-6;
constexpr double kTable3LbRel = 1e-6;
constexpr double kTable3GapAbs = 3e-9;
constexpr double kTables45LbRel = 1e-5;
constexpr double kBondRel = 1e-6;
constexpr double kCombinedSe = 4.0;
constexpr double kOrderingTol = 1e-9;
constexpr double kCallTol = 1e-8;
constexpr double kRiccatiTol = 1e-8;
constexpr double kRotationTol = 1e-10;
constexpr double kSamplerSe = 4.0;
constexpr long kSamplerDraws = 100000;
constexpr double kPanelHalvingTol = 1e-8;

std::string report_dir = "acceptance";

struct Outcome {
  bool passed = true;
  std::string summary;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    if (!ok) passed = false;
    details.push_back(std::string(ok ? "ok   " : "MISS ") + what);
  }
  void note(const std::string& what) { details.push_back("     " + what); }
};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string full(double x) { return app::format_double(x); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::unique_ptr<affine::AffineModel> model_at(const BuiltinTable& t, double sweep) {
  return app::build_model(t.config, sweep);
}

struct Evaluated {
  std::unique_ptr<affine::AffineModel> model;
  affine::TenorCurve curve;
  std::unique_ptr<measure::TerminalLaw> law;
};

Evaluated evaluate(const BuiltinTable& t, double sweep, MeasureConvention c) {
  auto m = model_at(t, sweep);
  auto curve = affine::tenor_curve(*m, t.config.contract);
  auto law = measure::terminal_law(*m, t.config.contract.T, c);
  return {std::move(m), std::move(curve), std::move(law)};
}

std::vector<app::RowOutcome> bounds_rows(const BuiltinTable& t) {
  app::RunConfig cfg = t.config;
  cfg.mc.n_sims = 0;
  return app::run_rows(cfg, 1);
}

void write_divergence(const BuiltinTable& t, const std::vector<app::RowOutcome>& rows) {
  std::filesystem::create_directories(report_dir);
  const std::string path = report_dir + "/divergence_table" + std::to_string(t.id) + ".csv";
  std::ofstream out(path);
  app::write_divergence_report(out, t, rows);
}

Outcome criterion1() {
  Outcome o;
  const auto t = app::builtin_table(2);
  const auto start = std::chrono::steady_clock::now();
  const auto rows = bounds_rows(t);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  double worst_lb = 0.0, worst_rho = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i].row;
    const auto& p = t.published[i];
    if (!r.gao_lb || !r.rho0) {
      o.require(false, "row " + full(p.sweep) + " failed: " + r.reason);
      continue;
    }
    worst_lb = std::max(worst_lb, rel(*r.gao_lb, p.lb));
    worst_rho = std::max(worst_rho, std::abs(*r.rho0 - p.rho));
  }
  o.require(worst_lb <= kTable2LbRel, "max LB relative residual " + num(worst_lb) + " <= " + num(kTable2LbRel));
  o.require(worst_rho <= kTable2RhoAbs, "max rho0 absolute residual " + num(worst_rho) + " <= " + num(kTable2RhoAbs));
  o.require(seconds < kTable2Seconds, "20 rows of bounds in " + num(seconds) + " s < " + num(kTable2Seconds) + " s");
  o.summary = "Table 2 lower bounds and correlations";
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto t = app::builtin_table(2);
  double worst_ub = 0.0, worst_spread = 0.0;
  for (const auto& p : t.published) {
    const auto e = evaluate(t, p.sweep, t.config.measure);
    double lo = 1e300, hi = -1e300;
    for (double delta : {0.75, 1.5, 3.0}) {
      const double ub = bounds::gao_upper_bound(*e.law, e.curve, {delta}, t.config.bounds.rule);
      lo = std::min(lo, ub);
      hi = std::max(hi, ub);
      if (delta == 1.5) worst_ub = std::max(worst_ub, rel(ub, p.ub));
    }
    worst_spread = std::max(worst_spread, hi - lo);
  }
  o.require(worst_ub <= kUbRel, "max UB relative residual " + num(worst_ub) + " <= " + num(kUbRel));
  o.require(worst_spread <= kDampingAbs,
            "max UB spread over delta in {0.75, 1.5, 3} " + num(worst_spread) + " <= " + num(kDampingAbs));
  o.summary = "Table 2 upper bounds with damping robustness";
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto t = app::builtin_table(3);
  const auto rows = bounds_rows(t);
  double worst_lb = 0.0, worst_ub = 0.0, gap0 = NAN;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i].row;
    const auto& p = t.published[i];
    if (!r.gao_lb || !r.gao_ub) {
      o.require(false, "row " + full(p.sweep) + " failed: " + r.reason);
      continue;
    }
    worst_lb = std::max(worst_lb, rel(*r.gao_lb, p.lb));
    worst_ub = std::max(worst_ub, rel(*r.gao_ub, p.ub));
    if (p.sweep == 0.0) {
      gap0 = *r.gao_ub - *r.gao_lb;
      o.note("X0_12=0: LB " + full(*r.gao_lb) + " (published " + full(p.lb) + "), UB " + full(*r.gao_ub) +
             " (published " + full(p.ub) + ")");
    }
  }
  o.require(worst_lb <= kTable3LbRel, "max LB relative residual " + num(worst_lb) + " <= " + num(kTable3LbRel));
  o.require(worst_ub <= kUbRel, "max UB relative residual " + num(worst_ub) + " <= " + num(kUbRel));
  o.require(gap0 < kTable3GapAbs, "UB - LB at X0_12=0 " + num(gap0) + " < " + num(kTable3GapAbs));
  o.summary = "Table 3 bounds and bound gap";
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (int id : {4, 5}) {
    const auto t = app::builtin_table(id);
    const auto rows = app::run_rows(t.config, 1);
    write_divergence(t, rows);
    double worst_lb = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i].row;
      const auto& p = t.published[i];
      if (!r.gao_lb) {
        o.require(false, "table " + std::to_string(id) + " row " + full(p.sweep) + " failed: " + r.reason);
        continue;
      }
      worst_lb = std::max(worst_lb, rel(*r.gao_lb, p.lb));
      if (id == 5 && (p.sweep == 0.006 || p.sweep == 0.01)) {
        const std::string status = r.bracket_status.value_or("null");
        o.require(status == "FLAG", "table 5 Q12=" + full(p.sweep) + " bracket " + status + " (mc " +
                                        full(r.mc_estimate.value_or(NAN)) + " +- " + num(r.mc_se.value_or(NAN)) +
                                        ", ub " + full(*r.gao_ub) + ")");
      }
    }
    o.require(worst_lb <= kTables45LbRel,
              "table " + std::to_string(id) + " max LB relative residual " + num(worst_lb) + " <= " + num(kTables45LbRel));
    o.note("divergence report: " + report_dir + "/divergence_table" + std::to_string(id) + ".csv");
  }
  o.summary = "Tables 4 and 5 lower bounds, FLAG rows, divergence reports";
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (int id : app::builtin_table_ids()) {
    const auto t = app::builtin_table(id);
    double worst = 0.0;
    for (const auto& p : t.published) {
      const auto e = evaluate(t, p.sweep, MeasureConvention::forward);
      worst = std::max(worst, measure::bond_consistency(*e.model, e.curve, *e.law).max_residual);
    }
    o.require(worst <= kBondRel, "table " + std::to_string(id) + " models, all tenors: max residual " + num(worst) +
                                     " <= " + num(kBondRel));
  }
  o.summary = "bond consistency of the forward-measure laws";
  return o;
}

Outcome criterion6() {
  Outcome o;
  struct Case {
    int table;
    double sweep;
    long direct_n;
    long path_n;
  };
  for (const Case c : {Case{2, 0.0, 50000, 20000}, Case{3, 0.0, 20000, 20000}}) {
    const auto t = app::builtin_table(c.table);
    const auto e = evaluate(t, c.sweep, MeasureConvention::forward);
    mc::McConfig cfg;
    cfg.threads = 1;
    cfg.n_sims = c.direct_n;
    cfg.seed = 101;
    cfg.estimator = mc::Estimator::direct_terminal;
    const auto direct = mc::mc_gao_price(*e.model, e.curve, *e.law, cfg);
    cfg.n_sims = c.path_n;
    cfg.seed = 202;
    cfg.estimator = mc::Estimator::rn_path;
    const auto path = mc::mc_gao_price(*e.model, e.curve, *e.law, cfg);
    const double z = std::abs(direct.estimate - path.estimate) / std::hypot(direct.std_error, path.std_error);
    o.require(direct.used == mc::Estimator::direct_terminal && z <= kCombinedSe,
              "table " + std::to_string(c.table) + " row " + full(c.sweep) + ": direct " + full(direct.estimate) +
                  " +- " + num(direct.std_error) + " (" + std::to_string(c.direct_n) + "), rnpath " +
                  full(path.estimate) + " +- " + num(path.std_error) + " (" + std::to_string(c.path_n) + "), z " +
                  num(z) + " <= " + num(kCombinedSe));
  }
  o.summary = "direct vs path estimator agreement (forward measure)";
  return o;
}

Outcome criterion7() {
  Outcome o;
  double worst_order = -1e300, worst_call = -1e300, worst_mean = -1e300;
  int rows = 0;
  for (int id : app::builtin_table_ids()) {
    const auto t = app::builtin_table(id);
    for (const auto& p : t.published) {
      for (auto conv : {MeasureConvention::literal, MeasureConvention::forward}) {
        const auto e = evaluate(t, p.sweep, conv);
        const auto b = bounds::compute_bounds(*e.model, e.curve, *e.law, {}, t.config.bounds.rule);
        const double kp = e.curve.contract.basket_strike();
        worst_order = std::max(worst_order, b.lower - b.upper);
        worst_call = std::max({worst_call, std::max(b.e_geom - kp, 0.0) - b.fourier_call, b.fourier_call - b.e_geom});
        worst_mean = std::max(worst_mean, b.e_geom - b.e_arith);
        ++rows;
      }
    }
  }
  o.require(worst_order <= kOrderingTol, "max(LB - UB) " + num(worst_order) + " <= " + num(kOrderingTol));
  o.require(worst_call <= kCallTol, "call bracketing max violation " + num(worst_call) + " <= " + num(kCallTol));
  o.require(worst_mean <= 0.0, "max(E[G] - E[A]) " + num(worst_mean) + " <= 0");
  o.summary = "ordering invariants over " + std::to_string(rows) + " row/measure combinations";
  return o;
}

Outcome criterion8() {
  Outcome o;
  // Riccati closed forms vs RK4
  double worst_ric = 0.0;
  for (int id : app::builtin_table_ids()) {
    const auto t = app::builtin_table(id);
    const auto m = model_at(t, t.published.front().sweep);
    for (double tau : {1.0, 15.0, 34.0, 49.0}) {
      const auto a = m->riccati(tau, m->discount_loading());
      const auto b = m->riccati_ode(tau, m->discount_loading(), numerics::default_rk4_steps(tau));
      worst_ric = std::max({worst_ric, std::abs(a.phi - b.phi), (a.psi - b.psi).cwiseAbs().maxCoeff()});
    }
  }
  o.require(worst_ric <= kRiccatiTol, "Riccati vs RK4 max abs difference " + num(worst_ric) + " <= " + num(kRiccatiTol));

  Matrix rot(2, 2);
  rot << 0.0, M_PI, -M_PI, 0.0;
  const double rot_err = (numerics::matrix_exp(rot) + Matrix::Identity(2, 2)).cwiseAbs().maxCoeff();
  o.require(rot_err <= kRotationTol, "exp(pi J) = -I max entry error " + num(rot_err) + " <= " + num(kRotationTol));

  bool exact_one = true;
  double worst_z = 0.0, worst_halving = 0.0;
  for (int id : {2, 3}) {
    const auto t = app::builtin_table(id);
    for (auto conv : {MeasureConvention::literal, MeasureConvention::forward}) {
      const auto e = evaluate(t, 0.0, conv);
      const State zero = State::Zero(e.model->initial_state().rows(), e.model->initial_state().cols());
      exact_one = exact_one && e.law->laplace(zero) == 1.0 && e.law->transform(zero, Complex(0.5, 3.0)) == Complex(1.0);

      numerics::QuadratureRule half = t.config.bounds.rule;
      half.panel_width *= 0.5;
      const double kp = e.curve.contract.basket_strike();
      const double a = bounds::fourier_geometric_call(*e.law, e.curve, kp, {}, t.config.bounds.rule).value;
      const double b = bounds::fourier_geometric_call(*e.law, e.curve, kp, {}, half).value;
      worst_halving = std::max(worst_halving, std::abs(a - b));

      if (!e.law->has_sampler()) continue;
      const auto draws = mc::direct_draws(*e.law, kSamplerDraws, 77, 1);
      for (std::size_t k : {std::size_t{0}, std::size_t{16}, std::size_t{33}}) {
        const State& u = e.curve.tenor[k].psi;
        numerics::RunningStats s;
        for (const auto& x : draws) s.push(std::exp(-numerics::pairing(u, x)));
        worst_z = std::max(worst_z, std::abs(s.mean - e.law->laplace(u)) / s.std_error());
      }
    }
  }
  o.require(exact_one, "all transforms exactly 1 at the zero exponent");
  o.require(worst_z <= kSamplerSe, "sampler vs transform on " + std::to_string(kSamplerDraws) + " draws, max |z| " +
                                       num(worst_z) + " <= " + num(kSamplerSe));
  o.require(worst_halving <= kPanelHalvingTol,
            "Fourier call change when halving panel width " + num(worst_halving) + " <= " + num(kPanelHalvingTol));
  o.summary = "numerical kernel suite";
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::filesystem::create_directories(report_dir);
  const std::string a = report_dir + "/table2_run1.csv", b = report_dir + "/table2_run2.csv";
  const std::string args = " table --id 2 --sims 50000 --seed 7 --threads 4 --out ";
  const int rc1 = std::system((std::string(GAO_BINARY) + args + a).c_str());
  const int rc2 = std::system((std::string(GAO_BINARY) + args + b).c_str());
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string ca = slurp(a), cb = slurp(b);
  o.require(rc1 == 0 && rc2 == 0, "both runs exit 0");
  o.require(!ca.empty() && ca == cb, "outputs byte-identical (" + std::to_string(ca.size()) + " bytes)");
  o.summary = "reproducible table output";
  return o;
}

const std::vector<std::function<Outcome()>> kCriteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                         criterion6, criterion7, criterion8, criterion9};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (arg == "--report-dir" && i + 1 < argc) {
      report_dir = argv[++i];
    } else {
      std::cerr << "usage: acceptance [--criterion N] [--report-dir DIR]\n";
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(kCriteria.size())) {
    std::cerr << "criterion must be 1.." << kCriteria.size() << "\n";
    return 2;
  }
  bool all = true;
  for (std::size_t i = 0; i < kCriteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i + 1) != only) continue;
    Outcome o;
    try {
      o = kCriteria[i]();
    } catch (const std::exception& e) {
      o.passed = false;
      o.summary = std::string("exception: ") + e.what();
    }
    std::cout << (o.passed ? "PASS" : "FAIL") << "  criterion " << i + 1 << ": " << o.summary << '\n';
    for (const auto& d : o.details) std::cout << "      " << d << '\n';
    std::cout.flush();
    all = all && o.passed;
  }
  return all ? 0 : 1;
}
