#include "gao/app/runner.hpp"

#include <chrono>
#include <cmath>
#include <ostream>

#include "gao/parallel.hpp"

namespace gao::app {

namespace {

void append(std::string& reason, const std::string& text) {
  if (text.empty()) return;
  if (!reason.empty()) reason += "; ";
  reason += text;
}

std::string describe(const Error& e) { return std::string(to_string(e.kind())) + ": " + e.what(); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string cell(double x) { return std::isfinite(x) ? format_double(x) : "null"; }

}  // namespace

RowOutcome compute_row(const RunConfig& cfg, std::optional<double> sweep_value, unsigned mc_threads) {
  RowOutcome out;
  ResultRow& row = out.row;
  row.sweep_value = sweep_value;
  auto fail = [&](const Error& e) {
    if (!out.error) out.error = e.kind();
    append(row.reason, describe(e));
  };

  std::unique_ptr<affine::AffineModel> model;
  std::optional<affine::TenorCurve> curve;
  std::unique_ptr<measure::TerminalLaw> law;
  try {
    model = build_model(cfg, sweep_value);
    curve = affine::tenor_curve(*model, cfg.contract);
    law = measure::checked_terminal_law(*model, *curve, cfg.measure);
  } catch (const Error& e) {
    fail(e);
    return out;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    out.bounds = bounds::compute_bounds(*model, *curve, *law, cfg.bounds.damping, cfg.bounds.rule);
    const auto& b = *out.bounds;
    row.gao_lb = b.lower;
    row.gao_ub = b.upper;
    if (std::isfinite(b.rho0)) row.rho0 = b.rho0;
    for (const auto& w : b.warnings) append(row.reason, w);
  } catch (const Error& e) {
    fail(e);
  }
  row.bounds_seconds = seconds_since(t0);

  if (cfg.mc.n_sims > 0) {
    try {
      mc::McConfig mc_cfg;
      mc_cfg.n_sims = cfg.mc.n_sims;
      mc_cfg.seed = cfg.mc.seed;
      mc_cfg.estimator = cfg.mc.estimator;
      mc_cfg.steps_per_year = cfg.mc.steps_per_year;
      mc_cfg.threads = mc_threads;
      out.mc = mc::mc_gao_price(*model, *curve, *law, mc_cfg);
      row.mc_estimate = out.mc->estimate;
      row.mc_se = out.mc->std_error;
      row.mc_seconds = out.mc->wall_time_seconds;
      append(row.reason, out.mc->warning);
      if (row.gao_lb && out.mc->estimate != 0.0) {
        row.lb_rel_diff = std::abs(*row.gao_lb - out.mc->estimate) / out.mc->estimate;
        row.ub_rel_diff = std::abs(*row.gao_ub - out.mc->estimate) / out.mc->estimate;
      }
      if (row.gao_lb && row.gao_ub) {
        const auto br = mc::mc_bracket_check(*row.gao_lb, *row.gao_ub, *out.mc);
        row.bracket_status = mc::to_string(br.status);
        append(row.reason, br.detail);
      }
    } catch (const Error& e) {
      fail(e);
    }
  } else {
    append(row.reason, "monte carlo disabled");
  }
  return out;
}

std::vector<RowOutcome> run_rows(const RunConfig& cfg, unsigned threads) {
  const auto points = sweep_points(cfg);
  const unsigned workers = std::max(1u, threads);
  // Spare workers go to the Monte Carlo blocks of each row.
  const unsigned inner = std::max<unsigned>(1, workers / static_cast<unsigned>(points.size()));
  std::vector<RowOutcome> out(points.size());
  parallel_for(points.size(), workers, [&](std::size_t i) { out[i] = compute_row(cfg, points[i], inner); });
  return out;
}

std::vector<ResultRow> rows_of(const std::vector<RowOutcome>& outcomes) {
  std::vector<ResultRow> rows;
  for (const auto& o : outcomes) rows.push_back(o.row);
  return rows;
}

void write_divergence_report(std::ostream& out, const BuiltinTable& table, const std::vector<RowOutcome>& outcomes) {
  out << "sweep_value,published_rho,rho0,rho_abs_diff,published_lb,gao_lb,lb_rel_diff,published_ub,gao_ub,"
         "ub_rel_diff,published_mc,mc_estimate,mc_se,mc_z_vs_published,published_mc_within_bounds,bracket_status\n";
  const double nan = std::nan("");
  for (const auto& o : outcomes) {
    const auto& r = o.row;
    const PublishedRow* p = r.sweep_value ? find_published(table, *r.sweep_value) : nullptr;
    const double lb = r.gao_lb.value_or(nan), ub = r.gao_ub.value_or(nan), rho = r.rho0.value_or(nan);
    const double mc = r.mc_estimate.value_or(nan), se = r.mc_se.value_or(nan);
    out << cell(r.sweep_value.value_or(nan)) << ',';
    if (p) {
      const bool within = std::isfinite(lb) && std::isfinite(ub) && p->mc >= lb && p->mc <= ub;
      out << cell(p->rho) << ',' << cell(rho) << ',' << cell(std::abs(rho - p->rho)) << ',' << cell(p->lb) << ','
          << cell(lb) << ',' << cell((lb - p->lb) / p->lb) << ',' << cell(p->ub) << ',' << cell(ub) << ','
          << cell((ub - p->ub) / p->ub) << ',' << cell(p->mc) << ',' << cell(mc) << ',' << cell(se) << ','
          << cell((mc - p->mc) / se) << ',' << (std::isfinite(lb) ? (within ? "yes" : "no") : "null") << ',';
    } else {
      out << "null," << cell(rho) << ",null,null," << cell(lb) << ",null,null," << cell(ub) << ",null,null," << cell(mc)
          << ',' << cell(se) << ",null,null,";
    }
    out << r.bracket_status.value_or("null") << '\n';
  }
}

}  // namespace gao::app
