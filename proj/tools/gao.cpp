// gao: bounds and Monte Carlo prices for guaranteed annuity options under
// affine mortality/interest models.
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "gao/app/builtin.hpp"
#include "gao/app/config.hpp"
#include "gao/app/csv.hpp"
#include "gao/app/runner.hpp"
#include "gao/app/validate.hpp"
#include "gao/error.hpp"
#include "gao/parallel.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;
constexpr int kValidationFailed = 4;

struct Overrides {
  std::optional<double> delta, eta_max, panel_width;
  std::optional<int> quad_points, steps_per_year;
  std::optional<std::string> estimator, measure;
  std::optional<long> sims;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  bool timings = false;

  void add_to(CLI::App* cmd, bool with_mc_size) {
    cmd->add_option("--delta", delta, "Fourier damping parameter");
    cmd->add_option("--eta-max", eta_max, "Fourier integration cut-off");
    cmd->add_option("--panel-width", panel_width, "Gauss-Legendre panel width");
    cmd->add_option("--quad-points", quad_points, "Gauss-Legendre points per panel");
    cmd->add_option("--steps-per-year", steps_per_year, "time steps per year for rnpath");
    cmd->add_option("--estimator", estimator, "Monte Carlo estimator")->check(CLI::IsMember({"direct", "rnpath"}));
    cmd->add_option("--measure", measure, "law of X_T used for the bounds")->check(CLI::IsMember({"forward", "literal"}));
    cmd->add_option("--threads", threads, "worker threads (default: GAO_THREADS or all cores)");
    if (with_mc_size) {
      cmd->add_option("--sims", sims, "Monte Carlo sample size (0 disables)");
      cmd->add_option("--seed", seed, "Monte Carlo seed");
    }
  }

  void apply(gao::app::RunConfig& cfg) const {
    if (delta) cfg.bounds.damping.delta = *delta;
    if (eta_max) cfg.bounds.rule.eta_max = *eta_max;
    if (panel_width) cfg.bounds.rule.panel_width = *panel_width;
    if (quad_points) cfg.bounds.rule.points_per_panel = *quad_points;
    if (steps_per_year) cfg.mc.steps_per_year = *steps_per_year;
    if (estimator) cfg.mc.estimator = gao::mc::parse_estimator(*estimator);
    if (measure) cfg.measure = gao::measure::parse_convention(*measure);
    if (sims) cfg.mc.n_sims = *sims;
    if (seed) cfg.mc.seed = *seed;
    // re-run the config checks on the overridden values
    cfg = gao::app::parse_config(gao::app::to_json(cfg));
  }
};

int exit_code_for(gao::ErrorKind k) { return k == gao::ErrorKind::config ? kConfigError : kNumericalError; }

int emit_rows(const std::vector<gao::app::RowOutcome>& outcomes, const std::string& out_path, bool timings) {
  const auto rows = gao::app::rows_of(outcomes);
  if (out_path.empty()) {
    gao::app::write_csv(std::cout, rows, timings);
  } else {
    std::ofstream f(out_path);
    if (!f) throw gao::Error(gao::ErrorKind::config, "cannot write " + out_path);
    gao::app::write_csv(f, rows, timings);
  }
  for (const auto& o : outcomes)
    if (o.error) {
      std::cerr << "gao: row failed: " << o.row.reason << '\n';
      return exit_code_for(*o.error);
    }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds and Monte Carlo prices for guaranteed annuity options"};
  app.require_subcommand(1);

  Overrides price_ov, table_ov, validate_ov;
  std::string config_path, out_path, divergence_path;
  int table_id = 0;

  auto* price = app.add_subcommand("price", "price the contract(s) described by a JSON config");
  price->add_option("--config", config_path, "JSON config file")->required();
  price->add_option("--out", out_path, "CSV output file (default stdout)");
  price->add_flag("--timings", price_ov.timings, "append per-row wall times to the CSV");
  price_ov.add_to(price, true);

  auto* table = app.add_subcommand("table", "reproduce one of the built-in tables");
  table->add_option("--id", table_id, "table id")->required()->check(CLI::IsMember({2, 3, 4, 5}));
  table->add_option("--out", out_path, "CSV output file (default stdout)");
  table->add_option("--divergence", divergence_path, "write a comparison with the published values");
  table->add_flag("--timings", table_ov.timings, "append per-row wall times to the CSV");
  table_ov.add_to(table, true);

  auto* validate = app.add_subcommand("validate", "run model and numerics checks for a config");
  validate->add_option("--config", config_path, "JSON config file")->required();
  validate->add_option("--out", out_path, "JSON report file (default stdout)");
  validate_ov.add_to(validate, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (price->parsed()) {
      auto cfg = gao::app::load_config(config_path);
      price_ov.apply(cfg);
      const auto outcomes = gao::app::run_rows(cfg, gao::resolve_threads(price_ov.threads));
      return emit_rows(outcomes, out_path, price_ov.timings);
    }
    if (table->parsed()) {
      auto t = gao::app::builtin_table(table_id);
      table_ov.apply(t.config);
      const auto outcomes = gao::app::run_rows(t.config, gao::resolve_threads(table_ov.threads));
      if (!divergence_path.empty()) {
        std::ofstream f(divergence_path);
        if (!f) throw gao::Error(gao::ErrorKind::config, "cannot write " + divergence_path);
        gao::app::write_divergence_report(f, t, outcomes);
      }
      return emit_rows(outcomes, out_path, table_ov.timings);
    }
    auto cfg = gao::app::load_config(config_path);
    validate_ov.apply(cfg);
    gao::app::ValidateOptions opt;
    opt.threads = gao::resolve_threads(validate_ov.threads);
    const auto report = gao::app::run_validate(cfg, opt);
    const std::string text = report.to_json().dump(2);
    if (out_path.empty()) {
      std::cout << text << '\n';
    } else {
      std::ofstream f(out_path);
      if (!f) throw gao::Error(gao::ErrorKind::config, "cannot write " + out_path);
      f << text << '\n';
    }
    return report.passed() ? kOk : kValidationFailed;
  } catch (const gao::Error& e) {
    std::cerr << "gao: " << gao::to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "gao: " << e.what() << '\n';
    return kNumericalError;
  }
}
