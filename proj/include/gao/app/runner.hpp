#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "gao/app/builtin.hpp"
#include "gao/app/config.hpp"
#include "gao/app/csv.hpp"
#include "gao/error.hpp"

namespace gao::app {

struct RowOutcome {
  ResultRow row;
  std::optional<bounds::BoundReport> bounds;
  std::optional<mc::McResult> mc;
  std::optional<ErrorKind> error;  // first failure while computing the row
};

/// Bounds (and Monte Carlo when cfg.mc.n_sims > 0) at one sweep point. Failures
/// are recorded in the row rather than thrown.
RowOutcome compute_row(const RunConfig& cfg, std::optional<double> sweep_value, unsigned mc_threads);

/// All sweep points, rows spread over `threads` workers. Output order and values
/// do not depend on the worker count.
std::vector<RowOutcome> run_rows(const RunConfig& cfg, unsigned threads);

std::vector<ResultRow> rows_of(const std::vector<RowOutcome>& outcomes);

/// Row-by-row comparison with the published table.
void write_divergence_report(std::ostream& out, const BuiltinTable& table, const std::vector<RowOutcome>& outcomes);

}  // namespace gao::app
