#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gao::app {

/// One output line. Empty optionals are written as `null`.
struct ResultRow {
  std::optional<double> sweep_value;
  std::optional<double> rho0;
  std::optional<double> gao_lb;
  std::optional<double> mc_estimate;
  std::optional<double> mc_se;
  std::optional<double> gao_ub;
  std::optional<double> lb_rel_diff;  // |bound - mc| / mc
  std::optional<double> ub_rel_diff;
  std::optional<std::string> bracket_status;  // PASS / FLAG
  std::string reason;                         // why fields are null, warnings
  // only written with timings enabled
  double bounds_seconds = 0.0;
  double mc_seconds = 0.0;
};

/// Shortest decimal string that parses back to exactly x.
std::string format_double(double x);

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool with_timings = false);
std::vector<ResultRow> read_csv(std::istream& in);

}  // namespace gao::app
