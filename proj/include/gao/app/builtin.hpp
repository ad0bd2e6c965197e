#pragma once

#include <string>
#include <vector>

#include "gao/app/config.hpp"

namespace gao::app {

/// A published row: sweep value, initial correlation, lower bound, Monte Carlo
/// estimate, upper bound.
struct PublishedRow {
  double sweep = 0.0;
  double rho = 0.0;
  double lb = 0.0;
  double mc = 0.0;
  double ub = 0.0;
};

struct BuiltinTable {
  int id = 0;
  std::string title;
  RunConfig config;  // literal measure, sweep set, Monte Carlo enabled
  std::vector<PublishedRow> published;
};

/// Tables 2 (three-factor CIR, m2 sweep), 3 and 4 (Wishart, X0_12 sweep) and
/// 5 (Wishart, Q12 sweep). Throws Error(config) for other ids.
BuiltinTable builtin_table(int id);
std::vector<int> builtin_table_ids();

/// Published row for a sweep value, if any (matched to 1e-12).
const PublishedRow* find_published(const BuiltinTable& t, double sweep);

/// Base model specs used by the tables.
McirSpec mcir_table1_spec();
WishartSpec wishart_example_spec(int example);  // 1, 2 or 3

}  // namespace gao::app
