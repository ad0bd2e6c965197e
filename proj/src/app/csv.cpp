#include "gao/app/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "gao/error.hpp"

namespace gao::app {

namespace {

constexpr const char* kHeader =
    "sweep_value,rho0,gao_lb,mc_estimate,mc_se,gao_ub,lb_rel_diff,ub_rel_diff,bracket_status,reason";

std::string cell(const std::optional<double>& v) {
  return v && std::isfinite(*v) ? format_double(*v) : "null";
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

std::optional<double> parse_cell(const std::string& s) {
  if (s == "null") return std::nullopt;
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::invalid_argument, "csv: bad number \"" + s + "\"");
  return v;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool with_timings) {
  out << kHeader;
  if (with_timings) out << ",bounds_seconds,mc_seconds";
  out << '\n';
  for (const auto& r : rows) {
    out << cell(r.sweep_value) << ',' << cell(r.rho0) << ',' << cell(r.gao_lb) << ',' << cell(r.mc_estimate) << ','
        << cell(r.mc_se) << ',' << cell(r.gao_ub) << ',' << cell(r.lb_rel_diff) << ',' << cell(r.ub_rel_diff) << ','
        << (r.bracket_status ? *r.bracket_status : "null") << ',' << quote(r.reason);
    if (with_timings) out << ',' << format_double(r.bounds_seconds) << ',' << format_double(r.mc_seconds);
    out << '\n';
  }
}

std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind(kHeader, 0) != 0)
    throw Error(ErrorKind::invalid_argument, "csv: missing or unexpected header");
  const bool timings = line.size() > std::string(kHeader).size();
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c = split_line(line);
    if (c.size() != (timings ? 12u : 10u)) throw Error(ErrorKind::invalid_argument, "csv: wrong column count");
    ResultRow r;
    r.sweep_value = parse_cell(c[0]);
    r.rho0 = parse_cell(c[1]);
    r.gao_lb = parse_cell(c[2]);
    r.mc_estimate = parse_cell(c[3]);
    r.mc_se = parse_cell(c[4]);
    r.gao_ub = parse_cell(c[5]);
    r.lb_rel_diff = parse_cell(c[6]);
    r.ub_rel_diff = parse_cell(c[7]);
    if (c[8] != "null") r.bracket_status = c[8];
    r.reason = c[9];
    if (timings) {
      r.bounds_seconds = parse_cell(c[10]).value_or(0.0);
      r.mc_seconds = parse_cell(c[11]).value_or(0.0);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace gao::app
