#include "gao/app/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "gao/error.hpp"

namespace gao::app {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::config, path + ": " + what);
}

// Object view that remembers which keys were read so leftovers can be rejected.
class Fields {
 public:
  Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  bool has(const std::string& key) const { return j_.contains(key); }

  const json& get(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) fail(at(key), "missing required key");
    return j_.at(key);
  }
  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  double number(const std::string& key) { return as_number(get(key), at(key)); }
  double number_or(const std::string& key, double fallback) {
    const json* v = find(key);
    return v ? as_number(*v, at(key)) : fallback;
  }
  long integer_or(const std::string& key, long fallback) {
    const json* v = find(key);
    return v ? as_integer(*v, at(key)) : fallback;
  }
  std::string string_or(const std::string& key, const std::string& fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_string()) fail(at(key), "expected a string");
    return v->get<std::string>();
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) fail(at(it.key()), "unknown key");
  }

  static double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path, "must be finite");
    return d;
  }
  static long as_integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<long>();
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::vector<double> number_list(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(Fields::as_number(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Matrix square_matrix(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) fail(path, "expected a non-empty array of rows");
  const std::size_t d = v.size();
  Matrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    const auto row = number_list(v[i], row_path);
    if (row.size() != d) fail(row_path, "expected " + std::to_string(d) + " entries (square matrix)");
    for (std::size_t k = 0; k < d; ++k) m(i, k) = row[k];
  }
  return m;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

McirSpec parse_mcir(Fields& f) {
  McirSpec s;
  const json& factors = f.get("factors");
  if (!factors.is_array() || factors.empty()) fail(f.at("factors"), "expected a non-empty array");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    Fields ff(factors[i], f.at("factors") + "[" + std::to_string(i) + "]");
    affine::CirFactor c;
    c.k = ff.number("k");
    c.theta = ff.number("theta");
    c.sigma = ff.number("sigma");
    c.x0 = ff.number("x0");
    ff.finish();
    s.factors.push_back(c);
  }
  const std::size_t p = s.factors.size();
  s.R = number_list(f.get("R"), f.at("R"));
  if (s.R.size() != p) fail(f.at("R"), "expected " + std::to_string(p) + " entries");
  s.r_bar = f.number("r_bar");
  s.mu_bar = f.number_or("mu_bar", 0.0);
  if (const json* t = f.find("mortality_target")) s.mortality_target = Fields::as_number(*t, f.at("mortality_target"));

  const json& m = f.get("M");
  if (!m.is_array() || m.size() != p) fail(f.at("M"), "expected " + std::to_string(p) + " entries");
  for (std::size_t i = 0; i < p; ++i) {
    const std::string path = f.at("M") + "[" + std::to_string(i) + "]";
    if (m[i].is_null()) {
      if (i + 1 != p || !s.mortality_target) fail(path, "null is only allowed for the last entry with mortality_target");
      s.M.push_back(0.0);
    } else {
      if (i + 1 == p && s.mortality_target) fail(path, "must be null when mortality_target is set (it is solved for)");
      s.M.push_back(Fields::as_number(m[i], path));
    }
  }
  return s;
}

WishartSpec parse_wishart(Fields& f) {
  WishartSpec s;
  s.beta = f.number("beta");
  s.H = square_matrix(f.get("H"), f.at("H"));
  const Eigen::Index d = s.H.rows();
  auto same = [&](const char* key) {
    Matrix m = square_matrix(f.get(key), f.at(key));
    if (m.rows() != d) fail(f.at(key), "expected " + std::to_string(d) + "x" + std::to_string(d) + " like H");
    return m;
  };
  s.Q = same("Q");
  s.x0 = same("x0");
  s.R = same("R");
  s.M = same("M");
  s.r_bar = f.number("r_bar");
  s.mu_bar = f.number_or("mu_bar", 0.0);
  return s;
}

SweepParameter parse_sweep_parameter(const std::string& s, const std::string& path) {
  if (s == "m2") return SweepParameter::m2;
  if (s == "X0_12" || s == "x0_12") return SweepParameter::x0_12;
  if (s == "Q12" || s == "q12") return SweepParameter::q12;
  fail(path, "expected \"m2\", \"X0_12\" or \"Q12\" (got \"" + s + "\")");
}

}  // namespace

const char* to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::m2: return "m2";
    case SweepParameter::x0_12: return "X0_12";
    case SweepParameter::q12: return "Q12";
  }
  return "?";
}

RunConfig parse_config(const json& j) {
  Fields root(j, "");
  RunConfig cfg;
  cfg.label = root.string_or("label", "");

  {
    Fields m(root.get("model"), "model");
    const std::string type = m.get("type").is_string() ? m.get("type").get<std::string>() : "";
    if (type == "mcir") {
      cfg.model = parse_mcir(m);
    } else if (type == "wishart") {
      cfg.model = parse_wishart(m);
    } else {
      fail("model.type", "expected \"mcir\" or \"wishart\"");
    }
    m.finish();
  }

  if (const json* c = root.find("contract")) {
    Fields f(*c, "contract");
    const double g = f.number_or("g", 0.111);
    const long T = f.integer_or("T", 15);
    const long n = f.integer_or("n", 35);
    f.finish();
    if (!(g > 0.0 && g < 1.0)) fail("contract.g", "must lie in (0, 1)");
    if (T < 1) fail("contract.T", "must be >= 1");
    if (n < 2) fail("contract.n", "must be >= 2");
    cfg.contract = affine::ContractSpec::make(g, static_cast<int>(T), static_cast<int>(n));
  }

  if (const json* v = root.find("measure")) {
    if (!v->is_string()) fail("measure", "expected \"forward\" or \"literal\"");
    try {
      cfg.measure = measure::parse_convention(v->get<std::string>());
    } catch (const Error& e) {
      fail("measure", e.what());
    }
  }

  if (const json* b = root.find("bounds")) {
    Fields f(*b, "bounds");
    cfg.bounds.damping.delta = f.number_or("delta", cfg.bounds.damping.delta);
    cfg.bounds.rule.panel_width = f.number_or("panel_width", cfg.bounds.rule.panel_width);
    cfg.bounds.rule.points_per_panel = static_cast<int>(f.integer_or("quad_points", cfg.bounds.rule.points_per_panel));
    cfg.bounds.rule.eta_max = f.number_or("eta_max", cfg.bounds.rule.eta_max);
    cfg.bounds.rule.tail_tol = f.number_or("tail_tol", cfg.bounds.rule.tail_tol);
    f.finish();
    if (!(cfg.bounds.damping.delta > 0.0)) fail("bounds.delta", "must be > 0");
    try {
      cfg.bounds.rule.validate();
    } catch (const Error& e) {
      fail("bounds", e.what());
    }
  }

  if (const json* m = root.find("mc")) {
    Fields f(*m, "mc");
    cfg.mc.n_sims = f.integer_or("n_sims", 0);
    const long seed = f.integer_or("seed", 1);
    if (seed < 0) fail("mc.seed", "must be >= 0");
    cfg.mc.seed = static_cast<std::uint64_t>(seed);
    try {
      cfg.mc.estimator = mc::parse_estimator(f.string_or("estimator", "direct"));
    } catch (const Error& e) {
      fail("mc.estimator", e.what());
    }
    cfg.mc.steps_per_year = static_cast<int>(f.integer_or("steps_per_year", 200));
    f.finish();
    if (cfg.mc.n_sims != 0 && cfg.mc.n_sims < 100) fail("mc.n_sims", "must be 0 (disabled) or >= 100");
    if (cfg.mc.steps_per_year < 50) fail("mc.steps_per_year", "must be >= 50");
  }

  if (const json* s = root.find("sweep")) {
    Fields f(*s, "sweep");
    Sweep sw;
    const json& p = f.get("parameter");
    if (!p.is_string()) fail("sweep.parameter", "expected a string");
    sw.parameter = parse_sweep_parameter(p.get<std::string>(), "sweep.parameter");
    sw.values = number_list(f.get("values"), "sweep.values");
    f.finish();
    if (sw.values.empty()) fail("sweep.values", "must not be empty");
    const bool mcir = std::holds_alternative<McirSpec>(cfg.model);
    if (mcir && sw.parameter != SweepParameter::m2) fail("sweep.parameter", "mcir models only sweep m2");
    if (!mcir && sw.parameter == SweepParameter::m2) fail("sweep.parameter", "wishart models sweep X0_12 or Q12");
    if (mcir && std::get<McirSpec>(cfg.model).factors.size() < 2) fail("sweep.parameter", "m2 needs at least two factors");
    if (!mcir && std::get<WishartSpec>(cfg.model).H.rows() < 2) fail("sweep.parameter", "needs a model of dimension >= 2");
    cfg.sweep = sw;
  }

  root.finish();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::config, "cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::config, path + ": invalid JSON: " + e.what());
  }
  return parse_config(j);
}

json to_json(const RunConfig& cfg) {
  json j;
  if (!cfg.label.empty()) j["label"] = cfg.label;
  if (const auto* m = std::get_if<McirSpec>(&cfg.model)) {
    json f = json::array();
    for (const auto& c : m->factors) f.push_back({{"k", c.k}, {"theta", c.theta}, {"sigma", c.sigma}, {"x0", c.x0}});
    json M(m->M);
    if (m->mortality_target) M.back() = nullptr;
    j["model"] = {{"type", "mcir"}, {"factors", f}, {"R", m->R}, {"M", M}, {"r_bar", m->r_bar}, {"mu_bar", m->mu_bar}};
    if (m->mortality_target) j["model"]["mortality_target"] = *m->mortality_target;
  } else {
    const auto& w = std::get<WishartSpec>(cfg.model);
    j["model"] = {{"type", "wishart"}, {"beta", w.beta},        {"H", matrix_json(w.H)}, {"Q", matrix_json(w.Q)},
                  {"x0", matrix_json(w.x0)}, {"R", matrix_json(w.R)}, {"M", matrix_json(w.M)}, {"r_bar", w.r_bar},
                  {"mu_bar", w.mu_bar}};
  }
  j["contract"] = {{"g", cfg.contract.g}, {"T", cfg.contract.T}, {"n", cfg.contract.n}};
  j["measure"] = measure::to_string(cfg.measure);
  j["bounds"] = {{"delta", cfg.bounds.damping.delta},
                 {"panel_width", cfg.bounds.rule.panel_width},
                 {"quad_points", cfg.bounds.rule.points_per_panel},
                 {"eta_max", cfg.bounds.rule.eta_max},
                 {"tail_tol", cfg.bounds.rule.tail_tol}};
  j["mc"] = {{"n_sims", cfg.mc.n_sims},
             {"seed", cfg.mc.seed},
             {"estimator", mc::to_string(cfg.mc.estimator)},
             {"steps_per_year", cfg.mc.steps_per_year}};
  if (cfg.sweep) j["sweep"] = {{"parameter", to_string(cfg.sweep->parameter)}, {"values", cfg.sweep->values}};
  return j;
}

std::unique_ptr<affine::AffineModel> build_model(const RunConfig& cfg, std::optional<double> sweep_value) {
  const SweepParameter param = cfg.sweep ? cfg.sweep->parameter : SweepParameter::m2;
  try {
    if (const auto* s = std::get_if<McirSpec>(&cfg.model)) {
      const Eigen::Index p = static_cast<Eigen::Index>(s->factors.size());
      Vector R = Eigen::Map<const Vector>(s->R.data(), p);
      Vector M = Eigen::Map<const Vector>(s->M.data(), p);
      if (sweep_value) M(1) = *sweep_value;
      if (s->mortality_target) {
        M(p - 1) = 0.0;
        const affine::CirModel base(s->factors, R, M, s->r_bar, s->mu_bar);
        M(p - 1) = affine::calibrate_last_mortality_loading(base, *s->mortality_target, cfg.contract.T);
      }
      return std::make_unique<affine::CirModel>(s->factors, R, M, s->r_bar, s->mu_bar);
    }
    WishartSpec w = std::get<WishartSpec>(cfg.model);
    if (sweep_value) {
      Matrix& target = param == SweepParameter::q12 ? w.Q : w.x0;
      target(0, 1) = target(1, 0) = *sweep_value;
    }
    return std::make_unique<affine::WishartModel>(w.beta, w.H, w.Q, w.x0, w.R, w.M, w.r_bar, w.mu_bar);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::config) throw;
    std::string where = "model";
    if (sweep_value) where += " at " + std::string(to_string(param)) + "=" + std::to_string(*sweep_value);
    throw Error(ErrorKind::config, where + ": " + e.what());
  }
}

std::vector<std::optional<double>> sweep_points(const RunConfig& cfg) {
  if (!cfg.sweep) return {std::nullopt};
  return {cfg.sweep->values.begin(), cfg.sweep->values.end()};
}

}  // namespace gao::app
