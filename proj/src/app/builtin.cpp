#include "gao/app/builtin.hpp"

#include <cmath>

#include "gao/error.hpp"

namespace gao::app {

namespace {

const std::vector<PublishedRow> kTable2 = {
    {-0.300, -0.570960646515027, 0.153351236437789, 0.153431631010533, 0.216286630652776},
    {-0.100, -0.460513730466363, 0.181641413947461, 0.181871723226662, 0.243710313225013},
    {-0.070, -0.403426257094426, 0.187186872445969, 0.187285214852833, 0.249173899703122},
    {-0.060, -0.376271648827787, 0.189122188373390, 0.189373949402726, 0.251083730739797},
    {-0.050, -0.343007585286942, 0.191102351580502, 0.191474297920361, 0.253039217047040},
    {-0.040, -0.301756813619030, 0.193128263182051, 0.195421232722993, 0.255041205164633},
    {-0.030, -0.250041147986350, 0.195200853300304, 0.195132243321684, 0.257090572307459},
    {-0.020, -0.184739400604580, 0.197321081986930, 0.197531098187496, 0.259188227324353},
    {-0.010, -0.102346730178820, 0.199489940182500, 0.199619257104038, 0.261335111674878},
    {-0.001, -0.011167160239806, 0.201484335480591, 0.201710195921424, 0.263310203859562},
    {0.000, 0.0, 0.201708450715130, 0.201879045816498, 0.263532200435103},
    {0.001, 0.011370596893292, 0.201933073002533, 0.202090425152612, 0.263754709122691},
    {0.010, 0.122142590872118, 0.203977669339908, 0.204292134604299, 0.265780503352825},
    {0.020, 0.257493768936871, 0.206298685820891, 0.206369996912367, 0.268081065972310},
    {0.030, 0.391761086281179, 0.208672625057373, 0.208709896009824, 0.270434970824946},
    {0.040, 0.508145173072700, 0.211100648256358, 0.211180180724315, 0.272843338639536},
    {0.050, 0.596334605305204, 0.213583954153270, 0.213584231985838, 0.275307329501738},
    {0.060, 0.656025897318996, 0.216123780282872, 0.216228415988778, 0.277828143936307},
    {0.070, 0.693071640464574, 0.218721404302618, 0.218840241843838, 0.280407024005732},
    {0.100, 0.730953349866014, 0.226874471461256, 0.226934772658478, 0.288505131181583},
};

const std::vector<PublishedRow> kTable3 = {
    {-0.003, 0.734240363158475, 0.241898614923743, 0.241247798732840, 0.241898616247735},
    {-0.002, 0.489493575438983, 0.241133565561902, 0.240529742517039, 0.241133567256078},
    {-0.0015, 0.367120181579237, 0.240751892681841, 0.239890712272120, 0.240751894570155},
    {-0.0005, 0.122373393859746, 0.239990246464251, 0.239141473598451, 0.239990248759807},
    {0.0, 0.0, 0.239610271506445, 0.238621509824004, 0.239610274015476},
    {0.0005, -0.122373393859746, 0.239230860904335, 0.238198077279364, 0.239230863633664},
    {0.0015, -0.367120181579237, 0.238473729539084, 0.237679950746197, 0.238473732730283},
    {0.002, -0.489493575438983, 0.238096007164703, 0.237331879397777, 0.238096010597887},
    {0.003, -0.734240363158475, 0.237342245012764, 0.236699850447918, 0.237342248953105},
};

const std::vector<PublishedRow> kTable4 = {
    {-0.003, -0.004743383550130, 0.332948404889575, 0.341196353690094, 0.332948737923275},
    {-0.002, -0.003162255700087, 0.331667762094902, 0.340868095614857, 0.331668129236460},
    {-0.0015, -0.002371691775065, 0.331029148831226, 0.339651861654315, 0.331029534152954},
    {-0.0005, -0.000790563925022, 0.329755328754714, 0.339133498851769, 0.329755752815905},
    {0.0, 0.0, 0.329120118025352, 0.338246665341653, 0.329120562698337},
    {0.0005, 0.000790563925022, 0.328486037563152, 0.337667153845205, 0.328486503712013},
    {0.0015, 0.002371691775065, 0.327221259643971, 0.336913730200477, 0.327221771448801},
    {0.002, 0.003162255700087, 0.326590558297188, 0.336554330647556, 0.326591094339721},
    {0.003, 0.004743383550130, 0.325332521129667, 0.335045167150194, 0.325333108616048},
};

const std::vector<PublishedRow> kTable5 = {
    {-0.01, -0.294220967543866, 0.290016256883993, 0.290601398401997, 0.290593286187411},
    {-0.006, -0.244746787719492, 0.331837945818948, 0.332421093218907, 0.331843140669134},
    {-0.002, -0.109938939767707, 0.339526376457815, 0.344143066326585, 0.339526466816062},
    {0.002, 0.109938939767707, 0.308919593324378, 0.322579113504993, 0.308928343737340},
    {0.006, 0.244746787719492, 0.257040019380241, 0.274376988651895, 0.257891897298705},
    {0.01, 0.294220967543866, 0.196440417823759, 0.212744888444368, 0.204994244625801},
};

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

std::vector<double> sweep_of(const std::vector<PublishedRow>& rows) {
  std::vector<double> v;
  for (const auto& r : rows) v.push_back(r.sweep);
  return v;
}

}  // namespace

McirSpec mcir_table1_spec() {
  McirSpec s;
  s.factors = {{0.3731, 0.074484, 0.0452, 0.0510234}, {0.011, 0.245455, 0.0368, 0.0890707}, {0.01, 0.0013, 0.0015, 0.0004}};
  s.R = {1.0, 1.0, 0.0};
  s.M = {0.0, 0.0, 0.0};
  s.r_bar = -0.12332;
  s.mu_bar = 0.0;
  s.mortality_target = 0.0125;
  return s;
}

WishartSpec wishart_example_spec(int example) {
  WishartSpec s;
  s.beta = 3.0;
  s.H = mat2(-0.5, 0.4, 0.007, -0.008);
  s.R = mat2(1.0, 0.0, 0.0, 0.0);
  s.M = mat2(0.0, 0.0, 0.0, 1.0);
  s.r_bar = 0.04;
  s.mu_bar = 0.0;
  switch (example) {
    case 1:
      s.Q = mat2(0.06, -0.0006, -0.06, 0.006);
      s.x0 = mat2(0.01, 0.0, 0.0, 0.001);
      break;
    case 2:
      s.Q = mat2(0.06, 0.00001, 0.0002, 0.006);
      s.x0 = mat2(0.01, 0.0, 0.0, 0.001);
      break;
    case 3:
      s.Q = mat2(0.06, 0.0, 0.0, 0.006);
      s.x0 = mat2(0.01, 0.001, 0.001, 0.001);
      break;
    default:
      throw Error(ErrorKind::config, "wishart example must be 1, 2 or 3");
  }
  return s;
}

std::vector<int> builtin_table_ids() { return {2, 3, 4, 5}; }

BuiltinTable builtin_table(int id) {
  BuiltinTable t;
  t.id = id;
  RunConfig& c = t.config;
  c.measure = measure::MeasureConvention::literal;
  c.mc.seed = 1;
  c.mc.estimator = mc::Estimator::direct_terminal;
  c.mc.n_sims = 20000;
  switch (id) {
    case 2:
      t.title = "three-factor CIR, sweep over m2";
      t.published = kTable2;
      c.model = mcir_table1_spec();
      c.sweep = Sweep{SweepParameter::m2, sweep_of(kTable2)};
      c.mc.n_sims = 50000;
      break;
    case 3:
    case 4:
      t.title = std::string("Wishart example ") + (id == 3 ? "1" : "2") + ", sweep over X0_12";
      t.published = id == 3 ? kTable3 : kTable4;
      c.model = wishart_example_spec(id == 3 ? 1 : 2);
      c.sweep = Sweep{SweepParameter::x0_12, sweep_of(t.published)};
      break;
    case 5:
      t.title = "Wishart example 3, sweep over Q12";
      t.published = kTable5;
      c.model = wishart_example_spec(3);
      c.sweep = Sweep{SweepParameter::q12, sweep_of(kTable5)};
      break;
    default:
      throw Error(ErrorKind::config, "table id must be 2, 3, 4 or 5 (got " + std::to_string(id) + ")");
  }
  c.label = "table" + std::to_string(id);
  return t;
}

const PublishedRow* find_published(const BuiltinTable& t, double sweep) {
  for (const auto& r : t.published)
    if (std::abs(r.sweep - sweep) <= 1e-12) return &r;
  return nullptr;
}

}  // namespace gao::app
