#include "gao/measure/paths.hpp"

#include <cmath>
#include <random>

#include "gao/affine/cir.hpp"
#include "gao/affine/wishart.hpp"
#include "gao/error.hpp"
#include "gao/numerics/matrix_exp.hpp"
#include "gao/numerics/stats.hpp"
#include "gao/parallel.hpp"

namespace gao::measure {

namespace {

int step_count(double T, int steps_per_year) {
  if (steps_per_year < 50) throw Error(ErrorKind::invalid_argument, "path simulation needs at least 50 steps per year");
  return static_cast<int>(std::ceil(steps_per_year * T));
}

class CirPathSimulator final : public PathSimulator {
 public:
  CirPathSimulator(const affine::CirModel& m, double T, int steps_per_year)
      : factors_(m.factors()), u_(m.discount_loading().col(0)), shift_(m.shift()),
        steps_(step_count(T, steps_per_year)), h_(T / steps_) {}

  void simulate(Rng& rng, State& x_T, double& integral) const override {
    const auto p = static_cast<Eigen::Index>(factors_.size());
    std::normal_distribution<double> normal;
    Vector x(p);
    for (Eigen::Index j = 0; j < p; ++j) x(j) = factors_[j].x0;
    const double sqrt_h = std::sqrt(h_);
    double a_prev = rate(x);
    integral = 0.0;
    for (int s = 0; s < steps_; ++s) {
      for (Eigen::Index j = 0; j < p; ++j) {
        const auto& f = factors_[j];
        const double xp = std::max(x(j), 0.0);
        x(j) += f.k * (f.theta - xp) * h_ + f.sigma * std::sqrt(xp) * sqrt_h * normal(rng);
      }
      const double a = rate(x);
      integral += 0.5 * h_ * (a_prev + a);
      a_prev = a;
    }
    if (!x.allFinite() || !std::isfinite(integral)) throw Error(ErrorKind::numerical_blowup, "CIR path produced non-finite values");
    x_T = x.cwiseMax(0.0);
  }

 private:
  double rate(const Vector& x) const {
    double a = shift_;
    for (Eigen::Index j = 0; j < x.size(); ++j) a += u_(j) * std::max(x(j), 0.0);
    return a;
  }

  std::vector<affine::CirFactor> factors_;
  Vector u_;
  double shift_;
  int steps_;
  double h_;
};

template <class Mat>
class WishartPathSimulator final : public PathSimulator {
 public:
  WishartPathSimulator(const affine::WishartModel& m, double T, int steps_per_year)
      : H_(m.H()), Q_(m.Q()), x0_(m.initial_state()), L_(m.discount_loading()), shift_(m.shift()),
        steps_(step_count(T, steps_per_year)), h_(T / steps_) {
    drift_const_ = m.beta() * Q_.transpose() * Q_;
  }

  void simulate(Rng& rng, State& x_T, double& integral) const override {
    const Eigen::Index d = H_.rows();
    std::normal_distribution<double> normal;
    const double sqrt_h = std::sqrt(h_);
    Mat x = x0_;
    Mat root;
    Mat dw = Mat::Zero(d, d);
    Eigen::SelfAdjointEigenSolver<Mat> es;
    decompose(es, x);
    root = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
    double a_prev = shift_ + (L_ * x).trace();
    integral = 0.0;
    for (int s = 0; s < steps_; ++s) {
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) dw(i, j) = sqrt_h * normal(rng);
      const Mat noise = root * dw * Q_;
      Mat next = x + (drift_const_ + H_ * x + x * H_.transpose()) * h_ + noise + noise.transpose();
      next = 0.5 * (next + next.transpose()).eval();
      decompose(es, next);
      const auto ev = es.eigenvalues().cwiseMax(0.0).eval();
      x = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
      root = es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
      const double a = shift_ + (L_ * x).trace();
      integral += 0.5 * h_ * (a_prev + a);
      a_prev = a;
    }
    if (!x.allFinite() || !std::isfinite(integral))
      throw Error(ErrorKind::numerical_blowup, "Wishart path produced non-finite values");
    x_T = x;
  }

 private:
  static void decompose(Eigen::SelfAdjointEigenSolver<Mat>& es, const Mat& m) {
    if constexpr (Mat::RowsAtCompileTime == 2 || Mat::RowsAtCompileTime == 3)
      es.computeDirect(m);
    else
      es.compute(m);
  }

  Mat H_, Q_, x0_, L_, drift_const_;
  double shift_;
  int steps_;
  double h_;
};

// Integer beta >= d: X = sum_k Y_k Y_k' with independent OU vectors dY = H Y dt + Q' dB,
// which has the Wishart law. Transitions of Y are exact Gaussians.
template <int D>
class WishartFactorPathSimulator final : public PathSimulator {
  using Mat = Eigen::Matrix<double, D, D>;
  using Vec = Eigen::Matrix<double, D, 1>;

 public:
  WishartFactorPathSimulator(const affine::WishartModel& m, double T, int steps_per_year)
      : L_(m.discount_loading()), shift_(m.shift()), beta_(static_cast<int>(m.beta())),
        steps_(step_count(T, steps_per_year)), h_(T / steps_) {
    const Eigen::Index d = m.dim();
    // Van Loan: exp([[-H, Q'Q], [0, H']] h) = [[., F12], [0, F22]], e^{Hh} = F22', cov = F22' F12
    Matrix block = Matrix::Zero(2 * d, 2 * d);
    block.topLeftCorner(d, d) = -m.H();
    block.topRightCorner(d, d) = m.Q().transpose() * m.Q();
    block.bottomRightCorner(d, d) = m.H().transpose();
    const Matrix e = numerics::matrix_exp(h_ * block);
    const Matrix f22t = e.bottomRightCorner(d, d).transpose();
    transition_ = f22t;
    const Matrix cov = numerics::symmetrize(f22t * e.topRightCorner(d, d));
    Eigen::LLT<Matrix> llt(cov);
    if (llt.info() != Eigen::Success) throw Error(ErrorKind::numerical_blowup, "Wishart step covariance is not positive definite");
    chol_ = llt.matrixL();
    Eigen::SelfAdjointEigenSolver<Matrix> es(m.initial_state());
    for (Eigen::Index j = 0; j < d; ++j)
      start_.push_back(std::sqrt(std::max(es.eigenvalues()(j), 0.0)) * es.eigenvectors().col(j));
    while (static_cast<int>(start_.size()) < beta_) start_.push_back(Vec::Zero(d));
  }

  void simulate(Rng& rng, State& x_T, double& integral) const override {
    std::normal_distribution<double> normal;
    std::vector<Vec> y = start_;
    const Eigen::Index d = L_.rows();
    Vec z(d);
    double a_prev = rate(y);
    integral = 0.0;
    for (int s = 0; s < steps_; ++s) {
      for (auto& v : y) {
        for (Eigen::Index i = 0; i < d; ++i) z(i) = normal(rng);
        v = (transition_ * v + chol_ * z).eval();
      }
      const double a = rate(y);
      integral += 0.5 * h_ * (a_prev + a);
      a_prev = a;
    }
    Mat x = Mat::Zero(d, d);
    for (const auto& v : y) x += v * v.transpose();
    if (!x.allFinite() || !std::isfinite(integral))
      throw Error(ErrorKind::numerical_blowup, "Wishart path produced non-finite values");
    x_T = x;
  }

 private:
  double rate(const std::vector<Vec>& y) const {
    double a = shift_;
    for (const auto& v : y) a += v.dot(L_ * v);
    return a;
  }

  Mat transition_, chol_, L_;
  std::vector<Vec> start_;
  double shift_;
  int beta_;
  int steps_;
  double h_;
};

template <class Visit>
void run_blocks(const affine::AffineModel& model, double T, const PathConfig& cfg, Visit&& visit_block) {
  if (cfg.n_paths < 1) throw Error(ErrorKind::invalid_argument, "path simulation needs n_paths >= 1");
  const auto sim = make_path_simulator(model, T, cfg.steps_per_year);
  const long blocks = (cfg.n_paths + kPathsPerBlock - 1) / kPathsPerBlock;
  parallel_for(static_cast<std::size_t>(blocks), cfg.threads, [&](std::size_t b) {
    Rng rng = make_stream(cfg.seed, b);
    const long first = static_cast<long>(b) * kPathsPerBlock;
    const long count = std::min(kPathsPerBlock, cfg.n_paths - first);
    visit_block(b, first, count, *sim, rng);
  });
}

}  // namespace

std::unique_ptr<PathSimulator> make_path_simulator(const affine::AffineModel& model, double T, int steps_per_year) {
  if (!(T > 0.0)) throw Error(ErrorKind::invalid_argument, "path simulation needs T > 0");
  if (const auto* cir = dynamic_cast<const affine::CirModel*>(&model))
    return std::make_unique<CirPathSimulator>(*cir, T, steps_per_year);
  if (const auto* wis = dynamic_cast<const affine::WishartModel*>(&model)) {
    const bool factor_form = wis->beta() == std::floor(wis->beta()) && wis->beta() >= wis->dim();
    if (factor_form && wis->dim() == 2)
      return std::make_unique<WishartFactorPathSimulator<2>>(*wis, T, steps_per_year);
    if (factor_form) return std::make_unique<WishartFactorPathSimulator<Eigen::Dynamic>>(*wis, T, steps_per_year);
    if (wis->dim() == 2) return std::make_unique<WishartPathSimulator<Eigen::Matrix2d>>(*wis, T, steps_per_year);
    return std::make_unique<WishartPathSimulator<Eigen::MatrixXd>>(*wis, T, steps_per_year);
  }
  throw Error(ErrorKind::invalid_argument, "path simulation: unknown model family");
}

WeightedEstimate rn_path_expectation(const affine::AffineModel& model, double T,
                                     const std::function<double(const State&)>& payoff, const PathConfig& cfg) {
  if (cfg.n_paths < 100) throw Error(ErrorKind::invalid_argument, "rn_path_expectation needs n_paths >= 100");
  const double bond = model.szcb_price(T);
  const long blocks = (cfg.n_paths + kPathsPerBlock - 1) / kPathsPerBlock;
  std::vector<numerics::RunningStats> value(blocks), weight(blocks);
  run_blocks(model, T, cfg, [&](std::size_t b, long, long count, const PathSimulator& sim, Rng& rng) {
    State x;
    double integral = 0.0;
    for (long i = 0; i < count; ++i) {
      sim.simulate(rng, x, integral);
      const double w = std::exp(-integral) / bond;
      value[b].push(w * payoff(x));
      weight[b].push(w);
    }
  });
  numerics::RunningStats v, w;
  for (long b = 0; b < blocks; ++b) {
    v.merge(value[b]);
    w.merge(weight[b]);
  }
  WeightedEstimate out;
  out.estimate = v.mean;
  out.std_error = v.std_error();
  out.mean_weight = w.mean;
  out.weight_std_error = w.std_error();
  out.n = v.n;
  return out;
}

std::vector<WeightedDraw> rn_path_draws(const affine::AffineModel& model, double T, const PathConfig& cfg) {
  const double bond = model.szcb_price(T);
  std::vector<WeightedDraw> out(static_cast<std::size_t>(std::max(0L, cfg.n_paths)));
  run_blocks(model, T, cfg, [&](std::size_t, long first, long count, const PathSimulator& sim, Rng& rng) {
    double integral = 0.0;
    for (long i = 0; i < count; ++i) {
      WeightedDraw& d = out[static_cast<std::size_t>(first + i)];
      sim.simulate(rng, d.x, integral);
      d.weight = std::exp(-integral) / bond;
    }
  });
  return out;
}

}  // namespace gao::measure
