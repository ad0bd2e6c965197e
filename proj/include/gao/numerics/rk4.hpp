#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "gao/error.hpp"

namespace gao::numerics {

/// Fixed step count used for Riccati-type ODEs over a horizon.
inline int default_rk4_steps(double horizon) {
  return std::max(200, static_cast<int>(std::ceil(200.0 * std::abs(horizon))));
}

namespace detail {
inline bool finite_state(double y) { return std::isfinite(y); }
template <class Derived>
bool finite_state(const Eigen::DenseBase<Derived>& y) {
  return y.derived().allFinite();
}
}  // namespace detail

/// Classical RK4 from t0 to t1 in `steps` equal steps (t1 < t0 integrates backwards).
/// State is double or any Eigen dense type; deriv(t, y) returns dy/dt.
template <class State, class Deriv>
State rk4_integrate(Deriv&& deriv, double t0, double t1, State y, int steps) {
  if (steps < 1) throw Error(ErrorKind::invalid_argument, "rk4_integrate: steps must be >= 1");
  const double h = (t1 - t0) / steps;
  for (int i = 0; i < steps; ++i) {
    const double t = t0 + i * h;
    const State k1 = deriv(t, y);
    const State k2 = deriv(t + 0.5 * h, State(y + (0.5 * h) * k1));
    const State k3 = deriv(t + 0.5 * h, State(y + (0.5 * h) * k2));
    const State k4 = deriv(t + h, State(y + h * k3));
    y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!detail::finite_state(y)) {
      throw Error(ErrorKind::numerical_blowup,
                  "rk4_integrate: non-finite state at step " + std::to_string(i + 1) + " (t=" +
                      std::to_string(t + h) + ")");
    }
  }
  return y;
}

}  // namespace gao::numerics
