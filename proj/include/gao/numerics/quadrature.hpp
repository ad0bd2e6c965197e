#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace gao::numerics {

struct QuadratureRule {
  double panel_width = 5.0;
  int points_per_panel = 64;
  // Upper cut-off only; the tail rule normally stops far earlier. Slowly decaying
  // integrands (tiny terminal variance) need several thousand units.
  double eta_max = 50000.0;
  double tail_tol = 1e-12;

  void validate() const;
};

struct QuadratureResult {
  std::complex<double> value;
  double eta_reached = 0.0;
  double last_panel_abs = 0.0;  // integral of |f| over the last panel
  int panels = 0;
  bool tail_warning = false;  // eta_max reached before the tail rule fired
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n);

/// Integral of f over [0, inf): Gauss-Legendre panels from 0 until the panel's
/// integral of |f| drops below tail_tol or eta_max is reached.
QuadratureResult integrate_semi_infinite(const std::function<std::complex<double>(double)>& f,
                                         const QuadratureRule& rule);

}  // namespace gao::numerics
