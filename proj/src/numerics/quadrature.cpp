#include "gao/numerics/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "gao/error.hpp"

namespace gao::numerics {

void QuadratureRule::validate() const {
  if (!(panel_width > 0.0)) throw Error(ErrorKind::invalid_argument, "quadrature: panel_width must be > 0");
  if (points_per_panel < 2) throw Error(ErrorKind::invalid_argument, "quadrature: points_per_panel must be >= 2");
  if (!(eta_max > 0.0)) throw Error(ErrorKind::invalid_argument, "quadrature: eta_max must be > 0");
  if (!(tail_tol > 0.0)) throw Error(ErrorKind::invalid_argument, "quadrature: tail_tol must be > 0");
}

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "gauss_legendre: n must be >= 1");
  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) <= 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    gl.nodes[i] = -z;
    gl.nodes[n - 1 - i] = z;
    gl.weights[i] = w;
    gl.weights[n - 1 - i] = w;
  }
  return gl;
}

QuadratureResult integrate_semi_infinite(const std::function<std::complex<double>(double)>& f,
                                         const QuadratureRule& rule) {
  rule.validate();
  const GaussLegendre gl = gauss_legendre(rule.points_per_panel);
  const double half = 0.5 * rule.panel_width;

  QuadratureResult out;
  std::complex<double> total = 0.0;
  double a = 0.0;
  while (a < rule.eta_max) {
    const double mid = a + half;
    std::complex<double> panel = 0.0;
    double panel_abs = 0.0;
    for (int j = 0; j < rule.points_per_panel; ++j) {
      const std::complex<double> v = f(mid + half * gl.nodes[j]);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw Error(ErrorKind::quadrature_failure,
                    "integrand is not finite at eta=" + std::to_string(mid + half * gl.nodes[j]));
      }
      panel += gl.weights[j] * v;
      panel_abs += gl.weights[j] * std::abs(v);
    }
    total += half * panel;
    out.last_panel_abs = half * panel_abs;
    ++out.panels;
    a += rule.panel_width;
    if (out.last_panel_abs < rule.tail_tol) break;
  }
  out.value = total;
  out.eta_reached = a;
  out.tail_warning = out.last_panel_abs >= rule.tail_tol;
  return out;
}

}  // namespace gao::numerics
