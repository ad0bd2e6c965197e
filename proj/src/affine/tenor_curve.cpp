#include "gao/affine/tenor_curve.hpp"

#include <cmath>

#include "gao/error.hpp"

namespace gao::affine {

double AffineModel::szcb_price(double tau, const State& x) const {
  if (tau < 0.0) throw Error(ErrorKind::invalid_argument, "szcb_price: tau must be >= 0");
  if (tau == 0.0) return 1.0;
  const RiccatiSolution rs = discount_riccati(tau);
  return std::exp(-shift() * tau - rs.phi - numerics::pairing(rs.psi, x));
}

State TenorCurve::psi_sum() const {
  State sum = State::Zero(maturity.psi.rows(), maturity.psi.cols());
  for (const auto& t : tenor) sum += t.psi;
  return sum;
}

double TenorCurve::log_geometric_s0() const {
  double acc = 0.0;
  for (double s : s0) acc += std::log(s);
  return acc / static_cast<double>(s0.size());
}

TenorCurve tenor_curve(const AffineModel& model, const ContractSpec& contract) {
  if (contract.n < 2) throw Error(ErrorKind::invalid_argument, "tenor_curve: n must be >= 2");
  TenorCurve c;
  c.contract = contract;
  c.shift = model.shift();
  c.maturity = model.discount_riccati(contract.T);
  c.szcb_T = std::exp(-c.shift * contract.T - c.maturity.phi -
                      numerics::pairing(c.maturity.psi, model.initial_state()));
  c.tenor.reserve(contract.tenors());
  c.s0.reserve(contract.tenors());
  for (int i = 1; i <= contract.tenors(); ++i) {
    c.tenor.push_back(model.discount_riccati(i));
    c.s0.push_back(std::exp(-(c.shift * i + c.tenor.back().phi)));
  }
  return c;
}

}  // namespace gao::affine
