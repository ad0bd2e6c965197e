#include "gao/affine/contract.hpp"

#include <cmath>

#include "gao/error.hpp"

namespace gao::affine {

ContractSpec ContractSpec::make(double g, int T, int n) {
  if (!(g > 0.0) || !std::isfinite(g)) throw Error(ErrorKind::invalid_argument, "contract: g must be > 0");
  if (T < 1) throw Error(ErrorKind::invalid_argument, "contract: T must be a positive integer");
  if (n < 2) throw Error(ErrorKind::invalid_argument, "contract: n must be >= 2");
  ContractSpec c;
  c.g = g;
  c.T = T;
  c.n = n;
  c.K = 1.0 / g;
  return c;
}

}  // namespace gao::affine
