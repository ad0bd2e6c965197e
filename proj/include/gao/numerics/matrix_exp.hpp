#pragma once

#include "gao/numerics/linalg.hpp"

namespace gao::numerics {

/// e^m by scaling and squaring with a degree-13 Pade approximant.
/// Throws Error(invalid_argument) on non-square or non-finite input.
Matrix matrix_exp(const Matrix& m);

}  // namespace gao::numerics
