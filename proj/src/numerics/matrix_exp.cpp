#include "gao/numerics/matrix_exp.hpp"

#include <cmath>

#include "gao/error.hpp"

namespace gao::numerics {

namespace {

// Pade(13) coefficients, Higham (2005).
constexpr double kB[14] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                           1187353796428800.0,  129060195264000.0,   10559470521600.0,
                           670442572800.0,      33522128640.0,       1323241920.0,
                           40840800.0,          960960.0,            16380.0,
                           182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

Matrix matrix_exp(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::invalid_argument, "matrix_exp: matrix is not square");
  if (!m.allFinite()) throw Error(ErrorKind::invalid_argument, "matrix_exp: non-finite entry");
  const Eigen::Index n = m.rows();
  if (n == 0) return m;
  if (m.isZero(0.0)) return Matrix::Identity(n, n);

  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm1 > kTheta13) s = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
  const Matrix a = m / std::ldexp(1.0, s);

  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;

  Matrix u = a6 * (kB[13] * a6 + kB[11] * a4 + kB[9] * a2);
  u += kB[7] * a6 + kB[5] * a4 + kB[3] * a2 + kB[1] * id;
  u = a * u;
  Matrix v = a6 * (kB[12] * a6 + kB[10] * a4 + kB[8] * a2);
  v += kB[6] * a6 + kB[4] * a4 + kB[2] * a2 + kB[0] * id;

  Matrix r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < s; ++i) r = r * r;
  return r;
}

}  // namespace gao::numerics
