#include "rbcs/expm.hpp"

#include <array>
#include <cmath>

namespace rbcs {
namespace {

// Largest 1-norm for which the degree-m approximant reaches unit roundoff
// in double precision without scaling.
constexpr std::array<double, 5> kTheta = {1.495585217958292e-2, 2.539398330063230e-1,
                                          9.504178996162932e-1, 2.097847961257068e0,
                                          5.371920351148152e0};

double one_norm(const Matrix& A) { return A.cwiseAbs().colwise().sum().maxCoeff(); }

template <std::size_t N>
void pade_low(const Matrix& A, const std::array<double, N>& b, Matrix& U, Matrix& V) {
  const Eigen::Index n = A.rows();
  const Matrix A2 = A * A;
  Matrix power = Matrix::Identity(n, n);
  Matrix odd = b[1] * power;
  V = b[0] * power;
  for (std::size_t k = 2; k < N; k += 2) {
    power = power * A2;
    V += b[k] * power;
    odd += b[k + 1] * power;
  }
  U.noalias() = A * odd;
}

void pade13(const Matrix& A, Matrix& U, Matrix& V) {
  constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
      129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
      1323241920.0,        40840800.0,          960960.0,           16380.0,
      182.0,               1.0};
  const Eigen::Index n = A.rows();
  const Matrix I = Matrix::Identity(n, n);
  const Matrix A2 = A * A;
  const Matrix A4 = A2 * A2;
  const Matrix A6 = A4 * A2;
  Matrix inner = A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2);
  inner += b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I;
  U.noalias() = A * inner;
  V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2);
  V += b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
}

}  // namespace

Matrix expm(const Matrix& A) {
  if (A.rows() != A.cols()) {
    throw Error(Errc::dimension_mismatch, "expm of a non-square matrix");
  }
  const Eigen::Index n = A.rows();
  if (n == 0) return A;

  const double norm = one_norm(A);
  Matrix U(n, n);
  Matrix V(n, n);
  int squarings = 0;
  if (norm <= kTheta[0]) {
    pade_low(A, std::array<double, 4>{120.0, 60.0, 12.0, 1.0}, U, V);
  } else if (norm <= kTheta[1]) {
    pade_low(A, std::array<double, 6>{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0}, U, V);
  } else if (norm <= kTheta[2]) {
    pade_low(A,
             std::array<double, 8>{17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0,
                                   56.0, 1.0},
             U, V);
  } else if (norm <= kTheta[3]) {
    pade_low(A,
             std::array<double, 10>{17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                    30270240.0, 2162160.0, 110880.0, 3960.0, 90.0, 1.0},
             U, V);
  } else {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta[4]))));
    pade13(A / std::ldexp(1.0, squarings), U, V);
  }

  Matrix result = (V - U).partialPivLu().solve(V + U);
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

Operator expm(const Operator& A) { return Operator(A.space(), expm(A.matrix())); }

}  // namespace rbcs
