#include <doctest.h>

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "rbcs/expm.hpp"

using namespace rbcs;

namespace {

Matrix random_matrix(int n, double scale, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = scale * Complex(g(rng), g(rng));
  return m;
}

double rel(const Matrix& x, const Matrix& y) { return (x - y).norm() / y.norm(); }

}  // namespace

TEST_CASE("expm of zero and of a diagonal") {
  CHECK((expm(Matrix::Zero(4, 4)) - Matrix::Identity(4, 4)).norm() == 0.0);
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = Complex(1.0, 0.5);
  d(1, 1) = -7.0;
  d(2, 2) = Complex(0.0, 3.0);
  const Matrix e = expm(d);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(e(i, i) - std::exp(d(i, i))) < 1e-14 * std::abs(std::exp(d(i, i))) + 1e-300);
}

TEST_CASE("nilpotent input matches its finite series") {
  // N^3 = 0, so e^N = 1 + N + N^2 / 2 exactly.
  Matrix N = Matrix::Zero(3, 3);
  N(0, 1) = Complex(2.0, -1.0);
  N(1, 2) = 4.0;
  N(0, 2) = Complex(0.0, 1.0);
  const Matrix expected = Matrix::Identity(3, 3) + N + 0.5 * N * N;
  CHECK((expm(N) - expected).norm() < 1e-13);
}

TEST_CASE("agrees with an independent matrix exponential across scales") {
  // Eigen's MatrixFunctions module is an independent implementation.
  for (double scale : {1e-4, 0.05, 0.4, 1.5, 6.0}) {
    for (unsigned seed : {1u, 2u, 3u}) {
      const Matrix A = random_matrix(12, scale, seed);
      const Matrix oracle = A.exp();
      CAPTURE(scale);
      CHECK(rel(expm(A), oracle) < 1e-11);
    }
  }
}

TEST_CASE("frozen 3x3 reference") {
  // Reference values from an independent library.
  Matrix A(3, 3);
  A << Complex(0.3, 0.1), -1.2, Complex(0.0, 0.5), 0.7, Complex(-0.4, 0.9), 1.1,
      Complex(0.0, -0.2), 0.6, Complex(0.2, -0.3);
  A *= 3.0;
  Matrix expected(3, 3);
  expected << Complex(-0.6724667324794786, -0.3104542560822261),
      Complex(-1.6038762876317383, -1.404815768375463),
      Complex(-4.32735396798764, 0.32851372031913895),
      Complex(1.014493628120474, 0.6482085337592772),
      Complex(-0.8676364918294044, -0.09552586757821696),
      Complex(0.7272033765675894, 1.7989822829701756),
      Complex(1.319899992491673, -0.3207633929323608),
      Complex(0.3105846123074556, 1.1681001519398149),
      Complex(3.950676486549206, 0.3445037030925444);
  CHECK(rel(expm(A), expected) < 1e-13);
}

TEST_CASE("anti-Hermitian input gives a unitary") {
  Matrix H = random_matrix(20, 1.0, 9);
  H = 0.5 * (H + H.adjoint()).eval();
  const Matrix U = expm(Complex(0.0, 1.0) * H);
  CHECK((U.adjoint() * U - Matrix::Identity(20, 20)).norm() < 1e-12);
}

TEST_CASE("operator overload keeps the space") {
  const FockSpace space(5);
  const Operator A(space, random_matrix(5, 0.3, 4));
  const Operator E = expm(A);
  CHECK(E.space() == space);
  CHECK(rel(E.matrix(), A.matrix().exp()) < 1e-12);
}
