#include <doctest.h>

#include <cmath>

#include "rbcs/fock.hpp"

using namespace rbcs;

TEST_CASE("space construction and basis") {
  CHECK_THROWS_AS(FockSpace(1), Error);
  CHECK_THROWS_AS(FockSpace(0), Error);
  const FockSpace space(5);
  CHECK(space.dim() == 5);
  const Vector e3 = space.basis(3);
  CHECK(e3.norm() == 1.0);
  CHECK(e3(3) == Complex(1.0));
  CHECK_THROWS_AS(space.basis(5), Error);
  CHECK(make_space(5) == space);
}

TEST_CASE("ladder entries are sqrt(n) on the superdiagonal") {
  const FockSpace space(6);
  const Operator c = ladder_c(space);
  for (int r = 0; r < 6; ++r) {
    for (int col = 0; col < 6; ++col) {
      const double expected = col == r + 1 ? std::sqrt(static_cast<double>(col)) : 0.0;
      CHECK(std::abs(c(r, col) - expected) == 0.0);
    }
  }
  const Operator cd = ladder_c_dag(space);
  CHECK((cd.matrix() - c.matrix().adjoint()).norm() == 0.0);
  // the top level is annihilated by c†
  CHECK(cd.apply(space.basis(5)).norm() == 0.0);
}

TEST_CASE("truncated commutator is diag(1, ..., 1, -(dim-1))") {
  for (int d : {2, 4, 9}) {
    const FockSpace space(d);
    const Operator k = commutator(ladder_c(space), ladder_c_dag(space));
    Matrix expected = Matrix::Identity(d, d);
    expected(d - 1, d - 1) = -(d - 1.0);
    CHECK((k.matrix() - expected).norm() < 1e-14);
    const SafeSubspace sub(space, d - 1);
    CHECK((restrict(k, sub) - Matrix::Identity(d - 1, d - 1)).norm() < 1e-14);
  }
}

TEST_CASE("operator arithmetic and validation") {
  const FockSpace space(3);
  const FockSpace other(4);
  CHECK_THROWS_AS(Operator(space, Matrix::Identity(4, 4)), Error);
  Matrix bad = Matrix::Identity(3, 3);
  bad(1, 1) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(Operator(space, bad), Error);

  const Operator I = Operator::identity(space);
  const Operator c = ladder_c(space);
  CHECK_THROWS_AS(I + Operator::identity(other), Error);
  CHECK_THROWS_AS(I * Operator::identity(other), Error);
  const Operator sum = I + Complex(0.0, 2.0) * c;
  CHECK(sum(0, 1) == Complex(0.0, 2.0));
  CHECK((sum - I - Complex(0.0, 2.0) * c).matrix().norm() == 0.0);
  CHECK(sum.adjoint()(1, 0) == Complex(0.0, -2.0));
  CHECK_THROWS_AS(c.apply(Vector::Zero(4)), Error);
}

TEST_CASE("safe subspace bounds") {
  const FockSpace space(5);
  CHECK_THROWS_AS(SafeSubspace(space, 0), Error);
  CHECK_THROWS_AS(SafeSubspace(space, 5), Error);
  CHECK(SafeSubspace(space, 4).cutoff() == 4);
}

TEST_CASE("inner product is antilinear in the first slot") {
  Vector f(2), g(2);
  f << Complex(1, 1), Complex(0, 2);
  g << Complex(2, 0), Complex(1, -1);
  const Complex s(0.3, -1.7);
  CHECK(std::abs(inner(s * f, g) - std::conj(s) * inner(f, g)) < 1e-15);
  CHECK(std::abs(inner(f, s * g) - s * inner(f, g)) < 1e-15);
  // <f, g> = conj(f) . g computed by hand
  CHECK(std::abs(inner(f, g) - Complex(0.0, -4.0)) < 1e-15);
  CHECK_THROWS_AS(inner(f, Vector::Zero(3)), Error);
}

TEST_CASE("spectral norm of a diagonal matrix") {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 0.5;
  m(1, 1) = Complex(0.0, -3.0);
  m(2, 2) = 2.0;
  CHECK(std::abs(spectral_norm(m) - 3.0) < 1e-14);
}

TEST_CASE("error codes carry their names") {
  const Error e(Errc::not_invertible, "boom");
  CHECK(e.code() == Errc::not_invertible);
  CHECK(std::string(e.what()).find("not-invertible") != std::string::npos);
}
