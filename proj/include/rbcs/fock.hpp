#pragma once

#include <complex>

#include <Eigen/Dense>

#include "rbcs/error.hpp"

namespace rbcs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Fock space truncated to the first `dim` number states e_0 .. e_{dim-1}.
/// The basis is always the canonical one: e_n is the n-th unit vector.
class FockSpace {
 public:
  explicit FockSpace(int dim);

  int dim() const noexcept { return dim_; }
  Vector basis(int n) const;

  bool operator==(const FockSpace&) const = default;

 private:
  int dim_;
};

FockSpace make_space(int dim);

/// Dense complex dim x dim matrix tied to the space it acts on. All entries
/// are finite; construction rejects anything else.
class Operator {
 public:
  Operator(FockSpace space, Matrix entries);

  static Operator identity(const FockSpace& space);
  static Operator zero(const FockSpace& space);

  const FockSpace& space() const noexcept { return space_; }
  int dim() const noexcept { return space_.dim(); }
  const Matrix& matrix() const noexcept { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  Operator adjoint() const;
  Vector apply(const Vector& f) const;

  Operator& operator+=(const Operator& rhs);
  Operator& operator-=(const Operator& rhs);
  Operator& operator*=(Complex s);

  friend Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
  friend Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
  friend Operator operator*(Complex s, Operator op) { return op *= s; }
  friend Operator operator*(Operator op, Complex s) { return op *= s; }
  friend Operator operator*(const Operator& lhs, const Operator& rhs);
  friend Vector operator*(const Operator& op, const Vector& f) { return op.apply(f); }

 private:
  FockSpace space_;
  Matrix m_;
};

/// span{e_0, ..., e_{cutoff-1}}: the low-lying levels on which truncated
/// operator identities hold exactly. Stands in for the dense domain of the
/// unbounded operators.
class SafeSubspace {
 public:
  SafeSubspace(FockSpace space, int cutoff);

  const FockSpace& space() const noexcept { return space_; }
  int cutoff() const noexcept { return cutoff_; }

 private:
  FockSpace space_;
  int cutoff_;
};

/// c e_n = sqrt(n) e_{n-1}, c e_0 = 0.
Operator ladder_c(const FockSpace& space);
/// c† e_n = sqrt(n+1) e_{n+1}; the top level is annihilated (hard cutoff).
Operator ladder_c_dag(const FockSpace& space);

Operator commutator(const Operator& A, const Operator& B);

/// Top-left cutoff x cutoff block of A.
Matrix restrict(const Operator& A, const SafeSubspace& sub);

// Small numeric helpers shared by every module.

/// Largest singular value.
double spectral_norm(const Eigen::Ref<const Matrix>& m);
/// <f, g>, antilinear in f.
Complex inner(const Vector& f, const Vector& g);
void require_same_space(const FockSpace& a, const FockSpace& b, const char* where);
void require_vector_dim(const FockSpace& space, const Vector& f, const char* where);

}  // namespace rbcs
