#include "rbcs/fock.hpp"

#include <cmath>
#include <string>

namespace rbcs {

FockSpace::FockSpace(int dim) : dim_(dim) {
  if (dim < 2) {
    throw Error(Errc::invalid_dimension, "Fock space needs dim >= 2, got " + std::to_string(dim));
  }
}

Vector FockSpace::basis(int n) const {
  if (n < 0 || n >= dim_) {
    throw Error(Errc::out_of_range, "basis index " + std::to_string(n) + " outside [0, " +
                                        std::to_string(dim_) + ")");
  }
  return Vector::Unit(dim_, n);
}

FockSpace make_space(int dim) { return FockSpace(dim); }

Operator::Operator(FockSpace space, Matrix entries) : space_(space), m_(std::move(entries)) {
  if (m_.rows() != space_.dim() || m_.cols() != space_.dim()) {
    throw Error(Errc::dimension_mismatch,
                "operator entries are " + std::to_string(m_.rows()) + "x" +
                    std::to_string(m_.cols()) + " on a space of dim " +
                    std::to_string(space_.dim()));
  }
  if (!m_.allFinite()) {
    throw Error(Errc::out_of_range, "operator has non-finite entries");
  }
}

Operator Operator::identity(const FockSpace& space) {
  return Operator(space, Matrix::Identity(space.dim(), space.dim()));
}

Operator Operator::zero(const FockSpace& space) {
  return Operator(space, Matrix::Zero(space.dim(), space.dim()));
}

Operator Operator::adjoint() const { return Operator(space_, m_.adjoint()); }

Vector Operator::apply(const Vector& f) const {
  require_vector_dim(space_, f, "Operator::apply");
  return m_ * f;
}

Operator& Operator::operator+=(const Operator& rhs) {
  require_same_space(space_, rhs.space_, "operator+");
  m_ += rhs.m_;
  return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
  require_same_space(space_, rhs.space_, "operator-");
  m_ -= rhs.m_;
  return *this;
}

Operator& Operator::operator*=(Complex s) {
  m_ *= s;
  return *this;
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
  require_same_space(lhs.space_, rhs.space_, "operator*");
  return Operator(lhs.space_, lhs.m_ * rhs.m_);
}

SafeSubspace::SafeSubspace(FockSpace space, int cutoff) : space_(space), cutoff_(cutoff) {
  if (cutoff < 1 || cutoff >= space.dim()) {
    throw Error(Errc::out_of_range, "safe-subspace cutoff " + std::to_string(cutoff) +
                                        " outside [1, " + std::to_string(space.dim()) + ")");
  }
}

Operator ladder_c(const FockSpace& space) {
  const int d = space.dim();
  Matrix m = Matrix::Zero(d, d);
  for (int n = 1; n < d; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
  return Operator(space, std::move(m));
}

Operator ladder_c_dag(const FockSpace& space) { return ladder_c(space).adjoint(); }

Operator commutator(const Operator& A, const Operator& B) { return A * B - B * A; }

Matrix restrict(const Operator& A, const SafeSubspace& sub) {
  require_same_space(A.space(), sub.space(), "restrict");
  const int k = sub.cutoff();
  return A.matrix().topLeftCorner(k, k);
}

double spectral_norm(const Eigen::Ref<const Matrix>& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Complex inner(const Vector& f, const Vector& g) {
  if (f.size() != g.size()) {
    throw Error(Errc::dimension_mismatch, "inner product of vectors of sizes " +
                                              std::to_string(f.size()) + " and " +
                                              std::to_string(g.size()));
  }
  return f.dot(g);
}

void require_same_space(const FockSpace& a, const FockSpace& b, const char* where) {
  if (a != b) {
    throw Error(Errc::dimension_mismatch, std::string(where) + ": spaces of dim " +
                                              std::to_string(a.dim()) + " and " +
                                              std::to_string(b.dim()));
  }
}

void require_vector_dim(const FockSpace& space, const Vector& f, const char* where) {
  if (f.size() != space.dim()) {
    throw Error(Errc::dimension_mismatch, std::string(where) + ": vector of size " +
                                              std::to_string(f.size()) + " on a space of dim " +
                                              std::to_string(space.dim()));
  }
}

}  // namespace rbcs
