#include "extended.hpp"

#include <cmath>

namespace rbcs::detail {

QMatrix::QMatrix(const Matrix& m) : n_(static_cast<int>(m.rows())), v_(m.size()) {
  for (int r = 0; r < n_; ++r) {
    for (int c = 0; c < n_; ++c) v_[r * n_ + c] = {m(r, c).real(), m(r, c).imag()};
  }
}

QVector QMatrix::apply(const QVector& x) const {
  QVector out(n_);
  for (int r = 0; r < n_; ++r) {
    QComplex sum;
    for (int c = 0; c < n_; ++c) sum = sum + v_[r * n_ + c] * x[c];
    out[r] = sum;
  }
  return out;
}

QVector QMatrix::apply_adjoint(const QVector& x) const {
  QVector out(n_);
  for (int r = 0; r < n_; ++r) {
    for (int c = 0; c < n_; ++c) out[c] = out[c] + conj(v_[r * n_ + c]) * x[r];
  }
  return out;
}

QMatrix operator*(const QMatrix& x, const QMatrix& y) {
  QMatrix out;
  out.n_ = x.n_;
  out.v_.assign(x.v_.size(), QComplex{});
  for (int r = 0; r < x.n_; ++r) {
    for (int k = 0; k < x.n_; ++k) {
      const QComplex xk = x(r, k);
      for (int c = 0; c < x.n_; ++c) out(r, c) = out(r, c) + xk * y(k, c);
    }
  }
  return out;
}

QVector to_quad(const Vector& x) {
  QVector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = {x(i).real(), x(i).imag()};
  return out;
}

Vector to_double(const QVector& x) {
  Vector out(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) =
        Complex(x[i].re.hi, x[i].im.hi);
  }
  return out;
}

Quad quad_sqrt(int n) {
  if (n == 0) return Quad();
  Quad s = std::sqrt(static_cast<double>(n));
  for (int step = 0; step < 2; ++step) s = (s + Quad(n) / s) / 2;
  return s;
}

QMatrix refined_inverse(const Matrix& S, const Matrix& S_inv, int steps) {
  const QMatrix Sq(S);
  QMatrix X(S_inv);
  const int n = Sq.size();
  for (int step = 0; step < steps; ++step) {
    QMatrix defect = Sq * X;  // becomes 2 - S X
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const QComplex e = defect(r, c);
        defect(r, c) = {(r == c ? Quad(2) : Quad(0)) - e.re, -e.im};
      }
    }
    X = X * defect;
  }
  return X;
}

QVector lower(const QVector& x) {
  const int n = static_cast<int>(x.size());
  QVector out(n);
  for (int k = 0; k + 1 < n; ++k) out[k] = quad_sqrt(k + 1) * x[k + 1];
  return out;
}

QVector raise(const QVector& x) {
  const int n = static_cast<int>(x.size());
  QVector out(n);
  for (int k = 1; k < n; ++k) out[k] = quad_sqrt(k) * x[k - 1];
  return out;
}

}  // namespace rbcs::detail
