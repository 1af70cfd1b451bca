#pragma once

// Extended-precision kernels for the ladder recursion. Climbing
// phi_n = b phi_{n-1} / sqrt(n) multiplies any component off the exact
// ladder by up to sqrt(binomial(dim, dim/2)), so double roundoff alone
// reaches 1e-6 at dim 64. Double-double arithmetic (106-bit significand)
// keeps that below 1e-20 at a fraction of the cost of software binary128.

#include <vector>

#include "rbcs/fock.hpp"

namespace rbcs::detail {

/// Unevaluated sum hi + lo with |lo| <= ulp(hi) / 2. The error-free
/// transforms below rely on strict IEEE evaluation, so the library is
/// compiled with -ffp-contract=off.
struct Quad {
  double hi = 0.0;
  double lo = 0.0;

  constexpr Quad() = default;
  constexpr Quad(double x) : hi(x) {}  // NOLINT: implicit widening is exact
  constexpr Quad(int x) : hi(x) {}     // NOLINT
  constexpr Quad(double h, double l) : hi(h), lo(l) {}
  explicit constexpr operator double() const { return hi + lo; }
};

namespace dd {

inline Quad quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline Quad two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

// Dekker's product: exact without a hardware fma.
inline Quad two_prod(double a, double b) {
  constexpr double kSplit = 134217729.0;  // 2^27 + 1
  const double p = a * b;
  const double ta = kSplit * a;
  const double ah = ta - (ta - a);
  const double al = a - ah;
  const double tb = kSplit * b;
  const double bh = tb - (tb - b);
  const double bl = b - bh;
  return {p, ((ah * bh - p) + ah * bl + al * bh) + al * bl};
}

}  // namespace dd

inline Quad operator+(Quad x, Quad y) {
  Quad s = dd::two_sum(x.hi, y.hi);
  const Quad t = dd::two_sum(x.lo, y.lo);
  s.lo += t.hi;
  s = dd::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return dd::quick_two_sum(s.hi, s.lo);
}

inline Quad operator-(Quad x) { return {-x.hi, -x.lo}; }
inline Quad operator-(Quad x, Quad y) { return x + (-y); }

inline Quad operator*(Quad x, Quad y) {
  Quad p = dd::two_prod(x.hi, y.hi);
  p.lo += x.hi * y.lo + x.lo * y.hi;
  return dd::quick_two_sum(p.hi, p.lo);
}

inline Quad operator/(Quad x, Quad y) {
  const double q1 = x.hi / y.hi;
  Quad r = x - y * Quad(q1);
  const double q2 = r.hi / y.hi;
  r = r - y * Quad(q2);
  const double q3 = r.hi / y.hi;
  return dd::quick_two_sum(q1, q2) + Quad(q3);
}

inline bool operator==(Quad x, Quad y) { return x.hi == y.hi && x.lo == y.lo; }

struct QComplex {
  Quad re = 0;
  Quad im = 0;
};

inline QComplex operator+(QComplex x, QComplex y) { return {x.re + y.re, x.im + y.im}; }
inline QComplex operator-(QComplex x, QComplex y) { return {x.re - y.re, x.im - y.im}; }
inline QComplex operator*(QComplex x, QComplex y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}
inline QComplex operator*(Quad s, QComplex x) { return {s * x.re, s * x.im}; }
inline QComplex conj(QComplex x) { return {x.re, -x.im}; }

using QVector = std::vector<QComplex>;

/// Square, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  explicit QMatrix(const Matrix& m);

  int size() const { return n_; }
  QComplex& operator()(int r, int c) { return v_[r * n_ + c]; }
  QComplex operator()(int r, int c) const { return v_[r * n_ + c]; }

  QVector apply(const QVector& x) const;
  /// this† x.
  QVector apply_adjoint(const QVector& x) const;
  friend QMatrix operator*(const QMatrix& x, const QMatrix& y);

 private:
  int n_ = 0;
  std::vector<QComplex> v_;
};

QVector to_quad(const Vector& x);
Vector to_double(const QVector& x);

/// sqrt(n) to full double-double accuracy (double seed, two Newton steps).
Quad quad_sqrt(int n);

/// Newton-Schulz X <- X (2 - S X) from a double inverse; each step squares
/// the defect ||1 - S X||.
QMatrix refined_inverse(const Matrix& S, const Matrix& S_inv, int steps = 2);

/// c x and c† x on the truncated ladder, in extended precision.
QVector lower(const QVector& x);
QVector raise(const QVector& x);

}  // namespace rbcs::detail
