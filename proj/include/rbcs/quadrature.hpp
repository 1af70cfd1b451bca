#pragma once

#include <vector>

#include "rbcs/fock.hpp"

namespace rbcs {

/// An n-point Gauss rule. `weights` integrate against the rule's weight
/// function (e^{-t} on [0, inf) or e^{-x^2} on the real line);
/// `scaled_weights` have that weight divided back out, so they integrate
/// functions that already carry their own Gaussian decay.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled_weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Nodes from the Jacobi matrix eigenvalues, polished by Newton steps on
/// l_n; weights w_i = t_i / ((n+1)^2 L_{n+1}(t_i)^2).
GaussRule gauss_laguerre(int n);

/// Nodes from the Jacobi matrix eigenvalues, polished by Newton steps on
/// psi_n; scaled weights 1 / (n psi_{n-1}(x_i)^2).
GaussRule gauss_hermite(int n);

/// sum_i w_i t_i^k / k!, which is 1 whenever 2n - 1 >= k.
double laguerre_moment(const GaussRule& rule, int k);

/// Product rule for (1/pi) \int_C d^2z: z = sqrt(t) e^{i theta} with radial
/// Gauss-Laguerre nodes in t = |z|^2 and M equally spaced angles
/// theta_j = 2 pi j / M. The node weights carry the Jacobian and undo the
/// Laguerre weight e^{-t}, because the coherent states supply their own
/// e^{-|z|^2/2} factors. Putting the Gaussian in both places counts it twice.
class QuadratureScheme {
 public:
  QuadratureScheme(GaussRule radial, int angular_count);

  const GaussRule& radial() const noexcept { return radial_; }
  int radial_count() const noexcept { return radial_.size(); }
  int angular_count() const noexcept { return angular_count_; }
  int size() const noexcept { return radial_count() * angular_count_; }

  /// Node z_ij and weight for flat index i * M + j.
  Complex node(int index) const;
  double weight(int index) const;

  /// radial_count >= dim and angular_count >= 2 dim.
  bool resolves(int dim) const;

 private:
  GaussRule radial_;
  int angular_count_;
};

/// Scheme able to integrate every matrix element of |Phi(z)><Phi(z)| on a
/// dim-level space exactly. Throws under_resolved unless
/// radial_count >= dim and angular_count >= 2 dim, and verifies the
/// factorial moments up to k = dim to 1e-10 relative.
QuadratureScheme make_quadrature(int dim, int radial_count, int angular_count);

/// (1/M) sum_j e^{i n theta_j}.
Complex angular_mean(int angular_count, int n);

}  // namespace rbcs
