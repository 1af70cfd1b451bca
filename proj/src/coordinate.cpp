#include "rbcs/coordinate.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <string>

#include "rbcs/bicoherent.hpp"
#include "rbcs/quadrature.hpp"
#include "rbcs/special.hpp"

namespace rbcs {
namespace {

constexpr double kMaxAbsX = 40.0;
const Complex kI(0.0, 1.0);

Complex coherent_exponential(Complex z, double x) {
  return std::exp(std::sqrt(2.0) * z * x - z.real() * z.real());
}

}  // namespace

double hermite_basis(int n, double x) {
  if (n < 0) throw Error(Errc::out_of_range, "negative Hermite index");
  if (!(std::abs(x) <= kMaxAbsX)) {
    throw Error(Errc::out_of_range, "|x| = " + std::to_string(std::abs(x)) + " exceeds 40");
  }
  return hermite_functions(n, x)[n];
}

Complex coherent_wavefunction(Complex z, double x) {
  return std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x) * coherent_exponential(z, x);
}

Complex convention_phase(Complex z) { return std::polar(1.0, z.real() * z.imag()); }

Complex basis_overlap(int k, Complex z) {
  if (k < 0) throw Error(Errc::out_of_range, "negative basis index");
  const double r = std::abs(z);
  const double log_mag =
      (r > 0.0 ? k * std::log(r) : (k == 0 ? 0.0 : -INFINITY)) - 0.5 * std::lgamma(k + 1.0) -
      0.5 * r * r;
  return convention_phase(z) * std::polar(std::exp(log_mag), k * std::arg(z));
}

ProjectorMap projector_map(const FockSpace& space, const Vector& u) {
  require_vector_dim(space, u, "projector_map");
  if (std::abs(u.norm() - 1.0) > 1e-12) {
    throw Error(Errc::non_unit_vector, "projector needs a unit vector, |u| = " +
                                           std::to_string(u.norm()));
  }
  const Matrix P = u * u.adjoint();
  const Matrix I = Matrix::Identity(space.dim(), space.dim());
  Operator T(space, I + kI * P);
  Operator T_inv(space, I - Complex(0.5, 0.5) * P);
  RieszMap map = make_riesz_map(T, T_inv);
  return ProjectorMap{u, std::move(T), std::move(T_inv), std::move(map)};
}

WavefunctionPair example_wavefunctions(Complex z, double x) {
  const double e0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  const Complex shifted = coherent_exponential(z, x);
  const Complex overlap = std::exp(-0.5 * std::norm(z) + kI * z.real() * z.imag());
  return WavefunctionPair{e0 * (shifted + kI * overlap),
                          e0 * (shifted - Complex(0.5, -0.5) * overlap)};
}

WavefunctionPair example_wavefunctions(Complex z, double x, int u_index) {
  const Complex Phi = coherent_wavefunction(z, x);
  const Complex projected = basis_overlap(u_index, z) * hermite_basis(u_index, x);
  return WavefunctionPair{Phi + kI * projected, Phi - Complex(0.5, -0.5) * projected};
}

CrossValidation cross_validate(Complex z, int dim, int grid_order, int u_index) {
  if (std::norm(z) > dim / 4.0) {
    throw Error(Errc::out_of_range, "|z|^2 > dim/4: outside the accuracy regime");
  }
  if (grid_order < dim + 10) {
    throw Error(Errc::out_of_range, "grid order must be at least dim + 10");
  }
  const FockSpace space(dim);
  const ProjectorMap pm = projector_map(space, space.basis(u_index));
  const BicoherentPair fock = rbcs(pm.map, z);
  const Complex phase = convention_phase(z);
  const GaussRule grid = gauss_hermite(grid_order);

  CrossValidation out;
  out.pairing = Complex(0.0);
  double phi_sq = 0.0;
  double psi_sq = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    const double x = grid.nodes[i];
    const auto e = hermite_functions(dim - 1, x);
    Complex phi_fock(0.0);
    Complex psi_fock(0.0);
    for (int k = 0; k < dim; ++k) {
      phi_fock += fock.eta(k) * e[k];
      psi_fock += fock.xi(k) * e[k];
    }
    phi_fock *= phase;
    psi_fock *= phase;
    const WavefunctionPair closed = u_index == 0 ? example_wavefunctions(z, x)
                                                 : example_wavefunctions(z, x, u_index);
    const double w = grid.scaled_weights[i];
    out.phi_max = std::max(out.phi_max, std::abs(closed.phi - phi_fock));
    out.psi_max = std::max(out.psi_max, std::abs(closed.psi - psi_fock));
    phi_sq += w * std::norm(closed.phi - phi_fock);
    psi_sq += w * std::norm(closed.psi - psi_fock);
    out.pairing += w * std::conj(closed.phi) * closed.psi;
  }
  out.phi_l2 = std::sqrt(phi_sq);
  out.psi_l2 = std::sqrt(psi_sq);
  return out;
}

double eigen_relation_residual(Complex z) {
  constexpr int kPoints = 601;
  constexpr double kLo = -6.0;
  constexpr double kHi = 6.0;
  constexpr double kStep = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double x = kLo + (kHi - kLo) * i / (kPoints - 1);
    const Complex deriv =
        (coherent_wavefunction(z, x + kStep) - coherent_wavefunction(z, x - kStep)) /
        (2.0 * kStep);
    const Complex value = coherent_wavefunction(z, x);
    worst = std::max(worst, std::abs((x * value + deriv) / std::sqrt(2.0) - z * value));
  }
  return worst;
}

void write_wavefunction_csv(std::ostream& out, Complex z, const std::vector<double>& xs,
                            int u_index) {
  out << "x,re_Phi,im_Phi,re_phi,im_phi,re_Psi,im_Psi\n";
  out << std::setprecision(17);
  for (double x : xs) {
    const Complex Phi = coherent_wavefunction(z, x);
    const WavefunctionPair w =
        u_index == 0 ? example_wavefunctions(z, x) : example_wavefunctions(z, x, u_index);
    out << x << ',' << Phi.real() << ',' << Phi.imag() << ',' << w.phi.real() << ','
        << w.phi.imag() << ',' << w.psi.real() << ',' << w.psi.imag() << '\n';
  }
}

}  // namespace rbcs
