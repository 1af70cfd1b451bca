#pragma once

#include <iosfwd>
#include <vector>

#include "rbcs/fock.hpp"
#include "rbcs/riesz.hpp"

namespace rbcs {

// Harmonic-oscillator example in the position representation. x is the
// dimensionless oscillator coordinate; e_n(x) are the Hermite functions, so
// that c = (x + d/dx) / sqrt(2).
//
// Phase convention: the coherent wavefunction used here is
//   Phi_z(x) = pi^{-1/4} exp(-x^2/2 + sqrt(2) z x - Re(z)^2),
// which equals exp(i Re(z) Im(z)) times the Fock-space state
// e^{-|z|^2/2} sum_k z^k / sqrt(k!) e_k(x). Cross-checks against the Fock
// route multiply by that phase (convention_phase) before comparing.

/// e_n(x), the n-th orthonormal Hermite function. Throws out_of_range for
/// n < 0 or |x| > 40.
double hermite_basis(int n, double x);

Complex coherent_wavefunction(Complex z, double x);

/// exp(i Re(z) Im(z)).
Complex convention_phase(Complex z);

/// <e_k, Phi_z> = convention_phase(z) e^{-|z|^2/2} z^k / sqrt(k!).
Complex basis_overlap(int k, Complex z);

/// T = 1 + i P_u and its inverse 1 - (1+i)/2 P_u, with P_u = |u><u|.
struct ProjectorMap {
  Vector u;
  Operator T;
  Operator T_inv;
  RieszMap map;
};

/// Throws non_unit_vector unless | ||u|| - 1 | <= 1e-12.
ProjectorMap projector_map(const FockSpace& space, const Vector& u);

struct WavefunctionPair {
  Complex phi;  // (T Phi_z)(x)
  Complex psi;  // ((T^-1)† Phi_z)(x)
};

/// Closed forms for u = e_0:
///   phi_z(x) = e_0(x) (e^{sqrt(2) z x - Re(z)^2} + i <e_0, Phi_z>)
///   psi_z(x) = e_0(x) (e^{sqrt(2) z x - Re(z)^2} - (1-i)/2 <e_0, Phi_z>)
/// with <e_0, Phi_z> = e^{-|z|^2/2 + i Re(z) Im(z)}.
WavefunctionPair example_wavefunctions(Complex z, double x);

/// Same for u = e_k: Phi_z(x) + i <e_k, Phi_z> e_k(x) and
/// Phi_z(x) - (1-i)/2 <e_k, Phi_z> e_k(x).
WavefunctionPair example_wavefunctions(Complex z, double x, int u_index);

struct CrossValidation {
  double phi_max = 0.0;  // max pointwise |closed form - Fock route| on the grid
  double psi_max = 0.0;
  double phi_l2 = 0.0;   // L2 distance by Gauss-Hermite quadrature
  double psi_l2 = 0.0;
  Complex pairing;       // \int conj(phi_z) psi_z dx from the closed forms
};

/// Compares the closed forms with T Phi(z), (T^-1)† Phi(z) computed on the
/// dim-level Fock space and expanded in Hermite functions at the nodes of a
/// Gauss-Hermite rule of order grid_order. Throws out_of_range when
/// |z|^2 > dim / 4 or grid_order < dim + 10.
CrossValidation cross_validate(Complex z, int dim, int grid_order, int u_index = 0);

/// max |((x + d/dx)/sqrt(2) - z) Phi_z(x)| over 601 points on [-6, 6],
/// central differences with step 1e-5.
double eigen_relation_residual(Complex z);

/// Rows x, re/im of Phi_z, phi_z, psi_z.
void write_wavefunction_csv(std::ostream& out, Complex z, const std::vector<double>& xs,
                            int u_index = 0);

}  // namespace rbcs
