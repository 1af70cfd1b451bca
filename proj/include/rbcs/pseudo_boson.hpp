#pragma once

#include <cstdint>
#include <vector>

#include "rbcs/fock.hpp"
#include "rbcs/report.hpp"
#include "rbcs/riesz.hpp"

namespace rbcs {

/// a = S c S^-1 and b = S c† S^-1. [a, b] = 1 on every level of the
/// truncated ladder except the top one.
struct PseudoBosonPair {
  Operator a;
  Operator b;
  RieszMap source;

  const FockSpace& space() const noexcept { return a.space(); }
  /// N = b a.
  Operator number() const { return b * a; }
};

PseudoBosonPair make_pseudo_boson_pair(const RieszMap& map);

/// Vacua of a and b†, normalised so that <phi0, psi0> = 1. The joint scale
/// phi0 -> s phi0, psi0 -> psi0 / conj(s) is left free by that condition.
struct VacuumPair {
  Vector phi0;
  Vector psi0;
  /// Factor that was applied to psi0 to reach <phi0, psi0> = 1.
  Complex normalization{1.0, 0.0};

  VacuumPair rescaled(Complex s) const;
};

/// Finds the vacua as the right singular vectors of a and b† belonging to
/// their smallest singular values. phi0 is unit norm with its largest
/// component real and positive.
///
/// Throws degenerate_vacuum when the two smallest singular values of a (or
/// b†) lie within 1e-8 of each other, and orthogonal_vacua when
/// |<phi0, psi0>| < 1e-10 before normalisation.
VacuumPair vacua(const PseudoBosonPair& pair);

/// (S e_0, (S^-1)† e_0): the vacua the construction predicts.
VacuumPair closed_form_vacua(const RieszMap& map);

/// The gauge-equivalent vacuum pair whose phi0 is closest to `reference`.
VacuumPair aligned_to(const VacuumPair& vac, const Vector& reference);

/// ||u/|u| - w/|w| * phase||, minimised over the phase.
double direction_mismatch(const Vector& u, const Vector& w);

/// phi_n = b^n phi0 / sqrt(n!) and psi_n = (a†)^n psi0 / sqrt(n!) for
/// n = 0 .. n_max, built one ladder step at a time. The steps run in quad
/// precision from vacua polished onto the kernels, since the recursion
/// amplifies off-ladder roundoff combinatorially; members are rounded to
/// double as they are stored.
BiorthogonalFamily excited_states(const PseudoBosonPair& pair, const VacuumPair& vac, int n_max);

/// Residuals of b phi_n = sqrt(n+1) phi_{n+1}, a phi_n = sqrt(n) phi_{n-1},
/// a† psi_n = sqrt(n+1) psi_{n+1} and b† psi_n = sqrt(n) psi_{n-1} for every
/// n below the top level. Default tolerance is 1e-10 cond.
ResidualReport ladder_check(const PseudoBosonPair& pair, const BiorthogonalFamily& fam,
                            double tolerance = -1.0);

/// Residuals of N phi_n = n phi_n and N† psi_n = n psi_n for n <= dim-2.
ResidualReport number_operator_check(const PseudoBosonPair& pair, const BiorthogonalFamily& fam,
                                     double tolerance = -1.0);

/// Eigenvalues of N = b a sorted by real part.
std::vector<Complex> number_spectrum(const PseudoBosonPair& pair);

/// max_{n <= dim-2} |lambda_n - n| over the dim-1 lowest eigenvalues of N.
double number_spectrum_defect(const PseudoBosonPair& pair);

/// ||restrict_in_frame(a - Theta^-1 b† Theta)||. Tolerance 1e-10 cond^3.
Residual theta_conjugacy_check(const PseudoBosonPair& pair, const MetricOperator& metric,
                               const SafeSubspace& sub);

/// min Re<f, Theta f> / ||f||^2 over `samples` seeded random vectors.
double theta_positivity(const MetricOperator& metric, int samples, std::uint64_t seed);

/// ||restrict_in_frame([a, b] - 1)||.
double ccr_defect(const PseudoBosonPair& pair, const SafeSubspace& sub);

}  // namespace rbcs
