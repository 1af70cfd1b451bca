#pragma once

#include <cstdint>

#include "rbcs/fock.hpp"
#include "rbcs/report.hpp"
#include "rbcs/riesz.hpp"

namespace rbcs {

/// |z|^2 <= dim / 4. Outside this disk results are flagged, not refused;
/// inside it the omitted coherent tail is still dim dependent (see
/// coherent_tail_bound).
bool in_accuracy_regime(const FockSpace& space, Complex z);

/// z c† - conj(z) c. Exactly anti-self-adjoint under the hard cutoff.
Operator displacement_generator(const FockSpace& space, Complex z);

struct WeylOperator {
  Operator W;
  bool out_of_regime = false;
};

/// W(z) = exp(z c† - conj(z) c).
WeylOperator weyl(const FockSpace& space, Complex z);

/// The three displacement operators at one point z. U and V are built from
/// W by similarity, U = S W S^-1 and V = (S^-1)† W S†; exponentiating
/// z b - conj(z) a directly is left to the checks below.
struct DisplacementSet {
  Complex z;
  Operator W;
  Operator U;
  Operator V;
  bool out_of_regime = false;
  std::uint64_t source = 0;
};

DisplacementSet displaced_pair(const RieszMap& map, Complex z);

/// ||W† W - 1||.
double unitarity_defect(const Operator& W);

/// For k = 0..k_max, the relative residual between S (z c† - conj(z) c)^k S^-1
/// and (z b - conj(z) a)^k, with the powers of the second taken from the
/// pseudo-boson pair. Measured on the first dim - k_max pseudo-boson levels.
ResidualReport power_similarity_check(const RieszMap& map, Complex z, int k_max,
                                      double tolerance = 1e-7);

struct BchResidual {
  double u = 0.0;  // relative, U against e^{-|z|^2/2} e^{z b} e^{-conj(z) a}
  double v = 0.0;  // relative, V against e^{-|z|^2/2} e^{z a†} e^{-conj(z) b†}
  bool out_of_regime = false;
};

/// The exponentials of z b, conj(z) a (and their adjoint partners) are
/// computed directly from the non-normal matrices. Flagged out of regime
/// when cutoff > dim - ceil(4 |z|^2) or |z|^2 > dim / 4.
BchResidual bch_factorization_check(const RieszMap& map, Complex z, const SafeSubspace& sub);

/// ||S S† V(z) - U(z) S S†|| on the subspace, relative to ||S S†||.
double intertwining_check(const RieszMap& map, Complex z, const SafeSubspace& sub);

/// ||W(z) W(w) - e^{i Im(z conj(w))} W(z + w)|| on the subspace.
double group_law_defect(const FockSpace& space, Complex z, Complex w, const SafeSubspace& sub);

}  // namespace rbcs
