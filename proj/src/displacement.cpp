#include "rbcs/displacement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rbcs/expm.hpp"
#include "rbcs/pseudo_boson.hpp"

namespace rbcs {
namespace {

constexpr double kTiny = 1e-300;

double relative(double residual, double scale) { return residual / std::max(scale, kTiny); }

}  // namespace

bool in_accuracy_regime(const FockSpace& space, Complex z) {
  return std::norm(z) <= space.dim() / 4.0;
}

Operator displacement_generator(const FockSpace& space, Complex z) {
  return z * ladder_c_dag(space) - std::conj(z) * ladder_c(space);
}

WeylOperator weyl(const FockSpace& space, Complex z) {
  return WeylOperator{expm(displacement_generator(space, z)), !in_accuracy_regime(space, z)};
}

DisplacementSet displaced_pair(const RieszMap& map, Complex z) {
  auto [W, out_of_regime] = weyl(map.space(), z);
  Operator U = map.S() * W * map.S_inv();
  Operator V = map.S_inv().adjoint() * W * map.S().adjoint();
  return DisplacementSet{z,         std::move(W),  std::move(U), std::move(V),
                         out_of_regime, map.fingerprint()};
}

double unitarity_defect(const Operator& W) {
  const Matrix& m = W.matrix();
  return spectral_norm(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols()));
}

ResidualReport power_similarity_check(const RieszMap& map, Complex z, int k_max,
                                      double tolerance) {
  if (k_max < 0 || k_max > 12) {
    throw Error(Errc::out_of_range, "k_max " + std::to_string(k_max) + " outside [0, 12]");
  }
  const int d = map.dim();
  const SafeSubspace sub(map.space(), std::clamp(d - std::max(k_max, 1), 1, d - 1));
  const PseudoBosonPair pair = make_pseudo_boson_pair(map);
  const Matrix boson_gen = displacement_generator(map.space(), z).matrix();
  const Matrix pb_gen = z * pair.b.matrix() - std::conj(z) * pair.a.matrix();

  ResidualReport report;
  Matrix boson_power = Matrix::Identity(d, d);
  Matrix pb_power = Matrix::Identity(d, d);
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) {
      boson_power = boson_power * boson_gen;
      pb_power = pb_power * pb_gen;
    }
    const Operator transported(map.space(),
                               map.S().matrix() * boson_power * map.S_inv().matrix());
    const Operator direct(map.space(), pb_power);
    const double scale = spectral_norm(restrict_in_frame(direct, map, sub));
    const double diff = spectral_norm(restrict_in_frame(transported - direct, map, sub));
    report.push_back({"displacement.power_similarity", k, relative(diff, scale), tolerance});
  }
  return report;
}

BchResidual bch_factorization_check(const RieszMap& map, Complex z, const SafeSubspace& sub) {
  require_same_space(map.space(), sub.space(), "bch_factorization_check");
  const FockSpace& space = map.space();
  const PseudoBosonPair pair = make_pseudo_boson_pair(map);
  const DisplacementSet set = displaced_pair(map, z);
  const Complex zc = std::conj(z);
  const double gauss = std::exp(-0.5 * std::norm(z));

  const Operator u_bch = gauss * expm(z * pair.b) * expm(-zc * pair.a);
  const Operator v_bch = gauss * expm(z * pair.a.adjoint()) * expm(-zc * pair.b.adjoint());

  BchResidual out;
  out.u = relative(spectral_norm(restrict_in_frame(set.U - u_bch, map, sub)),
                   spectral_norm(restrict_in_frame(set.U, map, sub)));
  out.v = relative(spectral_norm(restrict_in_dual_frame(set.V - v_bch, map, sub)),
                   spectral_norm(restrict_in_dual_frame(set.V, map, sub)));
  const int margin = static_cast<int>(std::ceil(4.0 * std::norm(z)));
  out.out_of_regime = set.out_of_regime || sub.cutoff() > space.dim() - margin;
  return out;
}

double intertwining_check(const RieszMap& map, Complex z, const SafeSubspace& sub) {
  require_same_space(map.space(), sub.space(), "intertwining_check");
  const DisplacementSet set = displaced_pair(map, z);
  const Operator SSdag = map.S() * map.S().adjoint();
  const Operator defect = SSdag * set.V - set.U * SSdag;
  return relative(spectral_norm(restrict_in_frame(defect, map, sub)),
                  spectral_norm(SSdag.matrix()));
}

double group_law_defect(const FockSpace& space, Complex z, Complex w, const SafeSubspace& sub) {
  require_same_space(space, sub.space(), "group_law_defect");
  const Operator lhs = weyl(space, z).W * weyl(space, w).W;
  const Complex phase = std::exp(Complex(0.0, std::imag(z * std::conj(w))));
  const Operator rhs = phase * weyl(space, z + w).W;
  return spectral_norm(restrict(lhs - rhs, sub));
}

}  // namespace rbcs
