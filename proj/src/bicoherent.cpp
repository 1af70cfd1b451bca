#include "rbcs/bicoherent.hpp"

#include <cmath>
#include <string>

namespace rbcs {
namespace {

// e^{-|z|^2/2} z^k / sqrt(k!) for k < dim, in log-magnitude form so that
// neither z^k nor k! is ever formed.
Vector coherent_coefficients(int dim, Complex z) {
  Vector out = Vector::Zero(dim);
  const double r = std::abs(z);
  if (r == 0.0) {
    out(0) = 1.0;
    return out;
  }
  const double log_r = std::log(r);
  const double arg = std::arg(z);
  const double half_norm = 0.5 * r * r;
  for (int k = 0; k < dim; ++k) {
    const double log_mag = k * log_r - 0.5 * std::lgamma(k + 1.0) - half_norm;
    out(k) = std::polar(std::exp(log_mag), k * arg);
  }
  return out;
}

void require_source(const RieszMap& map, std::uint64_t source, const char* where) {
  if (map.fingerprint() != source) {
    throw Error(Errc::provenance_mismatch, std::string(where) + ": inputs from different maps");
  }
}

}  // namespace

double coherent_tail_bound(int dim, Complex z) {
  const double x = std::norm(z);
  if (x == 0.0) return 0.0;
  if (x >= dim + 1.0) return 1.0;
  // e^{-x} x^d / d! / (1 - x/(d+1)), then the square root.
  const double log_tail =
      -x + dim * std::log(x) - std::lgamma(dim + 1.0) - std::log1p(-x / (dim + 1.0));
  return std::min(1.0, std::exp(0.5 * log_tail));
}

CoherentState coherent(const FockSpace& space, Complex z) {
  return CoherentState{z, coherent_coefficients(space.dim(), z),
                       coherent_tail_bound(space.dim(), z)};
}

BicoherentPair rbcs(const RieszMap& map, Complex z) {
  const CoherentState phi = coherent(map.space(), z);
  return BicoherentPair{z, map.S().matrix() * phi.vec,
                        map.S_inv().matrix().adjoint() * phi.vec, phi.tail_bound,
                        map.fingerprint()};
}

std::pair<Vector, Vector> series_route(const RieszMap& map, Complex z, const VacuumPair& vac) {
  const int d = map.dim();
  const PseudoBosonPair pair = make_pseudo_boson_pair(map);
  const BiorthogonalFamily fam = excited_states(pair, vac, d - 1);
  const Vector coef = coherent_coefficients(d, z);
  Vector phi = Vector::Zero(d);
  Vector psi = Vector::Zero(d);
  for (int n = 0; n < d; ++n) {
    phi += coef(n) * fam.phi[n];
    psi += coef(n) * fam.psi[n];
  }
  return {std::move(phi), std::move(psi)};
}

EigenResidual eigen_check(const PseudoBosonPair& pair, const BicoherentPair& bc) {
  require_source(pair.source, bc.source, "eigen_check");
  const Vector a_eta = pair.a.apply(bc.eta);
  const Vector bdag_xi = pair.b.matrix().adjoint() * bc.xi;
  return EigenResidual{(a_eta - bc.z * bc.eta).norm() / bc.eta.norm(),
                       (bdag_xi - bc.z * bc.xi).norm() / bc.xi.norm()};
}

Matrix assemble_resolution(const RieszMap& map, const QuadratureScheme& quad) {
  const int d = map.dim();
  const int nodes = quad.size();
  Matrix weighted(d, nodes);
  Matrix plain(d, nodes);
  for (int idx = 0; idx < nodes; ++idx) {
    const Vector phi = coherent_coefficients(d, quad.node(idx));
    weighted.col(idx) = quad.weight(idx) * phi;
    plain.col(idx) = phi;
  }
  // sum_nodes w |eta><xi| = S (sum_nodes w |Phi><Phi|) S^-1, assembled from
  // the eta and xi columns themselves.
  const Matrix eta = map.S().matrix() * weighted;
  const Matrix xi = map.S_inv().matrix().adjoint() * plain;
  return eta * xi.adjoint();
}

double resolution_of_identity(const RieszMap& map, const QuadratureScheme& quad) {
  if (!quad.resolves(map.dim())) {
    throw Error(Errc::under_resolved,
                "quadrature with " + std::to_string(quad.radial_count()) + " radial and " +
                    std::to_string(quad.angular_count()) + " angular nodes cannot resolve dim " +
                    std::to_string(map.dim()));
  }
  const Matrix R = assemble_resolution(map, quad);
  return spectral_norm(R - Matrix::Identity(map.dim(), map.dim()));
}

std::pair<Complex, Complex> weak_pairing_check(const RieszMap& map, const QuadratureScheme& quad,
                                               const Vector& f, const Vector& g) {
  require_vector_dim(map.space(), f, "weak_pairing_check");
  require_vector_dim(map.space(), g, "weak_pairing_check");
  if (!quad.resolves(map.dim())) {
    throw Error(Errc::under_resolved, "quadrature cannot resolve dim " +
                                          std::to_string(map.dim()));
  }
  Complex integral(0.0);
  for (int idx = 0; idx < quad.size(); ++idx) {
    const BicoherentPair bc = rbcs(map, quad.node(idx));
    integral += quad.weight(idx) * inner(f, bc.eta) * inner(bc.xi, g);
  }
  return {inner(f, g), integral};
}

}  // namespace rbcs
