#pragma once

#include <cstdint>
#include <utility>

#include "rbcs/fock.hpp"
#include "rbcs/pseudo_boson.hpp"
#include "rbcs/quadrature.hpp"
#include "rbcs/riesz.hpp"

namespace rbcs {

/// Phi(z) = e^{-|z|^2/2} sum_{k<dim} z^k / sqrt(k!) e_k. tail_bound bounds
/// the norm of the omitted part of the series, so 1 - ||vec||^2 is at most
/// tail_bound^2.
struct CoherentState {
  Complex z;
  Vector vec;
  double tail_bound = 0.0;
};

/// e^{-|z|^2/2} (sum_{k >= dim} |z|^{2k} / k!)^{1/2}, bounded by the
/// geometric majorant |z|^{2 dim} / dim! * 1 / (1 - |z|^2 / (dim + 1)).
/// Returns 1 when the majorant does not apply.
double coherent_tail_bound(int dim, Complex z);

CoherentState coherent(const FockSpace& space, Complex z);

/// eta(z) = S Phi(z) and xi(z) = (S^-1)† Phi(z).
struct BicoherentPair {
  Complex z;
  Vector eta;
  Vector xi;
  double tail_bound = 0.0;
  std::uint64_t source = 0;
};

BicoherentPair rbcs(const RieszMap& map, Complex z);

/// phi(z) = e^{-|z|^2/2} sum_n z^n / sqrt(n!) phi_n and the psi analogue,
/// with phi_n, psi_n climbed from the given vacua by the ladder recursion.
std::pair<Vector, Vector> series_route(const RieszMap& map, Complex z, const VacuumPair& vac);

struct EigenResidual {
  double a_eta = 0.0;    // ||a eta - z eta|| / ||eta||
  double bdag_xi = 0.0;  // ||b† xi - z xi|| / ||xi||
};

/// Throws provenance_mismatch when pair and states come from different maps.
EigenResidual eigen_check(const PseudoBosonPair& pair, const BicoherentPair& bc);

/// R = sum over nodes of weight * |eta(z)><xi(z)|, the discretised
/// (1/pi) \int d^2z |eta(z)><xi(z)|. Does not check resolution.
Matrix assemble_resolution(const RieszMap& map, const QuadratureScheme& quad);

/// ||R - 1||. Throws under_resolved unless quad.resolves(dim).
double resolution_of_identity(const RieszMap& map, const QuadratureScheme& quad);

/// (<f, g>, discretised (1/pi) \int d^2z <f, eta(z)><xi(z), g>).
std::pair<Complex, Complex> weak_pairing_check(const RieszMap& map, const QuadratureScheme& quad,
                                               const Vector& f, const Vector& g);

}  // namespace rbcs
