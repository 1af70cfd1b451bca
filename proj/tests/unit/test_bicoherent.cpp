#include <doctest.h>

#include <cmath>
#include <random>

#include "rbcs/bicoherent.hpp"
#include "rbcs/coordinate.hpp"

using namespace rbcs;

namespace {

RieszMap identity_map(int d) {
  const FockSpace space(d);
  return make_riesz_map(Operator::identity(space), Operator::identity(space));
}

// sqrt(1 - ||Phi_trunc||^2) = e^{-|z|^2/2} (sum_{k >= d} |z|^{2k} / k!)^{1/2}, summed directly.
double exact_tail(int d, Complex z) {
  const double x = std::norm(z);
  double term = std::exp(-x);
  for (int k = 1; k <= d; ++k) term *= x / k;
  double sum = 0.0;
  for (int k = d; k < d + 400 && term > 0.0; ++k) {
    sum += term;
    term *= x / (k + 1);
  }
  return std::sqrt(sum);
}

}  // namespace

TEST_CASE("coherent vectors") {
  const FockSpace space(64);
  const CoherentState vac = coherent(space, 0.0);
  CHECK((vac.vec - space.basis(0)).norm() == 0.0);
  CHECK(vac.tail_bound == 0.0);
  // <Phi(z), Phi(w)> = e^{-(|z|^2 + |w|^2)/2 + conj(z) w}
  const Complex z(0.8, -0.3);
  const Complex w(-0.5, 1.1);
  const Complex expected = std::exp(-0.5 * (std::norm(z) + std::norm(w)) + std::conj(z) * w);
  CHECK(std::abs(inner(coherent(space, z).vec, coherent(space, w).vec) - expected) < 1e-14);
  // large |z| and dim: no overflow in z^n or n!
  const CoherentState big = coherent(FockSpace(400), Complex(12.0, 5.0));
  CHECK(big.vec.allFinite());
  CHECK(big.vec.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tail bound dominates the omitted mass") {
  for (int d : {8, 16, 32}) {
    for (double r : {0.5, 1.0, 2.0}) {
      const Complex z = std::polar(r, 0.7);
      const CoherentState s = coherent(FockSpace(d), z);
      const double tail = exact_tail(d, z);
      CAPTURE(d);
      CAPTURE(r);
      CHECK(s.tail_bound >= tail * (1 - 1e-12));
      CHECK(s.tail_bound <= 2.0 * tail + 1e-300);
      CHECK(1.0 - s.vec.squaredNorm() <= s.tail_bound * s.tail_bound + 1e-15);
    }
  }
  CHECK(coherent_tail_bound(4, Complex(3.0, 0.0)) == 1.0);
}

TEST_CASE("bicoherent pair properties") {
  const FockSpace space(64);
  const RieszMap map = random_riesz_map(space, 10.0, 3);
  const PseudoBosonPair pair = make_pseudo_boson_pair(map);
  const VacuumPair vac = aligned_to(vacua(pair), map.S().matrix().col(0));
  for (Complex z : {Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(1.0, 1.0), Complex(0.0, -2.0),
                    Complex(-1.2, 1.5)}) {
    CAPTURE(z);
    const BicoherentPair bc = rbcs::rbcs(map, z);
    CHECK(bc.source == map.fingerprint());
    CHECK(std::abs(inner(bc.eta, bc.xi) - 1.0) <= 1e-11);
    const EigenResidual e = eigen_check(pair, bc);
    CHECK(e.a_eta <= 1e-10);
    CHECK(e.bdag_xi <= 1e-10);
    const auto [phi, psi] = series_route(map, z, vac);
    CHECK((phi - bc.eta).norm() <= 1e-10 * bc.eta.norm());
    CHECK((psi - bc.xi).norm() <= 1e-10 * bc.xi.norm());
  }
  const RieszMap other = random_riesz_map(space, 10.0, 4);
  CHECK_THROWS_AS(eigen_check(pair, rbcs::rbcs(other, 1.0)), Error);
}

TEST_CASE("bosonic limit: eta = xi = Phi") {
  const RieszMap map = identity_map(16);
  const BicoherentPair bc = rbcs::rbcs(map, Complex(0.3, 0.2));
  CHECK((bc.eta - bc.xi).norm() == 0.0);
  CHECK((bc.eta - coherent(map.space(), Complex(0.3, 0.2)).vec).norm() == 0.0);
}

TEST_CASE("resolution of the identity") {
  for (int d : {8, 16}) {
    const FockSpace space(d);
    const QuadratureScheme quad = make_quadrature(d, d, 2 * d + 1);
    CHECK(resolution_of_identity(identity_map(d), quad) <= 1e-10);
    CHECK(resolution_of_identity(projector_map(space, space.basis(0)).map, quad) <= 1e-10);
    CHECK(resolution_of_identity(random_riesz_map(space, 10.0, 2), quad) <= 1e-10);
  }
  // A scheme that does not resolve the dimension is refused.
  const QuadratureScheme coarse(gauss_laguerre(4), 9);
  try {
    resolution_of_identity(identity_map(8), coarse);
    FAIL("expected under-resolved");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::under_resolved);
  }
  // Too few angular nodes alias e^{i(n-m) theta}: the unchecked assembly shows it.
  const QuadratureScheme aliased(gauss_laguerre(8), 4);
  const Matrix R = assemble_resolution(identity_map(8), aliased);
  CHECK(spectral_norm(R - Matrix::Identity(8, 8)) > 1e-3);
}

TEST_CASE("weak pairing through the bicoherent states") {
  const FockSpace space(12);
  const RieszMap map = random_riesz_map(space, 5.0, 8);
  const QuadratureScheme quad = make_quadrature(12, 12, 25);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Vector f(12), h(12);
  for (int i = 0; i < 12; ++i) {
    f(i) = Complex(g(rng), g(rng));
    h(i) = Complex(g(rng), g(rng));
  }
  const auto [direct, integral] = weak_pairing_check(map, quad, f, h);
  CHECK(std::abs(direct - integral) <= 1e-10 * f.norm() * h.norm());
}
