#include "rbcs/pseudo_boson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "extended.hpp"

namespace rbcs {
namespace {

constexpr double kDegenerateGap = 1e-8;
constexpr double kOrthogonalFloor = 1e-10;
constexpr int kPolishSteps = 3;

// Right singular vector of m for its smallest singular value.
Vector kernel_vector(const Matrix& m, const char* which) {
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const Eigen::Index last = s.size() - 1;
  if (s(last - 1) - s(last) < kDegenerateGap) {
    std::ostringstream os;
    os << which << ": two smallest singular values " << s(last - 1) << " and " << s(last)
       << " are not separated";
    throw Error(Errc::degenerate_vacuum, os.str());
  }
  return svd.matrixV().col(last);
}

// Iterative refinement of a double kernel vector onto the kernel of the extended
// operator `apply`: residuals in extended precision, corrections from the rank-(d-1)
// pseudo-inverse of the double matrix m. Leaves the kernel component alone.
template <class Apply>
detail::QVector polish_kernel(const Matrix& m, const Vector& v, const Apply& apply) {
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const Eigen::Index rank = s.size() - 1;
  const Matrix pinv = svd.matrixV().leftCols(rank) *
                      s.head(rank).cwiseInverse().asDiagonal() *
                      svd.matrixU().leftCols(rank).adjoint();
  detail::QVector q = detail::to_quad(v);
  for (int step = 0; step < kPolishSteps; ++step) {
    const Vector correction = pinv * detail::to_double(apply(q));
    for (Eigen::Index k = 0; k < correction.size(); ++k) {
      q[k] = q[k] - detail::QComplex{correction(k).real(), correction(k).imag()};
    }
  }
  return q;
}

double default_tolerance(const PseudoBosonPair& pair, double requested) {
  return requested > 0.0 ? requested : 1e-10 * pair.source.cond();
}

void check_family(const PseudoBosonPair& pair, const BiorthogonalFamily& fam, int min_size) {
  if (fam.size() < min_size) {
    throw Error(Errc::out_of_range, "family needs at least " + std::to_string(min_size) +
                                        " members, has " + std::to_string(fam.size()));
  }
  for (int n = 0; n < fam.size(); ++n) {
    require_vector_dim(pair.space(), fam.phi[n], "family");
    require_vector_dim(pair.space(), fam.psi[n], "family");
  }
}

}  // namespace

PseudoBosonPair make_pseudo_boson_pair(const RieszMap& map) {
  const Operator& S = map.S();
  const Operator& S_inv = map.S_inv();
  const FockSpace& space = map.space();
  return PseudoBosonPair{S * ladder_c(space) * S_inv, S * ladder_c_dag(space) * S_inv, map};
}

VacuumPair VacuumPair::rescaled(Complex s) const {
  return VacuumPair{s * phi0, psi0 / std::conj(s), normalization / std::conj(s)};
}

VacuumPair vacua(const PseudoBosonPair& pair) {
  Vector phi0 = kernel_vector(pair.a.matrix(), "a");
  Vector psi0 = kernel_vector(pair.b.matrix().adjoint(), "b-dagger");

  Eigen::Index largest = 0;
  phi0.cwiseAbs().maxCoeff(&largest);
  phi0 *= std::abs(phi0(largest)) / phi0(largest);
  phi0(largest) = std::abs(phi0(largest));

  const Complex overlap = inner(phi0, psi0);
  if (std::abs(overlap) < kOrthogonalFloor) {
    std::ostringstream os;
    os << "|<phi0, psi0>| = " << std::abs(overlap);
    throw Error(Errc::orthogonal_vacua, os.str());
  }
  const Complex normalization = 1.0 / overlap;
  return VacuumPair{std::move(phi0), psi0 * normalization, normalization};
}

VacuumPair closed_form_vacua(const RieszMap& map) {
  return VacuumPair{map.S().matrix().col(0), map.S_inv().matrix().adjoint().col(0),
                    Complex(1.0)};
}

VacuumPair aligned_to(const VacuumPair& vac, const Vector& reference) {
  const Complex s = inner(vac.phi0, reference) / vac.phi0.squaredNorm();
  return vac.rescaled(s);
}

double direction_mismatch(const Vector& u, const Vector& w) {
  const Vector uh = u.normalized();
  const Vector wh = w.normalized();
  return (uh - wh * inner(wh, uh)).norm();
}

BiorthogonalFamily excited_states(const PseudoBosonPair& pair, const VacuumPair& vac, int n_max) {
  const int d = pair.space().dim();
  if (n_max < 0 || n_max > d - 1) {
    throw Error(Errc::out_of_range, "n_max " + std::to_string(n_max) + " outside [0, " +
                                        std::to_string(d - 1) + "]");
  }
  require_vector_dim(pair.space(), vac.phi0, "excited_states");
  require_vector_dim(pair.space(), vac.psi0, "excited_states");

  // a = S c X, b = S c† X, a† = X† c† S†, b† = X† c S† with X = S^-1 refined in extended precision.
  const Matrix& S = pair.source.S().matrix();
  const detail::QMatrix Sq(S);
  const detail::QMatrix X = detail::refined_inverse(S, pair.source.S_inv().matrix());
  const auto apply_a = [&](const detail::QVector& f) {
    return Sq.apply(detail::lower(X.apply(f)));
  };
  const auto apply_b = [&](const detail::QVector& f) {
    return Sq.apply(detail::raise(X.apply(f)));
  };
  const auto apply_a_dag = [&](const detail::QVector& f) {
    return X.apply_adjoint(detail::raise(Sq.apply_adjoint(f)));
  };
  const auto apply_b_dag = [&](const detail::QVector& f) {
    return X.apply_adjoint(detail::lower(Sq.apply_adjoint(f)));
  };
  detail::QVector phi = polish_kernel(pair.a.matrix(), vac.phi0, apply_a);
  detail::QVector psi = polish_kernel(pair.b.matrix().adjoint(), vac.psi0, apply_b_dag);

  BiorthogonalFamily fam;
  fam.phi.reserve(n_max + 1);
  fam.psi.reserve(n_max + 1);
  fam.phi.push_back(vac.phi0);
  fam.psi.push_back(vac.psi0);
  for (int n = 1; n <= n_max; ++n) {
    const detail::Quad scale = detail::Quad(1) / detail::quad_sqrt(n);
    phi = apply_b(phi);
    psi = apply_a_dag(psi);
    for (int k = 0; k < d; ++k) {
      phi[k] = scale * phi[k];
      psi[k] = scale * psi[k];
    }
    fam.phi.push_back(detail::to_double(phi));
    fam.psi.push_back(detail::to_double(psi));
  }
  return fam;
}

ResidualReport ladder_check(const PseudoBosonPair& pair, const BiorthogonalFamily& fam,
                            double tolerance) {
  check_family(pair, fam, 2);
  const double tol = default_tolerance(pair, tolerance);
  const Matrix& a = pair.a.matrix();
  const Matrix& b = pair.b.matrix();
  const Matrix a_dag = a.adjoint();
  const Matrix b_dag = b.adjoint();
  // One level of margin below the truncation corner.
  const int top = std::min(fam.size() - 1, pair.space().dim() - 2);

  ResidualReport report;
  for (int n = 0; n <= top; ++n) {
    const double up = std::sqrt(static_cast<double>(n + 1));
    const double down = std::sqrt(static_cast<double>(n));
    if (n + 1 < fam.size()) {
      report.push_back({"ladder.b_phi", n, (b * fam.phi[n] - up * fam.phi[n + 1]).norm(), tol});
      report.push_back(
          {"ladder.adag_psi", n, (a_dag * fam.psi[n] - up * fam.psi[n + 1]).norm(), tol});
    }
    const Vector phi_below = n > 0 ? fam.phi[n - 1] : Vector::Zero(fam.phi[n].size());
    const Vector psi_below = n > 0 ? fam.psi[n - 1] : Vector::Zero(fam.psi[n].size());
    report.push_back({"ladder.a_phi", n, (a * fam.phi[n] - down * phi_below).norm(), tol});
    report.push_back({"ladder.bdag_psi", n, (b_dag * fam.psi[n] - down * psi_below).norm(), tol});
  }
  return report;
}

ResidualReport number_operator_check(const PseudoBosonPair& pair, const BiorthogonalFamily& fam,
                                     double tolerance) {
  check_family(pair, fam, 1);
  const double tol = default_tolerance(pair, tolerance);
  const Matrix N = pair.number().matrix();
  const Matrix N_dag = N.adjoint();
  // Two ladder applications: exclude the top level.
  const int top = std::min(fam.size() - 1, pair.space().dim() - 2);

  ResidualReport report;
  for (int n = 0; n <= top; ++n) {
    report.push_back({"number.N_phi", n, (N * fam.phi[n] - n * fam.phi[n]).norm(), tol});
    report.push_back({"number.Ndag_psi", n, (N_dag * fam.psi[n] - n * fam.psi[n]).norm(), tol});
  }
  return report;
}

std::vector<Complex> number_spectrum(const PseudoBosonPair& pair) {
  Eigen::ComplexEigenSolver<Matrix> solver(pair.number().matrix(), false);
  const auto& ev = solver.eigenvalues();
  std::vector<Complex> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end(),
            [](Complex x, Complex y) { return x.real() < y.real(); });
  return out;
}

double number_spectrum_defect(const PseudoBosonPair& pair) {
  const auto spectrum = number_spectrum(pair);
  double worst = 0.0;
  for (int n = 0; n + 1 < static_cast<int>(spectrum.size()); ++n) {
    worst = std::max(worst, std::abs(spectrum[n] - static_cast<double>(n)));
  }
  return worst;
}

Residual theta_conjugacy_check(const PseudoBosonPair& pair, const MetricOperator& metric,
                               const SafeSubspace& sub) {
  if (metric.source != pair.source.fingerprint()) {
    throw Error(Errc::provenance_mismatch, "metric and pair come from different maps");
  }
  const Operator conjugated = metric.theta_inv * pair.b.adjoint() * metric.theta;
  const double cond = pair.source.cond();
  return Residual{"conjugacy.theta", -1,
                  spectral_norm(restrict_in_frame(pair.a - conjugated, pair.source, sub)),
                  1e-10 * cond * cond * cond};
}

double theta_positivity(const MetricOperator& metric, int samples, std::uint64_t seed) {
  const Matrix& theta = metric.theta.matrix();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double lowest = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    Vector f(theta.rows());
    for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = Complex(normal(rng), normal(rng));
    lowest = std::min(lowest, inner(f, theta * f).real() / f.squaredNorm());
  }
  return lowest;
}

double ccr_defect(const PseudoBosonPair& pair, const SafeSubspace& sub) {
  const Operator defect = commutator(pair.a, pair.b) - Operator::identity(pair.space());
  return spectral_norm(restrict_in_frame(defect, pair.source, sub));
}

}  // namespace rbcs
