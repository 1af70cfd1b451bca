#include "rbcs/riesz.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace rbcs {
namespace {

constexpr double kSingularFloor = 1e-13;
constexpr double kInverseSlack = 1e-12;
constexpr const char* kSchema = "rbcs.riesz_map/1";

std::uint64_t fingerprint_of(const Matrix& m) {
  // FNV-1a over the raw entries.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* data, std::size_t bytes) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < bytes; ++i) {
      h ^= p[i];
      h *= 1099511628211ull;
    }
  };
  const auto rows = static_cast<std::int64_t>(m.rows());
  mix(&rows, sizeof rows);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double parts[2] = {m(i, j).real(), m(i, j).imag()};
      mix(parts, sizeof parts);
    }
  }
  return h;
}

void check_spectrum(const Eigen::VectorXd& sigma, double max_cond) {
  const double smax = sigma(0);
  const double smin = sigma(sigma.size() - 1);
  if (!(smax > 0.0) || smin <= kSingularFloor * smax) {
    std::ostringstream os;
    os << "sigma_min/sigma_max = " << (smax > 0.0 ? smin / smax : 0.0) << " <= "
       << kSingularFloor;
    throw Error(Errc::not_invertible, os.str());
  }
  if (smax / smin > max_cond) {
    std::ostringstream os;
    os << "condition number " << smax / smin << " exceeds " << max_cond;
    throw Error(Errc::ill_conditioned, os.str());
  }
}

double verified_inverse_residual(const Matrix& S, const Matrix& S_inv, double cond) {
  const Eigen::Index d = S.rows();
  const double residual = spectral_norm(S * S_inv - Matrix::Identity(d, d));
  if (residual > kInverseSlack * cond) {
    std::ostringstream os;
    os << "||S S^-1 - I|| = " << residual << " exceeds " << kInverseSlack * cond;
    throw Error(Errc::not_invertible, os.str());
  }
  return residual;
}

Matrix haar_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix z(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) z(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase of each column so the distribution is Haar.
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  return q;
}

}  // namespace

RieszMap::RieszMap(Operator S, Operator S_inv, Eigen::VectorXd sigma, double inverse_residual)
    : S_(std::move(S)),
      S_inv_(std::move(S_inv)),
      sigma_(std::move(sigma)),
      inverse_residual_(inverse_residual),
      fingerprint_(fingerprint_of(S_.matrix())) {}

FrameBounds RieszMap::frame_bounds() const {
  const double smax = sigma_(0);
  const double smin = sigma_(sigma_.size() - 1);
  return {smin * smin, smax * smax};
}

RieszMap make_riesz_map(const Operator& S, double max_cond) {
  Eigen::BDCSVD<Matrix> svd(S.matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd sigma = svd.singularValues();
  check_spectrum(sigma, max_cond);
  const double cond = sigma(0) / sigma(sigma.size() - 1);
  Matrix inv = svd.matrixV() * sigma.cwiseInverse().cast<Complex>().asDiagonal() *
               svd.matrixU().adjoint();
  const double residual = verified_inverse_residual(S.matrix(), inv, cond);
  return RieszMap(S, Operator(S.space(), std::move(inv)), std::move(sigma), residual);
}

RieszMap make_riesz_map(const Operator& S, const Operator& S_inv, double max_cond) {
  require_same_space(S.space(), S_inv.space(), "make_riesz_map");
  Eigen::VectorXd sigma = Eigen::BDCSVD<Matrix>(S.matrix()).singularValues();
  check_spectrum(sigma, max_cond);
  const double cond = sigma(0) / sigma(sigma.size() - 1);
  const double residual = verified_inverse_residual(S.matrix(), S_inv.matrix(), cond);
  return RieszMap(S, S_inv, std::move(sigma), residual);
}

RieszMap random_riesz_map(const FockSpace& space, double target_cond, std::uint64_t seed,
                          double max_cond) {
  if (!(target_cond >= 1.0) || !std::isfinite(target_cond)) {
    throw Error(Errc::out_of_range, "target condition number must be >= 1");
  }
  const int d = space.dim();
  std::mt19937_64 rng(seed);
  const Matrix U = haar_unitary(d, rng);
  const Matrix V = haar_unitary(d, rng);
  Eigen::VectorXd sigma(d);
  for (int k = 0; k < d; ++k) {
    sigma(k) = std::pow(target_cond, static_cast<double>(k) / static_cast<double>(d - 1));
  }
  Matrix S = U * sigma.cast<Complex>().asDiagonal() * V.adjoint();
  Matrix S_inv = V * sigma.cwiseInverse().cast<Complex>().asDiagonal() * U.adjoint();
  return make_riesz_map(Operator(space, std::move(S)), Operator(space, std::move(S_inv)),
                        max_cond);
}

BiorthogonalFamily biorthogonal_family(const RieszMap& map) {
  const int d = map.dim();
  const Matrix& S = map.S().matrix();
  const Matrix dual = map.S_inv().matrix().adjoint();
  BiorthogonalFamily fam;
  fam.phi.reserve(d);
  fam.psi.reserve(d);
  for (int n = 0; n < d; ++n) {
    fam.phi.emplace_back(S.col(n));
    fam.psi.emplace_back(dual.col(n));
  }
  return fam;
}

double biorthogonality_defect(const BiorthogonalFamily& fam) {
  double worst = 0.0;
  for (int n = 0; n < fam.size(); ++n) {
    for (int m = 0; m < fam.size(); ++m) {
      const Complex expected = (n == m) ? Complex(1.0) : Complex(0.0);
      worst = std::max(worst, std::abs(inner(fam.phi[n], fam.psi[m]) - expected));
    }
  }
  return worst;
}

double frame_bound_violation(const RieszMap& map, int samples, std::uint64_t seed) {
  const auto [A, B] = map.frame_bounds();
  const Matrix Sdag = map.S().matrix().adjoint();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    Vector f(map.dim());
    for (int i = 0; i < map.dim(); ++i) f(i) = Complex(normal(rng), normal(rng));
    f.normalize();
    const double energy = (Sdag * f).squaredNorm();
    worst = std::max({worst, (A - energy) / B, (energy - B) / B});
  }
  return worst;
}

MetricOperator metric_operator(const RieszMap& map) {
  const Matrix& S = map.S().matrix();
  const Matrix& S_inv = map.S_inv().matrix();
  return MetricOperator{Operator(map.space(), S_inv.adjoint() * S_inv),
                        Operator(map.space(), S * S.adjoint()), map.fingerprint()};
}

std::pair<Operator, Operator> theta_rank_one_sums(const BiorthogonalFamily& fam) {
  if (fam.size() == 0) throw Error(Errc::out_of_range, "empty biorthogonal family");
  const auto d = fam.phi.front().size();
  Matrix theta = Matrix::Zero(d, d);
  Matrix theta_inv = Matrix::Zero(d, d);
  for (int n = 0; n < fam.size(); ++n) {
    theta += fam.psi[n] * fam.psi[n].adjoint();
    theta_inv += fam.phi[n] * fam.phi[n].adjoint();
  }
  const FockSpace space(static_cast<int>(d));
  return {Operator(space, std::move(theta)), Operator(space, std::move(theta_inv))};
}

PairingTriple quasi_basis_check(const BiorthogonalFamily& fam, const Vector& f, const Vector& g) {
  PairingTriple out{inner(f, g), Complex(0.0), Complex(0.0)};
  for (int n = 0; n < fam.size(); ++n) {
    out.via_phi_psi += inner(f, fam.phi[n]) * inner(fam.psi[n], g);
    out.via_psi_phi += inner(f, fam.psi[n]) * inner(fam.phi[n], g);
  }
  return out;
}

Matrix restrict_in_frame(const Operator& X, const RieszMap& map, const SafeSubspace& sub) {
  require_same_space(X.space(), map.space(), "restrict_in_frame");
  const Operator framed = map.S_inv() * X * map.S();
  return restrict(framed, sub);
}

Matrix restrict_in_dual_frame(const Operator& X, const RieszMap& map, const SafeSubspace& sub) {
  require_same_space(X.space(), map.space(), "restrict_in_dual_frame");
  const Operator framed = map.S().adjoint() * X * map.S_inv().adjoint();
  return restrict(framed, sub);
}

nlohmann::json to_json(const RieszMap& map) {
  const Matrix& S = map.S().matrix();
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < S.rows(); ++i)
    for (Eigen::Index j = 0; j < S.cols(); ++j)
      entries.push_back({S(i, j).real(), S(i, j).imag()});
  return {{"schema", kSchema}, {"dim", map.dim()}, {"entries", std::move(entries)}};
}

RieszMap riesz_map_from_json(const nlohmann::json& j, double max_cond) {
  try {
    if (j.at("schema").get<std::string>() != kSchema) {
      throw Error(Errc::config, "unsupported riesz map schema " + j.at("schema").dump());
    }
    const int d = j.at("dim").get<int>();
    const FockSpace space(d);
    const auto& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != static_cast<std::size_t>(d) * d) {
      throw Error(Errc::config, "riesz map needs dim*dim entries");
    }
    Matrix S(d, d);
    for (int i = 0; i < d; ++i) {
      for (int k = 0; k < d; ++k) {
        const auto& e = entries.at(static_cast<std::size_t>(i) * d + k);
        S(i, k) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
      }
    }
    return make_riesz_map(Operator(space, std::move(S)), max_cond);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::config, std::string("malformed riesz map: ") + e.what());
  }
}

void save_riesz_map(const RieszMap& map, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  out << to_json(map).dump(1) << '\n';
}

RieszMap load_riesz_map(const std::filesystem::path& path, double max_cond) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot read " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::config, path.string() + ": " + e.what());
  }
  return riesz_map_from_json(j, max_cond);
}

}  // namespace rbcs
