#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <vector>

#include <json.hpp>

#include "rbcs/fock.hpp"

namespace rbcs {

/// Riesz bounds of the family {S e_n}: A = sigma_min^2, B = sigma_max^2.
struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Maps above this condition number are rejected unless the caller says
/// otherwise.
inline constexpr double kDefaultMaxCond = 1e4;

/// A bounded operator S with bounded inverse, mapping the orthonormal basis
/// {e_n} onto a Riesz basis {phi_n = S e_n}. The inverse and the singular
/// values are computed once, at construction.
class RieszMap {
 public:
  const FockSpace& space() const noexcept { return S_.space(); }
  int dim() const noexcept { return S_.dim(); }
  const Operator& S() const noexcept { return S_; }
  const Operator& S_inv() const noexcept { return S_inv_; }
  /// Singular values of S, descending.
  const Eigen::VectorXd& singular_values() const noexcept { return sigma_; }
  double cond() const noexcept { return sigma_(0) / sigma_(sigma_.size() - 1); }
  FrameBounds frame_bounds() const;
  /// ||S|| and ||S^-1||.
  double norm() const noexcept { return sigma_(0); }
  double inv_norm() const noexcept { return 1.0 / sigma_(sigma_.size() - 1); }
  /// ||S S^-1 - I|| measured when the map was built.
  double inverse_residual() const noexcept { return inverse_residual_; }
  /// Hash of the entries of S; objects derived from a map carry it so that
  /// checks can refuse to mix inputs of different provenance.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

 private:
  RieszMap(Operator S, Operator S_inv, Eigen::VectorXd sigma, double inverse_residual);

  friend RieszMap make_riesz_map(const Operator& S, double max_cond);
  friend RieszMap make_riesz_map(const Operator& S, const Operator& S_inv, double max_cond);

  Operator S_;
  Operator S_inv_;
  Eigen::VectorXd sigma_;
  double inverse_residual_;
  std::uint64_t fingerprint_;
};

/// Inverts S through its SVD. Throws not_invertible when
/// sigma_min <= 1e-13 sigma_max, ill_conditioned when cond > max_cond.
RieszMap make_riesz_map(const Operator& S, double max_cond = kDefaultMaxCond);

/// Same, with an inverse known in closed form. The pair is still verified:
/// ||S S_inv - I|| must stay below 1e-12 cond.
RieszMap make_riesz_map(const Operator& S, const Operator& S_inv,
                        double max_cond = kDefaultMaxCond);

/// Deterministic S = U diag(sigma) V† with Haar-distributed U, V drawn from
/// `seed` and singular values spaced geometrically on [1, target_cond].
RieszMap random_riesz_map(const FockSpace& space, double target_cond, std::uint64_t seed,
                          double max_cond = kDefaultMaxCond);

/// phi_n = S e_n and psi_n = (S^-1)† e_n. A family built by the ladder
/// recursion may hold fewer than dim members.
struct BiorthogonalFamily {
  std::vector<Vector> phi;
  std::vector<Vector> psi;

  int size() const { return static_cast<int>(phi.size()); }
};

BiorthogonalFamily biorthogonal_family(const RieszMap& map);

/// max_{n,m} |<phi_n, psi_m> - delta_nm|.
double biorthogonality_defect(const BiorthogonalFamily& fam);

/// Largest violation of A <= ||S† f||^2 <= B, relative to B, over `samples`
/// seeded random unit vectors. Zero when the bounds hold.
double frame_bound_violation(const RieszMap& map, int samples, std::uint64_t seed);

/// Theta maps phi_n onto psi_n: Theta = (S S†)^-1 = (S^-1)† S^-1, and
/// Theta^-1 = S S†. Both are self-adjoint and positive.
struct MetricOperator {
  Operator theta;
  Operator theta_inv;
  std::uint64_t source = 0;
};

MetricOperator metric_operator(const RieszMap& map);

/// (sum_n |psi_n><psi_n|, sum_n |phi_n><phi_n|), accumulated one rank-one
/// term at a time. For a full family these equal Theta and Theta^-1.
std::pair<Operator, Operator> theta_rank_one_sums(const BiorthogonalFamily& fam);

struct PairingTriple {
  Complex direct;       // <f, g>
  Complex via_phi_psi;  // sum_n <f, phi_n><psi_n, g>
  Complex via_psi_phi;  // sum_n <f, psi_n><phi_n, g>
};

PairingTriple quasi_basis_check(const BiorthogonalFamily& fam, const Vector& f, const Vector& g);

/// Top-left cutoff block of S^-1 X S: X written in the basis {phi_n} and
/// restricted to its first `cutoff` members. Operators built from (a, b)
/// are measured through this, since their low-lying levels are the phi_n.
Matrix restrict_in_frame(const Operator& X, const RieszMap& map, const SafeSubspace& sub);

/// Same for operators whose low-lying levels are the psi_n = (S^-1)† e_n
/// (built from a† and b†): top-left block of S† X (S^-1)†.
Matrix restrict_in_dual_frame(const Operator& X, const RieszMap& map, const SafeSubspace& sub);

// Serialization: {"schema", "dim", "entries": [[re, im], ...]} with the
// entries of S in row-major order. Loading re-runs make_riesz_map.
nlohmann::json to_json(const RieszMap& map);
RieszMap riesz_map_from_json(const nlohmann::json& j, double max_cond = kDefaultMaxCond);
void save_riesz_map(const RieszMap& map, const std::filesystem::path& path);
RieszMap load_riesz_map(const std::filesystem::path& path, double max_cond = kDefaultMaxCond);

}  // namespace rbcs
