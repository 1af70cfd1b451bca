#include "rbcs/suite.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "rbcs/bicoherent.hpp"
#include "rbcs/coordinate.hpp"
#include "rbcs/displacement.hpp"
#include "rbcs/pseudo_boson.hpp"
#include "rbcs/quadrature.hpp"

namespace rbcs {
namespace {

using nlohmann::json;

constexpr int kFrameSamples = 64;
constexpr int kPowerMax = 5;
constexpr int kWavefunctionPoints = 241;

[[noreturn]] void config_error(const std::string& what) { throw Error(Errc::config, what); }

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
  if (!j.is_object()) config_error(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) config_error("unknown key '" + key + "' in " + where);
  }
}

Complex parse_complex(const json& j, const std::string& where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return Complex(j[0].get<double>(), j[1].get<double>());
  }
  config_error(where + " must be a number or [re, im]");
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

MapSpec parse_map(const json& j, const std::filesystem::path& base_dir) {
  reject_unknown_keys(j, {"kind", "u_index", "cond", "seed", "path"}, "map");
  MapSpec spec;
  const std::string kind = j.value("kind", std::string("identity"));
  const auto only = [&](const std::set<std::string>& keys) {
    for (const auto& [key, value] : j.items()) {
      if (key != "kind" && !keys.count(key)) {
        config_error("key '" + key + "' does not apply to map kind '" + kind + "'");
      }
    }
  };
  if (kind == "identity") {
    spec.kind = MapSpec::Kind::identity;
    only({});
  } else if (kind == "projector") {
    spec.kind = MapSpec::Kind::projector;
    only({"u_index"});
    spec.u_index = j.value("u_index", 0);
    if (spec.u_index < 0) config_error("map.u_index must be >= 0");
  } else if (kind == "random") {
    spec.kind = MapSpec::Kind::random;
    only({"cond", "seed"});
    spec.cond = j.value("cond", 10.0);
    spec.seed = j.value("seed", std::uint64_t{1});
    if (!(spec.cond >= 1.0)) config_error("map.cond must be >= 1");
  } else if (kind == "file") {
    spec.kind = MapSpec::Kind::file;
    only({"path"});
    if (!j.contains("path")) config_error("map kind 'file' needs a path");
    spec.path = j.at("path").get<std::string>();
    if (spec.path.is_relative() && !base_dir.empty()) spec.path = base_dir / spec.path;
  } else {
    config_error("unknown map kind '" + kind + "'");
  }
  return spec;
}

std::string map_label(const MapSpec& spec) {
  switch (spec.kind) {
    case MapSpec::Kind::identity: return "identity";
    case MapSpec::Kind::projector: return "projector";
    case MapSpec::Kind::random: return "random";
    case MapSpec::Kind::file: return "file";
  }
  return "unknown";
}

// Collects reports, timing each check and turning exceptions into failures.
class Runner {
 public:
  Runner(const RunConfig& config, std::vector<CheckReport>& out) : config_(config), out_(out) {}

  double base(const std::string& id) const {
    const auto it = config_.tolerances.find(id);
    return it != config_.tolerances.end() ? it->second : default_tolerances().at(id);
  }

  struct Outcome {
    double residual;
    double tolerance;
    json extra = json::object();
    bool out_of_regime = false;
  };

  // Returns false when the check threw.
  bool operator()(const std::string& id, json params, const std::function<Outcome()>& body,
                  bool flagged = false) {
    const auto start = std::chrono::steady_clock::now();
    CheckReport report;
    report.check_id = id;
    bool ok = true;
    try {
      Outcome o = body();
      report.residual = o.residual;
      report.tolerance = o.tolerance;
      for (auto& [key, value] : o.extra.items()) params[key] = value;
      if (report.residual <= report.tolerance) {
        report.status = Status::pass;
      } else {
        report.status = (flagged || o.out_of_regime) ? Status::out_of_regime : Status::fail;
      }
      if (o.out_of_regime) params["out_of_regime"] = true;
    } catch (const std::exception& e) {
      report.residual = std::numeric_limits<double>::infinity();
      report.tolerance = base(id);
      report.status = Status::fail;
      params["error"] = e.what();
      ok = false;
    }
    report.params = std::move(params);
    report.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out_.push_back(std::move(report));
    return ok;
  }

 private:
  const RunConfig& config_;
  std::vector<CheckReport>& out_;
};

Runner::Outcome worst_of(const ResidualReport& rep, double tolerance) {
  Runner::Outcome o{0.0, tolerance};
  int worst_n = -1;
  std::string worst_check;
  for (const auto& r : rep) {
    if (r.residual >= o.residual) {
      o.residual = r.residual;
      worst_n = r.n;
      worst_check = r.check;
    }
  }
  o.extra = {{"worst_n", worst_n}, {"worst_check", worst_check}, {"count", rep.size()}};
  return o;
}

// e^{-|z|^2/2} |z|^{d-1} / sqrt((d-1)!): the coefficient the truncated
// ladder drops in c Phi(z) = z Phi(z).
double top_coefficient(int dim, Complex z) {
  const double r = std::abs(z);
  if (r == 0.0) return 0.0;
  return std::exp((dim - 1) * std::log(r) - 0.5 * std::lgamma(static_cast<double>(dim)) -
                  0.5 * r * r);
}

std::vector<double> wavefunction_grid() {
  std::vector<double> xs(kWavefunctionPoints);
  for (int i = 0; i < kWavefunctionPoints; ++i) {
    xs[i] = -6.0 + 12.0 * i / (kWavefunctionPoints - 1);
  }
  return xs;
}

}  // namespace

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> table = {
      {"riesz.construction", 1e-12},       // x cond
      {"riesz.frame_bounds", 1e-10},
      {"riesz.biorthogonality", 1e-10},
      {"theta.rank_one", 1e-11},           // relative to ||Theta||, ||Theta^-1||
      {"theta.positivity", 1e-10},
      {"pair.ccr", 1e-10},                 // x cond^2
      {"vacua.kernel", 1e-10},             // x cond
      {"vacua.match", 1e-10},              // x cond
      {"vacua.normalization", 1e-12},
      {"ladder.relations", 1e-9},          // x cond
      {"number.relations", 1e-9},          // x cond
      {"number.spectrum", 1e-6},
      {"theta.conjugacy", 1e-10},          // x cond^3
      {"displacement.unitarity", 1e-11},
      {"displacement.power_similarity", 1e-7},
      {"displacement.bch", 1e-8},
      {"displacement.intertwining", 1e-9},
      {"rbcs.two_route", 1e-10},
      {"rbcs.pairing", 1e-11},             // + tail^2
      {"rbcs.eigen", 1e-10},               // + dropped top coefficient
      {"resolution.identity", 1e-10},
      {"resolution.weak_pairing", 1e-10},
      {"coordinate.l2", 1e-8},             // + max(||S||, ||S^-1||) tail
      {"coordinate.pairing", 1e-9},
      {"coordinate.eigen_relation", 1e-6},
  };
  return table;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::out_of_regime: return "out-of-regime";
  }
  return "unknown";
}

void validate(const RunConfig& config) {
  if (config.dim < 4) config_error("dim must be >= 4, got " + std::to_string(config.dim));
  for (const auto& [id, value] : config.tolerances) {
    if (!default_tolerances().count(id)) config_error("unknown tolerance id '" + id + "'");
    if (!(value > 0.0)) config_error("tolerance '" + id + "' must be positive");
  }
  for (const auto& s : config.z_samples) {
    if (std::norm(s.z) > config.dim / 4.0 && !s.out_of_regime) {
      std::ostringstream os;
      os << "z = (" << s.z.real() << ", " << s.z.imag() << ") lies outside |z|^2 <= dim/4 = "
         << config.dim / 4.0 << "; flag it with \"out_of_regime\": true";
      config_error(os.str());
    }
  }
  if (config.map.kind == MapSpec::Kind::projector && config.map.u_index >= config.dim) {
    config_error("map.u_index must be below dim");
  }
  if (config.radial_count < 0 || config.angular_count < 0) {
    config_error("quadrature counts must be positive");
  }
  for (std::size_t i = 1; i < config.converge_dims.size(); ++i) {
    if (config.converge_dims[i] <= config.converge_dims[i - 1]) {
      config_error("converge.dims must be strictly ascending");
    }
  }
  for (int d : config.converge_dims) {
    if (d < 4) config_error("converge.dims entries must be >= 4");
  }
}

RunConfig parse_config(const json& j, const std::filesystem::path& base_dir) {
  reject_unknown_keys(j, {"schema", "dim", "map", "z_samples", "quadrature", "tolerances",
                          "outputs", "seed", "converge"},
                      "config");
  if (j.value("schema", std::string()) != kConfigSchema) {
    config_error(std::string("config schema must be \"") + kConfigSchema + "\"");
  }
  RunConfig c;
  try {
    c.dim = j.value("dim", 16);
    if (j.contains("map")) c.map = parse_map(j.at("map"), base_dir);
    if (j.contains("z_samples")) {
      for (const auto& entry : j.at("z_samples")) {
        if (entry.is_object()) {
          reject_unknown_keys(entry, {"z", "out_of_regime"}, "z_samples entry");
          c.z_samples.push_back(
              {parse_complex(entry.at("z"), "z_samples.z"), entry.value("out_of_regime", false)});
        } else {
          c.z_samples.push_back({parse_complex(entry, "z_samples entry"), false});
        }
      }
    } else {
      c.z_samples = {{Complex(0.0, 0.0)}, {Complex(0.5, 0.0)}, {Complex(0.5, 0.5)}};
    }
    if (j.contains("quadrature")) {
      const json& q = j.at("quadrature");
      reject_unknown_keys(q, {"radial", "angular"}, "quadrature");
      c.radial_count = q.value("radial", 0);
      c.angular_count = q.value("angular", 0);
    }
    if (j.contains("tolerances")) {
      const json& t = j.at("tolerances");
      if (!t.is_object()) config_error("tolerances must be an object");
      for (const auto& [id, value] : t.items()) c.tolerances[id] = value.get<double>();
    }
    if (j.contains("outputs")) {
      c.outputs = j.at("outputs").get<std::string>();
      if (c.outputs.is_relative() && !base_dir.empty()) c.outputs = base_dir / c.outputs;
    }
    c.seed = j.value("seed", std::uint64_t{1});
    if (j.contains("converge")) {
      const json& cv = j.at("converge");
      reject_unknown_keys(cv, {"dims", "z"}, "converge");
      c.converge_dims = cv.value("dims", std::vector<int>{});
      if (cv.contains("z")) {
        for (const auto& z : cv.at("z")) c.converge_z.push_back(parse_complex(z, "converge.z"));
      }
    }
  } catch (const json::exception& e) {
    config_error(std::string("malformed config: ") + e.what());
  }
  if (c.converge_z.empty()) c.converge_z = {Complex(1.0, 0.0)};
  validate(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::config, "cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    config_error("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(j, path.parent_path());
}

json to_json(const RunConfig& c) {
  json map = {{"kind", map_label(c.map)}};
  switch (c.map.kind) {
    case MapSpec::Kind::identity: break;
    case MapSpec::Kind::projector: map["u_index"] = c.map.u_index; break;
    case MapSpec::Kind::random:
      map["cond"] = c.map.cond;
      map["seed"] = c.map.seed;
      break;
    case MapSpec::Kind::file: map["path"] = c.map.path.string(); break;
  }
  json zs = json::array();
  for (const auto& s : c.z_samples) {
    zs.push_back(s.out_of_regime ? json{{"z", complex_json(s.z)}, {"out_of_regime", true}}
                                 : complex_json(s.z));
  }
  json cz = json::array();
  for (Complex z : c.converge_z) cz.push_back(complex_json(z));
  return {{"schema", kConfigSchema},
          {"dim", c.dim},
          {"map", map},
          {"z_samples", zs},
          {"quadrature", {{"radial", c.radial_count}, {"angular", c.angular_count}}},
          {"tolerances", c.tolerances},
          {"outputs", c.outputs.string()},
          {"seed", c.seed},
          {"converge", {{"dims", c.converge_dims}, {"z", cz}}}};
}

RieszMap build_map(const MapSpec& spec, const FockSpace& space) {
  switch (spec.kind) {
    case MapSpec::Kind::identity:
      return make_riesz_map(Operator::identity(space), Operator::identity(space));
    case MapSpec::Kind::projector:
      return projector_map(space, space.basis(spec.u_index)).map;
    case MapSpec::Kind::random:
      return random_riesz_map(space, spec.cond, spec.seed);
    case MapSpec::Kind::file: {
      RieszMap map = load_riesz_map(spec.path);
      if (map.dim() != space.dim()) {
        throw Error(Errc::dimension_mismatch, "map file has dim " + std::to_string(map.dim()) +
                                                  ", config asks for " +
                                                  std::to_string(space.dim()));
      }
      return map;
    }
  }
  throw Error(Errc::config, "unknown map kind");
}

std::vector<CheckReport> run_suite(const RunConfig& config) {
  validate(config);
  std::vector<CheckReport> reports;
  Runner check(config, reports);
  const FockSpace space(config.dim);
  const int d = config.dim;
  const json map_params = {{"map", map_label(config.map)}, {"dim", d}};

  std::optional<RieszMap> built;
  check("riesz.construction", map_params, [&] {
    built.emplace(build_map(config.map, space));
    return Runner::Outcome{built->inverse_residual(),
                           check.base("riesz.construction") * built->cond(),
                           {{"cond", built->cond()}}};
  });
  if (!built) return reports;
  const RieszMap& map = *built;
  const double cond = map.cond();

  check("riesz.frame_bounds", map_params, [&] {
    const FrameBounds fb = map.frame_bounds();
    return Runner::Outcome{frame_bound_violation(map, kFrameSamples, config.seed),
                           check.base("riesz.frame_bounds"),
                           {{"lower", fb.lower}, {"upper", fb.upper}}};
  });

  const BiorthogonalFamily family = biorthogonal_family(map);
  check("riesz.biorthogonality", map_params, [&] {
    return Runner::Outcome{biorthogonality_defect(family), check.base("riesz.biorthogonality")};
  });

  const MetricOperator metric = metric_operator(map);
  check("theta.rank_one", map_params, [&] {
    const auto [psi_sum, phi_sum] = theta_rank_one_sums(family);
    const double theta_norm = spectral_norm(metric.theta.matrix());
    const double inv_norm = spectral_norm(metric.theta_inv.matrix());
    const double r = std::max(spectral_norm((psi_sum - metric.theta).matrix()) / theta_norm,
                              spectral_norm((phi_sum - metric.theta_inv).matrix()) / inv_norm);
    return Runner::Outcome{r, check.base("theta.rank_one")};
  });
  check("theta.positivity", map_params, [&] {
    // Rayleigh quotients of Theta are bounded below by 1 / sigma_max^2.
    const double floor = 1.0 / (map.norm() * map.norm());
    const double q = theta_positivity(metric, kFrameSamples, config.seed);
    return Runner::Outcome{std::max(0.0, (floor - q) / floor), check.base("theta.positivity"),
                           {{"min_rayleigh", q}}};
  });

  std::optional<PseudoBosonPair> pair;
  check("pair.ccr", map_params, [&] {
    pair.emplace(make_pseudo_boson_pair(map));
    const SafeSubspace sub(space, d - 1);
    return Runner::Outcome{ccr_defect(*pair, sub), check.base("pair.ccr") * cond * cond};
  });
  if (!pair) return reports;

  std::optional<VacuumPair> vac;
  check("vacua.kernel", map_params, [&] {
    vac.emplace(vacua(*pair));
    const double r = std::max(pair->a.apply(vac->phi0).norm() / vac->phi0.norm(),
                              (pair->b.matrix().adjoint() * vac->psi0).norm() / vac->psi0.norm());
    return Runner::Outcome{r, check.base("vacua.kernel") * cond};
  });
  if (!vac) return reports;
  const VacuumPair expected = closed_form_vacua(map);
  check("vacua.match", map_params, [&] {
    const double r = std::max(direction_mismatch(vac->phi0, expected.phi0),
                              direction_mismatch(vac->psi0, expected.psi0));
    return Runner::Outcome{r, check.base("vacua.match") * cond};
  });
  check("vacua.normalization", map_params, [&] {
    return Runner::Outcome{std::abs(inner(vac->phi0, vac->psi0) - 1.0),
                           check.base("vacua.normalization")};
  });

  const VacuumPair aligned = aligned_to(*vac, expected.phi0);
  const BiorthogonalFamily excited = excited_states(*pair, aligned, d - 1);
  check("ladder.relations", map_params, [&] {
    const double tol = check.base("ladder.relations") * cond;
    return worst_of(ladder_check(*pair, excited, tol), tol);
  });
  check("number.relations", map_params, [&] {
    const double tol = check.base("number.relations") * cond;
    return worst_of(number_operator_check(*pair, excited, tol), tol);
  });
  check("number.spectrum", map_params, [&] {
    return Runner::Outcome{number_spectrum_defect(*pair), check.base("number.spectrum")};
  });
  check("theta.conjugacy", map_params, [&] {
    const Residual r = theta_conjugacy_check(*pair, metric, SafeSubspace(space, d - 1));
    return Runner::Outcome{r.residual, check.base("theta.conjugacy") * cond * cond * cond};
  });

  const SafeSubspace half(space, std::max(1, d / 2));
  for (const ZSample& sample : config.z_samples) {
    const Complex z = sample.z;
    json zp = map_params;
    zp["z"] = complex_json(z);
    const bool flagged = sample.out_of_regime;

    check("displacement.unitarity", zp, [&] {
      return Runner::Outcome{unitarity_defect(weyl(space, z).W),
                             check.base("displacement.unitarity")};
    }, flagged);
    check("displacement.power_similarity", zp, [&] {
      const double tol = check.base("displacement.power_similarity");
      return worst_of(power_similarity_check(map, z, kPowerMax, tol), tol);
    }, flagged);
    check("displacement.bch", zp, [&] {
      const BchResidual r = bch_factorization_check(map, z, half);
      Runner::Outcome o{std::max(r.u, r.v), check.base("displacement.bch")};
      o.extra = {{"u", r.u}, {"v", r.v}, {"cutoff", half.cutoff()}};
      o.out_of_regime = r.out_of_regime;
      return o;
    }, flagged);
    check("displacement.intertwining", zp, [&] {
      return Runner::Outcome{intertwining_check(map, z, half),
                             check.base("displacement.intertwining")};
    }, flagged);

    const BicoherentPair bc = rbcs(map, z);
    check("rbcs.two_route", zp, [&] {
      const auto [phi, psi] = series_route(map, z, aligned);
      const double r = std::max((phi - bc.eta).norm() / bc.eta.norm(),
                                (psi - bc.xi).norm() / bc.xi.norm());
      return Runner::Outcome{r, check.base("rbcs.two_route")};
    }, flagged);
    check("rbcs.pairing", zp, [&] {
      return Runner::Outcome{std::abs(inner(bc.eta, bc.xi) - 1.0),
                             check.base("rbcs.pairing") + bc.tail_bound * bc.tail_bound,
                             {{"tail_bound", bc.tail_bound}}};
    }, flagged);
    check("rbcs.eigen", zp, [&] {
      const EigenResidual r = eigen_check(*pair, bc);
      // The truncated ladder maps Phi(z) to z Phi(z) minus z c_{d-1} e_{d-1}.
      const double drop = std::abs(z) * top_coefficient(d, z);
      const double slack =
          drop * std::max(map.S().matrix().col(d - 1).norm() / bc.eta.norm(),
                          map.S_inv().matrix().row(d - 1).norm() / bc.xi.norm());
      return Runner::Outcome{std::max(r.a_eta, r.bdag_xi), check.base("rbcs.eigen") + slack,
                             {{"a_eta", r.a_eta}, {"bdag_xi", r.bdag_xi}}};
    }, flagged);
  }

  const int radial = config.radial_count > 0 ? config.radial_count : d;
  const int angular = config.angular_count > 0 ? config.angular_count : 2 * d + 1;
  json qp = map_params;
  qp["radial"] = radial;
  qp["angular"] = angular;
  std::optional<QuadratureScheme> quad;
  check("resolution.identity", qp, [&] {
    quad.emplace(make_quadrature(d, radial, angular));
    return Runner::Outcome{resolution_of_identity(map, *quad), check.base("resolution.identity")};
  });
  if (quad) {
    check("resolution.weak_pairing", qp, [&] {
      const Vector f = family.phi[0] + family.psi[d - 1];
      const Vector g = family.psi[d / 2] - Complex(0.0, 1.0) * family.phi[1];
      const auto [direct, integral] = weak_pairing_check(map, *quad, f, g);
      return Runner::Outcome{std::abs(direct - integral) / (f.norm() * g.norm()),
                             check.base("resolution.weak_pairing")};
    });
  }

  if (config.map.kind == MapSpec::Kind::projector) {
    const int u = config.map.u_index;
    const double map_norm = std::max(map.norm(), map.inv_norm());
    for (const ZSample& sample : config.z_samples) {
      const Complex z = sample.z;
      if (!in_accuracy_regime(space, z)) continue;
      json zp = map_params;
      zp["z"] = complex_json(z);
      zp["u_index"] = u;
      std::optional<CrossValidation> cv;
      check("coordinate.l2", zp, [&] {
        cv.emplace(cross_validate(z, d, d + 10, u));
        const double tail = coherent_tail_bound(d, z);
        return Runner::Outcome{std::max(cv->phi_l2, cv->psi_l2),
                               check.base("coordinate.l2") + map_norm * tail,
                               {{"phi_max", cv->phi_max}, {"psi_max", cv->psi_max}}};
      });
      if (cv) {
        check("coordinate.pairing", zp, [&] {
          return Runner::Outcome{std::abs(cv->pairing - 1.0), check.base("coordinate.pairing")};
        });
      }
      check("coordinate.eigen_relation", zp, [&] {
        return Runner::Outcome{eigen_relation_residual(z), check.base("coordinate.eigen_relation")};
      });
    }
  }
  return reports;
}

bool suite_passed(const std::vector<CheckReport>& reports, bool strict) {
  for (const auto& r : reports) {
    if (r.status == Status::fail) return false;
    if (strict && r.status == Status::out_of_regime) return false;
  }
  return true;
}

json reports_to_json(const std::vector<CheckReport>& reports, bool with_times) {
  json checks = json::array();
  int failed = 0;
  int flagged = 0;
  for (const auto& r : reports) {
    json entry = {{"check_id", r.check_id},
                  {"params", r.params},
                  {"residual", std::isfinite(r.residual) ? json(r.residual) : json("inf")},
                  {"tolerance", r.tolerance},
                  {"status", to_string(r.status)}};
    if (with_times) entry["wall_time"] = r.wall_time;
    checks.push_back(std::move(entry));
    failed += r.status == Status::fail;
    flagged += r.status == Status::out_of_regime;
  }
  return {{"schema", kReportSchema},
          {"checks", checks},
          {"summary",
           {{"total", reports.size()}, {"failed", failed}, {"out_of_regime", flagged}}}};
}

void write_table(std::ostream& out, const std::vector<CheckReport>& reports) {
  out << std::left << std::setw(32) << "check" << std::setw(18) << "z" << std::setw(13)
      << "residual" << std::setw(13) << "tolerance" << "status\n";
  for (const auto& r : reports) {
    std::string z = "-";
    if (r.params.contains("z")) {
      std::ostringstream os;
      os << std::setprecision(4) << r.params["z"][0].get<double>() << (r.params["z"][1] < 0 ? "" : "+")
         << r.params["z"][1].get<double>() << "i";
      z = os.str();
    }
    std::ostringstream res;
    res << std::scientific << std::setprecision(3) << r.residual;
    std::ostringstream tol;
    tol << std::scientific << std::setprecision(3) << r.tolerance;
    out << std::left << std::setw(32) << r.check_id << std::setw(18) << z << std::setw(13)
        << res.str() << std::setw(13) << tol.str() << to_string(r.status);
    if (r.params.contains("error")) out << "  (" << r.params["error"].get<std::string>() << ")";
    out << '\n';
  }
}

void write_outputs(const RunConfig& config, const std::vector<CheckReport>& reports) {
  if (config.outputs.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(config.outputs, ec);
  const auto open = [&](const std::string& name) {
    std::ofstream f(config.outputs / name);
    if (!f) throw Error(Errc::io, "cannot write " + (config.outputs / name).string());
    return f;
  };
  {
    json doc = reports_to_json(reports);
    doc["config"] = to_json(config);
    auto f = open("report.json");
    f << doc.dump(2) << '\n';
  }
  {
    auto f = open("report.txt");
    write_table(f, reports);
  }
  if (config.map.kind == MapSpec::Kind::projector) {
    const auto xs = wavefunction_grid();
    for (std::size_t i = 0; i < config.z_samples.size(); ++i) {
      auto f = open("wavefunctions_" + std::to_string(i) + ".csv");
      write_wavefunction_csv(f, config.z_samples[i].z, xs, config.map.u_index);
    }
  }
}

std::vector<ConvergenceRow> convergence_study(const RunConfig& config,
                                              const std::vector<int>& dims) {
  for (std::size_t i = 1; i < dims.size(); ++i) {
    if (dims[i] <= dims[i - 1]) config_error("convergence dims must be strictly ascending");
  }
  std::vector<ConvergenceRow> rows;
  for (int d : dims) {
    const FockSpace space(d);
    const RieszMap map = build_map(config.map, space);
    const PseudoBosonPair pair = make_pseudo_boson_pair(map);
    const QuadratureScheme quad = make_quadrature(d, d, 2 * d + 1);
    const double resolution = resolution_of_identity(map, quad);
    const SafeSubspace half(space, std::max(1, d / 2));
    for (Complex z : config.converge_z) {
      ConvergenceRow row;
      row.dim = d;
      row.z = z;
      const BchResidual bch = bch_factorization_check(map, z, half);
      row.bch = std::max(bch.u, bch.v);
      const EigenResidual eig = eigen_check(pair, rbcs(map, z));
      row.eigen = std::max(eig.a_eta, eig.bdag_xi);
      row.resolution = resolution;
      row.out_of_regime = bch.out_of_regime || !in_accuracy_regime(space, z);
      rows.push_back(row);
    }
  }
  return rows;
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
  out << "dim,re_z,im_z,bch,eigen,resolution,out_of_regime\n" << std::setprecision(17);
  for (const auto& r : rows) {
    out << r.dim << ',' << r.z.real() << ',' << r.z.imag() << ',' << r.bch << ',' << r.eigen
        << ',' << r.resolution << ',' << (r.out_of_regime ? 1 : 0) << '\n';
  }
}

bool eigen_residuals_decrease(const std::vector<ConvergenceRow>& rows, double floor) {
  std::map<std::pair<double, double>, std::vector<const ConvergenceRow*>> by_z;
  for (const auto& r : rows) by_z[{r.z.real(), r.z.imag()}].push_back(&r);
  for (const auto& [z, series] : by_z) {
    for (std::size_t i = 1; i < series.size(); ++i) {
      const ConvergenceRow& prev = *series[i - 1];
      const ConvergenceRow& cur = *series[i];
      if (prev.out_of_regime || cur.out_of_regime) continue;
      if (prev.eigen <= floor && cur.eigen <= floor) continue;
      if (!(cur.eigen < prev.eigen)) return false;
    }
  }
  return true;
}

}  // namespace rbcs
