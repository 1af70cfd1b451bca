#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rbcs/fock.hpp"
#include "rbcs/riesz.hpp"

namespace rbcs {

inline constexpr const char* kConfigSchema = "rbcs.run_config/1";
inline constexpr const char* kReportSchema = "rbcs.report/1";

struct MapSpec {
  enum class Kind { identity, projector, random, file };
  Kind kind = Kind::identity;
  int u_index = 0;          // projector
  double cond = 10.0;       // random
  std::uint64_t seed = 1;   // random
  std::filesystem::path path;  // file, resolved against the config location
};

/// A sample point. Points outside |z|^2 <= dim/4 must carry
/// out_of_regime = true; their failures are reported as out-of-regime.
struct ZSample {
  Complex z;
  bool out_of_regime = false;
};

struct RunConfig {
  int dim = 16;
  MapSpec map;
  std::vector<ZSample> z_samples;
  int radial_count = 0;   // 0: dim
  int angular_count = 0;  // 0: 2 dim + 1
  std::map<std::string, double> tolerances;  // base tolerance overrides by check id
  std::filesystem::path outputs;             // empty: write nothing
  std::uint64_t seed = 1;                    // drives every sampled check
  std::vector<int> converge_dims;
  std::vector<Complex> converge_z;
};

/// Rejects unknown keys, a wrong schema, dim < 4, non-positive tolerances,
/// unknown tolerance ids and unflagged z outside the accuracy regime, all as
/// Errc::config.
RunConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& config);

/// Re-runs the regime validation, for use after command-line overrides.
void validate(const RunConfig& config);

/// Base tolerance per check id. Some checks scale it by a power of cond(S)
/// or add the known truncation term; CheckReport::tolerance is the final
/// value used.
const std::map<std::string, double>& default_tolerances();

enum class Status { pass, fail, out_of_regime };
std::string to_string(Status s);

struct CheckReport {
  std::string check_id;
  nlohmann::json params;
  double residual = 0.0;
  double tolerance = 0.0;
  Status status = Status::pass;
  double wall_time = 0.0;  // seconds
};

RieszMap build_map(const MapSpec& spec, const FockSpace& space);

/// Runs every check in a fixed order. A map that cannot be built yields a
/// single failed riesz.construction report.
std::vector<CheckReport> run_suite(const RunConfig& config);

/// False when a check failed, or, under strict, was out of regime.
bool suite_passed(const std::vector<CheckReport>& reports, bool strict = false);

nlohmann::json reports_to_json(const std::vector<CheckReport>& reports, bool with_times = true);
void write_table(std::ostream& out, const std::vector<CheckReport>& reports);

/// Writes report.json, report.txt and, for projector maps, one
/// wavefunctions_<i>.csv per z sample into config.outputs.
void write_outputs(const RunConfig& config, const std::vector<CheckReport>& reports);

struct ConvergenceRow {
  int dim = 0;
  Complex z;
  double bch = 0.0;
  double eigen = 0.0;
  double resolution = 0.0;
  bool out_of_regime = false;
};

/// For each dim (ascending) and each converge z: the BCH residual on the
/// half space, the relative eigen-residual of a eta = z eta and the
/// resolution-of-identity deviation.
std::vector<ConvergenceRow> convergence_study(const RunConfig& config,
                                              const std::vector<int>& dims);
void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);

/// Eigen-residuals above `floor` must decrease strictly with dim for every z
/// whose rows are all in regime; below it they are at roundoff.
bool eigen_residuals_decrease(const std::vector<ConvergenceRow>& rows, double floor = 1e-14);

}  // namespace rbcs
