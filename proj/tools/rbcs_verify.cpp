// Batch verification runner: rbcs_verify {verify|converge|emit-wavefunctions}.
// Exit codes: 0 all checks pass, 1 a check failed, 2 configuration error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rbcs/coordinate.hpp"
#include "rbcs/error.hpp"
#include "rbcs/suite.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Overrides {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> dim;
  bool strict = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON run config (schema rbcs.run_config/1)");
  cmd->add_option("--out", o.out, "Output directory; overrides the config");
  cmd->add_option("--seed", o.seed, "Seed for sampled checks and random maps");
  cmd->add_option("--dim", o.dim, "Truncation dimension override");
  cmd->add_flag("--strict", o.strict, "Treat out-of-regime results as failures");
}

rbcs::RunConfig resolve(const Overrides& o) {
  rbcs::RunConfig c;
  if (!o.config.empty()) {
    c = rbcs::load_config(o.config);
  } else {
    c = rbcs::parse_config({{"schema", rbcs::kConfigSchema}});
  }
  if (o.dim) c.dim = *o.dim;
  if (o.seed) {
    c.seed = *o.seed;
    if (c.map.kind == rbcs::MapSpec::Kind::random) c.map.seed = *o.seed;
  }
  if (!o.out.empty()) c.outputs = o.out;
  rbcs::validate(c);
  return c;
}

int run_verify(const Overrides& o) {
  const rbcs::RunConfig config = resolve(o);
  const auto reports = rbcs::run_suite(config);
  rbcs::write_table(std::cout, reports);
  rbcs::write_outputs(config, reports);
  const bool ok = rbcs::suite_passed(reports, o.strict);
  std::cout << (ok ? "suite: pass" : "suite: FAIL") << '\n';
  return ok ? kExitPass : kExitFail;
}

int run_converge(const Overrides& o, std::vector<int> dims) {
  const rbcs::RunConfig config = resolve(o);
  if (dims.empty()) dims = config.converge_dims;
  if (dims.empty()) dims = {16, 32, 64};
  const auto rows = rbcs::convergence_study(config, dims);
  if (config.outputs.empty()) {
    rbcs::write_convergence_csv(std::cout, rows);
  } else {
    std::filesystem::create_directories(config.outputs);
    std::ofstream f(config.outputs / "convergence.csv");
    if (!f) throw rbcs::Error(rbcs::Errc::io, "cannot write convergence.csv");
    rbcs::write_convergence_csv(f, rows);
    std::cout << "wrote " << (config.outputs / "convergence.csv").string() << '\n';
  }
  bool flagged = false;
  for (const auto& r : rows) flagged = flagged || r.out_of_regime;
  const bool decreasing = rbcs::eigen_residuals_decrease(rows);
  std::cout << "eigen-residuals decreasing: " << (decreasing ? "yes" : "NO") << '\n';
  if (flagged) std::cout << "some rows are out of regime (flagged)\n";
  if (!decreasing || (o.strict && flagged)) return kExitFail;
  return kExitPass;
}

int run_emit(const Overrides& o) {
  const rbcs::RunConfig config = resolve(o);
  if (config.outputs.empty()) {
    throw rbcs::Error(rbcs::Errc::config, "emit-wavefunctions needs --out or config outputs");
  }
  const int u_index =
      config.map.kind == rbcs::MapSpec::Kind::projector ? config.map.u_index : 0;
  std::filesystem::create_directories(config.outputs);
  std::vector<double> xs;
  for (int i = 0; i <= 240; ++i) xs.push_back(-6.0 + 0.05 * i);
  for (std::size_t i = 0; i < config.z_samples.size(); ++i) {
    const auto path = config.outputs / ("wavefunctions_" + std::to_string(i) + ".csv");
    std::ofstream f(path);
    if (!f) throw rbcs::Error(rbcs::Errc::io, "cannot write " + path.string());
    rbcs::write_wavefunction_csv(f, config.z_samples[i].z, xs, u_index);
    std::cout << "wrote " << path.string() << '\n';
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification runner for Riesz bicoherent states"};
  app.require_subcommand(1);

  Overrides verify_o;
  Overrides converge_o;
  Overrides emit_o;
  std::vector<int> dims;
  CLI::App* verify = app.add_subcommand("verify", "Run the full check suite");
  add_common(verify, verify_o);
  CLI::App* converge = app.add_subcommand("converge", "Residuals across truncation dims");
  add_common(converge, converge_o);
  converge->add_option("--dims", dims, "Ascending list of dims");
  CLI::App* emit = app.add_subcommand("emit-wavefunctions", "Write coordinate-space CSVs");
  add_common(emit, emit_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (verify->parsed()) return run_verify(verify_o);
    if (converge->parsed()) return run_converge(converge_o, dims);
    if (emit->parsed()) return run_emit(emit_o);
  } catch (const rbcs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == rbcs::Errc::config || e.code() == rbcs::Errc::io ? kExitConfig
                                                                          : kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitConfig;
}
