#include "gwt/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "gwt/errors.hpp"
#include "gwt/json_io.hpp"
#include "gwt/scenario.hpp"

namespace gwt::cli {

using nlohmann::json;

namespace {

// Runs an in-memory scenario through the same path as `run`.
int run_inline(const json& scenario, const std::string& out_path, const RunOptions& opts, std::ostream& out,
               std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  ScenarioResult result;
  try {
    result = execute_scenario(parse_scenario(scenario), opts);
  } catch (const io::SchemaError& e) {
    err << "error: invalid scenario at " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const unsigned workers = opts.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.workers;
  const json full = wrap_report(result.report, wall, workers);
  if (out_path.empty()) {
    out << full.dump(2) << "\n";
    if (!opts.quiet) err << result.summary;
    return kExitOk;
  }
  std::ofstream f(out_path);
  if (!f) {
    err << "error: cannot write report to '" << out_path << "'\n";
    return kExitValidation;
  }
  f << full.dump(2) << "\n";
  if (!opts.quiet) out << result.summary;
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Witness test for non-classical mediators", "gwt"};
  app.require_subcommand(1);
  app.fallthrough();
  RunOptions opts;
  app.add_flag("-q,--quiet", opts.quiet, "Suppress the human-readable summary");
  app.add_option("-w,--workers", opts.workers, "Worker threads for campaigns (0 = all cores)");
  app.set_version_flag("--version", kToolVersion);

  std::string scenario_path, out_path, demo_name, classify_path, family;
  std::uint64_t samples = 1000, seed = 42;
  std::size_t steps = 12;
  double tol = 1e-9;

  auto* run_cmd = app.add_subcommand("run", "Run a scenario file");
  run_cmd->add_option("scenario", scenario_path, "Scenario JSON")->required();
  run_cmd->add_option("-o,--out", out_path, "Report path (default: stdout)");

  auto* demo_cmd = app.add_subcommand("demo", "Run a built-in protocol");
  demo_cmd->add_option("name", demo_name, "cnot-relay, bmv-phase or nonlocal-cz")
      ->required()
      ->check(CLI::IsMember({"cnot-relay", "bmv-phase", "nonlocal-cz"}));
  demo_cmd->add_option("-o,--out", out_path, "Report path (default: stdout)");

  auto* sweep_cmd = app.add_subcommand("sweep", "Sample a mediator family and check the negativity bound");
  sweep_cmd->add_option("--family", family, "classical_local, quantum_local or nonlocal_direct")
      ->required()
      ->check(CLI::IsMember({"classical_local", "quantum_local", "nonlocal_direct"}));
  sweep_cmd->add_option("--samples", samples, "Number of sampled protocols")->required()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", seed, "Master seed")->required();
  sweep_cmd->add_option("--steps", steps, "Steps per protocol")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--tol", tol, "Negativity tolerance")->check(CLI::NonNegativeNumber);
  sweep_cmd->add_option("-o,--out", out_path, "Report path (default: stdout)");

  auto* classify_cmd = app.add_subcommand("classify", "Classify a system from declared variables");
  classify_cmd->add_option("variables", classify_path, "Variables JSON (array or scenario)")->required();
  classify_cmd->add_option("-o,--out", out_path, "Report path (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }

  if (*run_cmd) return run_scenario(scenario_path, out_path, opts, out, err);
  if (*demo_cmd) return run_inline({{"version", 1}, {"demo", demo_name}}, out_path, opts, out, err);
  if (*sweep_cmd)
    return run_inline({{"version", 1},
                       {"campaign",
                        {{"family", family},
                         {"samples", samples},
                         {"seed", seed},
                         {"n_steps", steps},
                         {"thresholds", {{"negativity", tol}}}}}},
                      out_path, opts, out, err);

  json vars;
  {
    std::ifstream in(classify_path);
    if (!in) {
      err << "error: cannot read variables file '" << classify_path << "'\n";
      return kExitValidation;
    }
    try {
      vars = json::parse(in);
    } catch (const json::parse_error& e) {
      err << "error: malformed JSON in '" << classify_path << "': " << e.what() << "\n";
      return kExitValidation;
    }
  }
  if (vars.is_object() && vars.contains("variables")) return run_inline(vars, out_path, opts, out, err);
  return run_inline({{"version", 1}, {"variables", vars}}, out_path, opts, out, err);
}

}  // namespace gwt::cli
