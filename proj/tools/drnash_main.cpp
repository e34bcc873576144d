#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "drnash/equilibrium.hpp"
#include "drnash/errors.hpp"
#include "drnash/report.hpp"
#include "drnash/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitNotConverged = 2;

void add_solver_flags(CLI::App* cmd, drnash::SolveOptions& opts) {
  cmd->add_option("--max-outer", opts.max_outer, "Outer iteration cap")->check(CLI::PositiveNumber);
  cmd->add_option("--max-inner", opts.max_inner, "Inner sweep cap")->check(CLI::PositiveNumber);
  cmd->add_option("--damping", opts.damping, "Jacobi blend factor in (0, 1]");
  cmd->add_option("--eps1", opts.eps1, "DR convergence threshold, kW");
  cmd->add_option("--eps2", opts.eps2, "Provider-profit threshold, $");
  cmd->add_option("--eps3", opts.eps3, "Utility-profit threshold, $");
  cmd->add_option("--eps-reg", opts.eps_reg, "Denominator regularizer, kW");
  cmd->add_option("--inner-tol", opts.inner_tol, "Inner fixed-point tolerance, kW");
  cmd->add_option("--deviation-grid", opts.deviation_grid, "Deviation-scan grid points")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--single-sweep", opts.single_sweep, "One Jacobi sweep per outer iteration");
  cmd->add_flag("--aggregate-convergence", opts.aggregate_convergence,
                "Compare daily profit totals instead of per-hour profits");
  cmd->add_flag("--serial", opts.use_reference_kernels, "Use the serial reference kernels");
}

int cmd_validate(const std::string& path) {
  const drnash::Scenario s = drnash::load_scenario(path);
  std::cout << path << ": OK (" << s.prosumers.size() << " prosumers, " << s.horizon
            << " hours, " << s.event_hours.size() << " event hours)\n";
  return kExitOk;
}

int cmd_run(const std::string& path, const std::filesystem::path& out_dir,
            const drnash::SolveOptions& opts) {
  const drnash::Scenario s = drnash::load_scenario(path);
  const drnash::EquilibriumResult result = drnash::run(s, opts);
  drnash::write_run_artifacts(s, result, out_dir);
  if (!result.converged) {
    std::cerr << "did not converge within " << opts.max_outer << " outer iterations\n";
    return kExitNotConverged;
  }
  std::cout << "converged after " << result.trace.size() << " iterations; artifacts in "
            << out_dir.string() << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& path, const std::filesystem::path& out_dir,
               const drnash::SolveOptions& opts) {
  const drnash::Scenario s = drnash::load_scenario(path);
  drnash::EquilibriumResult result;
  result.state = drnash::read_run_state(s, out_dir);
  const drnash::NashReport report = drnash::verify_nash(result, s, opts);
  drnash::write_nash_report(s, report, out_dir);
  std::cout << "max unilateral improvement: " << report.max_improvement << " $\n";
  return report.max_improvement <= opts.eps2 ? kExitOk : kExitNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batch Nash-equilibrium simulator for PV prosumer demand response"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::filesystem::path out_dir;
  drnash::SolveOptions opts;

  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("file", scenario_path, "Scenario JSON file")->required();

  auto* run = app.add_subcommand("run", "Solve a scenario and write CSV artifacts");
  run->add_option("file", scenario_path, "Scenario JSON file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  add_solver_flags(run, opts);

  auto* verify = app.add_subcommand("verify", "Deviation-scan a completed run");
  verify->add_option("file", scenario_path, "Scenario JSON file")->required();
  verify->add_option("--out", out_dir, "Directory holding the run artifacts")->required();
  add_solver_flags(verify, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (validate->parsed()) {
      return cmd_validate(scenario_path);
    }
    if (run->parsed()) {
      return cmd_run(scenario_path, out_dir, opts);
    }
    return cmd_verify(scenario_path, out_dir, opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}
