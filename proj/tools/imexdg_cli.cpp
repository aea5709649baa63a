#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "imexdg/config.hpp"
#include "imexdg/driver.hpp"

namespace {

constexpr int kValidationError = 1;
constexpr int kSolverFailure = 2;

template <class F>
int guarded(F&& fn) {
  try {
    fn();
    return 0;
  } catch (const imexdg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kValidationError;
  } catch (const imexdg::RunFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolverFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IMEX-DG solver for the rotating compressible Euler equations on a vertical slice"};
  app.require_subcommand(1);

  std::string run_path;
  auto* run_cmd = app.add_subcommand("run", "Integrate a configured scenario");
  run_cmd->add_option("config", run_path, "key=value configuration file")->required();

  std::string conv_path;
  int levels = 3;
  auto* conv_cmd = app.add_subcommand("converge", "Self-convergence study under hyperbolic refinement");
  conv_cmd->add_option("config", conv_path, "key=value configuration file")->required();
  conv_cmd->add_option("--levels", levels, "number of refinement levels (>= 3)")->default_val(3);

  auto* check_cmd = app.add_subcommand("check", "Run the built-in invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kValidationError;
  }

  if (*run_cmd) {
    return guarded([&] {
      const auto cfg = imexdg::load_config(run_path);
      const auto result = imexdg::run(cfg);
      std::cout << "completed " << result.steps << " steps to t = " << result.time << " s; outputs in "
                << cfg.output_dir << "\n";
    });
  }
  if (*conv_cmd) {
    return guarded([&] {
      const auto cfg = imexdg::load_config(conv_path);
      const auto rows = imexdg::convergence_study(cfg, levels);
      std::cout << imexdg::format_convergence_csv(rows);
    });
  }
  if (*check_cmd) {
    int failures = 0;
    const int code = guarded([&] { failures = imexdg::run_builtin_checks(std::cout); });
    if (code != 0) return code;
    return failures == 0 ? 0 : kSolverFailure;
  }
  return 0;
}
