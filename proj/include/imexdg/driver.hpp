#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "imexdg/config.hpp"
#include "imexdg/diagnostics.hpp"
#include "imexdg/space.hpp"
#include "imexdg/thermo.hpp"

namespace imexdg {

/// A failed time step; stage is 0 when the failure is not inside a stage solve.
class RunFailure : public std::runtime_error {
 public:
  RunFailure(const std::string& what, int step, int stage)
      : std::runtime_error(what), step_(step), stage_(stage) {}
  int step() const { return step_; }
  int stage() const { return stage_; }

 private:
  int step_;
  int stage_;
};

struct DiagnosticsRow {
  double time = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double max_w = 0.0;
  double max_u = 0.0;
  double e_geo = 0.0;
  int picard = 0;  ///< summed over the stages of the preceding step
  int gmres = 0;
  double courant = 0.0;
  double courant_adv = 0.0;
};

struct RunOptions {
  bool write_outputs = true;
  /// Called after every step with the step index (1-based) and new state.
  std::function<void(int, const ConservedField&)> on_step;
};

struct RunResult {
  std::shared_ptr<const DgSpace> space;
  ConservedField state;
  PrimitiveField primitive;
  std::vector<DiagnosticsRow> rows;
  int steps = 0;
  double time = 0.0;
  long implicit_solves = 0;
  double mass_drift = 0.0;  ///< largest relative one-step change of total mass
};

/// Integrates the configured scenario. With write_outputs, writes
/// diagnostics.csv, field_<t>.csv and config.resolved into output_dir.
/// Throws ConfigError for invalid configs and RunFailure on solver failure.
RunResult run(const RunConfig& cfg, const RunOptions& opts = {});

/// Final-time w, p', T' on the config's sample grid.
std::vector<SampleMatrix> sample_final(const RunConfig& cfg, const RunResult& result);

struct ConvergenceRow {
  std::string variable;
  int level = 0;
  int nx = 0;
  int nz = 0;
  double dt = 0.0;
  double dx = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  double eoc_l2 = 0.0;  ///< NaN on the coarsest level
  double eoc_linf = 0.0;
};

/// Runs `levels` >= 3 levels with (dx, dz, dt) halved each time and the
/// finest run as reference; reports errors of w, p', T' on every other level.
/// Writes convergence.csv into output_dir when write_outputs is set.
std::vector<ConvergenceRow> convergence_study(const RunConfig& base, int levels,
                                              const RunOptions& opts = {});

std::string format_diagnostics_csv(const std::vector<DiagnosticsRow>& rows);
std::string format_convergence_csv(const std::vector<ConvergenceRow>& rows);

/// Shortest round-trip representation, used in snapshot file names.
std::string time_label(double t);

/// Fast invariant suite behind `imexdg check`. Prints one PASS/FAIL line per
/// check and returns the number of failures.
int run_builtin_checks(std::ostream& out);

}  // namespace imexdg
