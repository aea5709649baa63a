#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "imexdg/gmres.hpp"
#include "imexdg/operators.hpp"
#include "imexdg/space.hpp"
#include "imexdg/thermo.hpp"

namespace imexdg {

/// R1 lags R u, M_g u and k at the previous Picard iterate; R2 keeps R and
/// M_g in the Schur operator via (A + R)^{-1}.
enum class Strategy { r1, r2 };

struct PicardConfig {
  Strategy strategy = Strategy::r1;
  int max_iterations = 10;
  double tol = 1e-10;
  GmresConfig gmres{};

  void validate() const;
};

/// Everything that stays fixed during the Picard loop of stage l.
struct StageProblem {
  const DgSpace* space = nullptr;
  GasConstants gas;
  StageContext ctx;
  ScalarField rho;   ///< rho^{(n,l)}, explicit
  VectorField f;     ///< momentum right-hand side
  ScalarField ehat;  ///< energy right-hand side before the lagged stage penalty
  VectorField fg;    ///< gravity vector f_g
};

struct StageSolution {
  VectorField u;
  ScalarField p;
  int picard_iterations = 0;
  std::vector<int> gmres_iterations;
  std::vector<double> variation_history;
  double variation = 0.0;
};

class StageSolveError : public std::runtime_error {
 public:
  StageSolveError(const std::string& what, int stage, int iteration, std::vector<double> history)
      : std::runtime_error(what), stage_(stage), iteration_(iteration), history_(std::move(history)) {}
  int stage() const { return stage_; }
  int iteration() const { return iteration_; }
  /// Picard variations, or the GMRES residual curve for linear failures.
  const std::vector<double>& history() const { return history_; }

 private:
  int stage_;
  int iteration_;
  std::vector<double> history_;
};

/// Builds the stage problem: f_g from rho and the context.
StageProblem make_stage_problem(const DgSpace& sp, const GasConstants& gas,
                                const StageContext& ctx, ScalarField rho, VectorField f,
                                ScalarField ehat);

/// Schur operator D - C A^{-1} B (R1) or D - (C + M_g)(A + R)^{-1} B (R2),
/// with C built from the nodal h rho of the current iterate.
LinearOperator make_schur_operator(const StageProblem& prob, Strategy strategy,
                                   const ScalarField& h_rho);

StageSolution solve_stage_r1(const StageProblem& prob, const VectorField& u0,
                             const ScalarField& p0, const PicardConfig& cfg);
StageSolution solve_stage_r2(const StageProblem& prob, const VectorField& u0,
                             const ScalarField& p0, const PicardConfig& cfg);
StageSolution solve_stage(const StageProblem& prob, const VectorField& u0, const ScalarField& p0,
                          const PicardConfig& cfg);

/// Relative residual of the full coupled system with every lagged term
/// re-evaluated at (u, p): max of the momentum and energy block residuals,
/// each relative to the norm of its right-hand side.
double coupled_residual(const StageProblem& prob, const VectorField& u, const ScalarField& p);

}  // namespace imexdg
