#include "imexdg/stage_solver.hpp"

#include <algorithm>
#include <cmath>

#include "imexdg/tendencies.hpp"

namespace imexdg {

void PicardConfig::validate() const {
  if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("Picard tolerance must be in (0,1)");
  if (!(gmres.rel_tol > 0.0 && gmres.rel_tol < 1.0)) {
    throw std::invalid_argument("GMRES tolerance must be in (0,1)");
  }
  if (max_iterations < 1 || gmres.restart < 1 || gmres.max_iterations < 1) {
    throw std::invalid_argument("iteration caps must be at least 1");
  }
}

namespace {

void axpy(double a, const VectorField& x, VectorField& y) {
  for (int c = 0; c < 3; ++c) {
    for (std::size_t k = 0; k < y.size(); ++k) y[c][k] += a * x[c][k];
  }
}

double sq_norm(const VectorField& v) {
  double s = 0.0;
  for (int c = 0; c < 3; ++c) {
    for (double x : v[c]) s += x * x;
  }
  return s;
}

double sq_norm(const ScalarField& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

PrimitiveField iterate_state(const StageProblem& prob, const VectorField& u, const ScalarField& p) {
  PrimitiveField s;
  s.rho = prob.rho;
  s.vel = u;
  s.p = p;
  return s;
}

// A^{-1} or (A + R)^{-1} depending on strategy.
VectorField inverse_velocity_block(const StageProblem& prob, Strategy strategy,
                                   const VectorField& v) {
  return strategy == Strategy::r1 ? apply_inv_mass_rho(*prob.space, v, prob.rho)
                                  : apply_inv_mass_coriolis(*prob.space, v, prob.rho, prob.ctx);
}

// C u (R1) or (C + M_g) u (R2).
ScalarField coupling_block(const StageProblem& prob, Strategy strategy, const VectorField& u,
                           const ScalarField& h_rho) {
  ScalarField out = apply_enthalpy_div(*prob.space, u, h_rho, prob.ctx);
  if (strategy == Strategy::r2) {
    const ScalarField mg = apply_gravity_coupling(*prob.space, u, prob.rho, prob.ctx);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += mg[k];
  }
  return out;
}

StageSolution picard(const StageProblem& prob, Strategy strategy, const VectorField& u0,
                     const ScalarField& p0, const PicardConfig& cfg) {
  cfg.validate();
  const DgSpace& sp = *prob.space;
  const std::size_t n = sp.size();
  if (u0.size() != n || p0.size() != n || prob.rho.size() != n) {
    throw std::invalid_argument("stage solve: initial iterate does not match the space");
  }

  StageSolution sol;
  sol.u = u0;
  sol.p = p0;

  for (int it = 1; it <= cfg.max_iterations; ++it) {
    const ScalarField h_rho = enthalpy_density(sol.p, prob.gas);
    const ScalarField g =
        energy_rhs_from_ehat(sp, prob.gas, prob.ehat, iterate_state(prob, sol.u, sol.p), prob.ctx);
    const ScalarField kin = kinetic_energy_vector(sp, sol.u, prob.rho);

    // Momentum right-hand side with the lagged terms of the strategy.
    VectorField t = prob.f;
    axpy(-1.0, prob.fg, t);
    if (strategy == Strategy::r1) axpy(-1.0, apply_coriolis(sp, sol.u, prob.rho, prob.ctx), t);

    const ScalarField ct = coupling_block(prob, strategy, inverse_velocity_block(prob, strategy, t), h_rho);
    ScalarField rhs(n);
    for (std::size_t k = 0; k < n; ++k) rhs[k] = g[k] - kin[k] - ct[k];
    if (strategy == Strategy::r1) {
      const ScalarField mg = apply_gravity_coupling(sp, sol.u, prob.rho, prob.ctx);
      for (std::size_t k = 0; k < n; ++k) rhs[k] -= mg[k];
    }

    const LinearOperator schur = make_schur_operator(prob, strategy, h_rho);
    std::vector<double> p_next = sol.p;
    GmresStats stats;
    try {
      stats = gmres(schur, rhs, p_next, cfg.gmres);
    } catch (const GmresError& err) {
      throw StageSolveError(std::string("pressure solve failed: ") + err.what(), prob.ctx.stage,
                            it, err.history());
    }
    sol.gmres_iterations.push_back(stats.iterations);

    // Velocity recovery from the momentum equation.
    const VectorField bp = apply_pressure_gradient(sp, p_next, prob.ctx);
    axpy(-1.0, bp, t);
    VectorField u_next = inverse_velocity_block(prob, strategy, t);

    double diff = 0.0;
    for (int c = 0; c < 3; ++c) {
      for (std::size_t k = 0; k < n; ++k) {
        const double d = u_next[c][k] - sol.u[c][k];
        diff += d * d;
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double d = p_next[k] - sol.p[k];
      diff += d * d;
    }
    const double ref = std::max(std::sqrt(sq_norm(sol.u) + sq_norm(sol.p)), 1e-30);
    sol.variation = std::sqrt(diff) / ref;
    sol.variation_history.push_back(sol.variation);
    sol.u = std::move(u_next);
    sol.p = std::move(p_next);
    sol.picard_iterations = it;

    for (std::size_t k = 0; k < n; ++k) {
      if (!(sol.p[k] > 0.0)) {
        throw StageSolveError("non-positive pressure in Picard iterate", prob.ctx.stage, it,
                              sol.variation_history);
      }
    }
    if (sol.variation <= cfg.tol) return sol;
  }
  throw StageSolveError("Picard iteration did not converge in " +
                            std::to_string(cfg.max_iterations) + " iterations",
                        prob.ctx.stage, cfg.max_iterations, sol.variation_history);
}

}  // namespace

StageProblem make_stage_problem(const DgSpace& sp, const GasConstants& gas,
                                const StageContext& ctx, ScalarField rho, VectorField f,
                                ScalarField ehat) {
  StageProblem prob;
  prob.space = &sp;
  prob.gas = gas;
  prob.ctx = ctx;
  prob.rho = std::move(rho);
  prob.f = std::move(f);
  prob.ehat = std::move(ehat);
  prob.fg = gravity_vector(sp, prob.rho, ctx);
  return prob;
}

LinearOperator make_schur_operator(const StageProblem& prob, Strategy strategy,
                                   const ScalarField& h_rho) {
  LinearOperator op;
  op.size = prob.space->size();
  op.apply = [&prob, strategy, h_rho](std::span<const double> in, std::span<double> out) {
    const DgSpace& sp = *prob.space;
    const ScalarField p(in.begin(), in.end());
    const VectorField bp = apply_pressure_gradient(sp, p, prob.ctx);
    const ScalarField cb = coupling_block(prob, strategy, inverse_velocity_block(prob, strategy, bp), h_rho);
    const ScalarField dp = apply_energy_mass(sp, p, prob.gas);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = dp[k] - cb[k];
  };
  return op;
}

StageSolution solve_stage_r1(const StageProblem& prob, const VectorField& u0,
                             const ScalarField& p0, const PicardConfig& cfg) {
  return picard(prob, Strategy::r1, u0, p0, cfg);
}

StageSolution solve_stage_r2(const StageProblem& prob, const VectorField& u0,
                             const ScalarField& p0, const PicardConfig& cfg) {
  return picard(prob, Strategy::r2, u0, p0, cfg);
}

StageSolution solve_stage(const StageProblem& prob, const VectorField& u0, const ScalarField& p0,
                          const PicardConfig& cfg) {
  return picard(prob, cfg.strategy, u0, p0, cfg);
}

double coupled_residual(const StageProblem& prob, const VectorField& u, const ScalarField& p) {
  const DgSpace& sp = *prob.space;
  const std::size_t n = sp.size();

  VectorField rm = apply_mass_rho(sp, u, prob.rho);
  axpy(1.0, apply_coriolis(sp, u, prob.rho, prob.ctx), rm);
  axpy(1.0, apply_pressure_gradient(sp, p, prob.ctx), rm);
  axpy(1.0, prob.fg, rm);
  axpy(-1.0, prob.f, rm);

  const ScalarField g = energy_rhs_from_ehat(sp, prob.gas, prob.ehat, iterate_state(prob, u, p), prob.ctx);
  const ScalarField cu = apply_enthalpy_div(sp, u, enthalpy_density(p, prob.gas), prob.ctx);
  const ScalarField mg = apply_gravity_coupling(sp, u, prob.rho, prob.ctx);
  const ScalarField dp = apply_energy_mass(sp, p, prob.gas);
  const ScalarField kin = kinetic_energy_vector(sp, u, prob.rho);
  ScalarField re(n);
  for (std::size_t k = 0; k < n; ++k) re[k] = cu[k] + mg[k] + dp[k] + kin[k] - g[k];

  const double mom = std::sqrt(sq_norm(rm)) / std::max(std::sqrt(sq_norm(prob.f)), 1e-300);
  const double en = std::sqrt(sq_norm(re)) / std::max(std::sqrt(sq_norm(g)), 1e-300);
  return std::max(mom, en);
}

}  // namespace imexdg
