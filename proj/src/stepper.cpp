#include "imexdg/stepper.hpp"

#include <stdexcept>

namespace imexdg {

void StageHistory::clear() {
  states.clear();
  primitives.clear();
  nonstiff.clear();
  stiff.clear();
}

StageContext make_stage_context(const ButcherPair& tab, int stage, double dt,
                                const GasConstants& gas) {
  if (stage < 1 || stage > 3) throw std::invalid_argument("stage index must be 1, 2 or 3");
  StageContext ctx;
  ctx.stage = stage;
  ctx.dt = dt;
  ctx.diag = tab.a_impl[stage - 1][stage - 1];
  ctx.explicit_row = tab.a[stage - 1];
  ctx.implicit_row = tab.a_impl[stage - 1];
  ctx.coriolis = gas.coriolis;
  ctx.gravity = gas.gravity;
  return ctx;
}

ImexStepper::ImexStepper(const DgSpace& space, const GasConstants& gas, StepperOptions opts)
    : space_(&space), gas_(gas), opts_(opts), tab_(tableau()) {
  gas_.validate();
  opts_.picard.validate();
}

ConservedField ImexStepper::step(const ConservedField& qn, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  const DgSpace& sp = *space_;
  const std::size_t n = sp.size();
  if (qn.size() != n) throw std::invalid_argument("step: state does not match the space");
  const auto& m = sp.mass();

  history_.clear();
  stats_ = StepStats{};

  // Stage 1 is the state at t^n.
  history_.states.push_back(qn);
  history_.primitives.push_back(to_primitive(qn, gas_));
  history_.nonstiff.push_back(nonstiff_tendency(sp, history_.primitives[0], gas_));
  history_.stiff.push_back(opts_.implicit ? stiff_tendency(sp, history_.primitives[0], gas_)
                                          : Tendency(n));

  for (int l = 2; l <= 3; ++l) {
    const StageContext ctx = make_stage_context(tab_, l, dt, gas_);
    StageRhs rhs = assemble_stage_rhs(sp, qn, history_.nonstiff, history_.stiff, ctx);
    for (std::size_t k = 0; k < n; ++k) rhs.rho[k] /= m[k];

    PrimitiveField prim;
    ConservedField q;
    if (opts_.implicit) {
      const PrimitiveField& prev = history_.primitives.back();
      const StageProblem prob =
          make_stage_problem(sp, gas_, ctx, std::move(rhs.rho), std::move(rhs.f), std::move(rhs.ehat));
      StageSolution sol = solve_stage(prob, prev.vel, prev.p, opts_.picard);
      ++implicit_solves_;
      stats_.picard[l - 1] = sol.picard_iterations;
      for (int it : sol.gmres_iterations) stats_.gmres[l - 1] += it;
      stats_.variation[l - 1] = sol.variation;
      prim.rho = prob.rho;
      prim.vel = std::move(sol.u);
      prim.p = std::move(sol.p);
      q = to_conserved(prim, gas_);
    } else {
      q = ConservedField(n);
      for (std::size_t k = 0; k < n; ++k) {
        q.rho[k] = rhs.rho[k];
        q.rho_u[k] = rhs.f.u[k] / m[k];
        q.rho_v[k] = rhs.f.v[k] / m[k];
        q.rho_w[k] = rhs.f.w[k] / m[k];
        q.rho_e[k] = rhs.ehat[k] / m[k];
      }
      prim = to_primitive(q, gas_);
    }
    history_.nonstiff.push_back(nonstiff_tendency(sp, prim, gas_));
    history_.stiff.push_back(opts_.implicit ? stiff_tendency(sp, prim, gas_) : Tendency(n));
    history_.states.push_back(std::move(q));
    history_.primitives.push_back(std::move(prim));
  }

  ConservedField next = final_update(sp, qn, history_, dt, tab_);
  to_primitive(next, gas_);  // positivity check
  return next;
}

ConservedField final_update(const DgSpace& sp, const ConservedField& qn,
                            const StageHistory& history, double dt, const ButcherPair& tab) {
  if (history.nonstiff.size() < 3 || history.stiff.size() < 3) {
    throw std::invalid_argument("final_update: all three stages must be complete");
  }
  const std::size_t n = sp.size();
  const auto& m = sp.mass();
  ConservedField out = qn;
  for (int l = 0; l < 3; ++l) {
    const double w = dt * tab.b[l];
    const Tendency& ns = history.nonstiff[l];
    const Tendency& st = history.stiff[l];
    for (std::size_t k = 0; k < n; ++k) {
      const double s = w / m[k];
      out.rho[k] += s * (ns.rho[k] + st.rho[k]);
      out.rho_u[k] += s * (ns.mom.u[k] + st.mom.u[k]);
      out.rho_v[k] += s * (ns.mom.v[k] + st.mom.v[k]);
      out.rho_w[k] += s * (ns.mom.w[k] + st.mom.w[k]);
      out.rho_e[k] += s * (ns.energy[k] + st.energy[k]);
    }
  }
  return out;
}

Tendency implicit_reconstruction(const DgSpace& sp, const ConservedField& qn,
                                 const StageHistory& history, double dt, const ButcherPair& tab) {
  if (history.states.size() < 3) throw std::invalid_argument("implicit_reconstruction: need 3 stages");
  const std::size_t n = sp.size();
  const auto& m = sp.mass();
  const ConservedField& q3 = history.states[2];
  Tendency out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.rho[k] = m[k] * (q3.rho[k] - qn.rho[k]);
    out.mom.u[k] = m[k] * (q3.rho_u[k] - qn.rho_u[k]);
    out.mom.v[k] = m[k] * (q3.rho_v[k] - qn.rho_v[k]);
    out.mom.w[k] = m[k] * (q3.rho_w[k] - qn.rho_w[k]);
    out.energy[k] = m[k] * (q3.rho_e[k] - qn.rho_e[k]);
  }
  for (int l = 0; l < 2; ++l) {
    const double w = dt * tab.a[2][l];
    const Tendency& ns = history.nonstiff[l];
    for (std::size_t k = 0; k < n; ++k) {
      out.rho[k] -= w * ns.rho[k];
      out.mom.u[k] -= w * ns.mom.u[k];
      out.mom.v[k] -= w * ns.mom.v[k];
      out.mom.w[k] -= w * ns.mom.w[k];
      out.energy[k] -= w * ns.energy[k];
    }
  }
  return out;
}

Tendency implicit_contribution(const DgSpace& sp, const StageHistory& history, double dt,
                               const ButcherPair& tab) {
  if (history.stiff.size() < 3) throw std::invalid_argument("implicit_contribution: need 3 stages");
  const std::size_t n = sp.size();
  Tendency out(n);
  for (int l = 0; l < 3; ++l) {
    const double w = dt * tab.b[l];
    const Tendency& st = history.stiff[l];
    for (std::size_t k = 0; k < n; ++k) {
      out.rho[k] += w * st.rho[k];
      out.mom.u[k] += w * st.mom.u[k];
      out.mom.v[k] += w * st.mom.v[k];
      out.mom.w[k] += w * st.mom.w[k];
      out.energy[k] += w * st.energy[k];
    }
  }
  return out;
}

}  // namespace imexdg
