#include "imexdg/tendencies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "kernels.hpp"

namespace imexdg {

Tendency nonstiff_tendency(const DgSpace& sp, const PrimitiveField& s, const GasConstants& gas) {
  (void)gas;
  const std::size_t n = sp.size();
  if (s.size() != n) throw std::invalid_argument("nonstiff_tendency: layout mismatch");
  Tendency t(n);
  ScalarField fx(n);
  ScalarField fz(n);

  // Mass flux rho u.
  for (std::size_t k = 0; k < n; ++k) {
    fx[k] = s.rho[k] * s.vel.u[k];
    fz[k] = s.rho[k] * s.vel.w[k];
  }
  detail::volume_terms(sp, fx.data(), fz.data(), t.rho.data(), 1.0);

  // Momentum advection rho u_c u.
  for (int c = 0; c < 3; ++c) {
    const auto& uc = s.vel[c];
    for (std::size_t k = 0; k < n; ++k) {
      const double m = s.rho[k] * uc[k];
      fx[k] = m * s.vel.u[k];
      fz[k] = m * s.vel.w[k];
    }
    detail::volume_terms(sp, fx.data(), fz.data(), t.mom[c].data(), 1.0);
  }

  // Kinetic-energy flux k rho u.
  for (std::size_t k = 0; k < n; ++k) {
    const double ke = 0.5 * (s.vel.u[k] * s.vel.u[k] + s.vel.v[k] * s.vel.v[k] +
                             s.vel.w[k] * s.vel.w[k]);
    fx[k] = ke * s.rho[k] * s.vel.u[k];
    fz[k] = ke * s.rho[k] * s.vel.w[k];
  }
  detail::volume_terms(sp, fx.data(), fz.data(), t.energy.data(), 1.0);

  detail::face_terms<4, 5>(
      sp, {s.rho.data(), s.vel.u.data(), s.vel.v.data(), s.vel.w.data()},
      {1.0, 1.0, 1.0, -1.0},
      {t.rho.data(), t.mom.u.data(), t.mom.v.data(), t.mom.w.data(), t.energy.data()},
      [](const double* in, const double* ex, double nx, double nz, double* f) {
        const double un_in = in[1] * nx + in[3] * nz;
        const double un_ex = ex[1] * nx + ex[3] * nz;
        const double lam = std::max(std::abs(un_in), std::abs(un_ex));
        const double ke_in = 0.5 * (in[1] * in[1] + in[2] * in[2] + in[3] * in[3]);
        const double ke_ex = 0.5 * (ex[1] * ex[1] + ex[2] * ex[2] + ex[3] * ex[3]);
        const double mflux_in = in[0] * un_in;
        const double mflux_ex = ex[0] * un_ex;
        f[0] = 0.5 * (mflux_in + mflux_ex) + 0.5 * lam * (in[0] - ex[0]);
        for (int c = 0; c < 3; ++c) {
          f[1 + c] = 0.5 * (mflux_in * in[1 + c] + mflux_ex * ex[1 + c]) +
                     0.5 * lam * (in[0] * in[1 + c] - ex[0] * ex[1 + c]);
        }
        f[4] = 0.5 * (ke_in * mflux_in + ke_ex * mflux_ex) +
               0.5 * lam * (in[0] * ke_in - ex[0] * ke_ex);
      });
  return t;
}

Tendency stiff_tendency(const DgSpace& sp, const PrimitiveField& s, const GasConstants& gas) {
  const std::size_t n = sp.size();
  if (s.size() != n) throw std::invalid_argument("stiff_tendency: layout mismatch");
  Tendency t(n);
  const auto& m = sp.mass();

  // Pressure gradient, int p div(phi) - faces.
  detail::volume_terms(sp, s.p.data(), nullptr, t.mom.u.data(), 1.0);
  detail::volume_terms(sp, nullptr, s.p.data(), t.mom.w.data(), 1.0);

  // Enthalpy flux h rho u with h rho = gamma p / (gamma - 1).
  const double hs = gas.gamma / (gas.gamma - 1.0);
  const double inv_gm1 = 1.0 / (gas.gamma - 1.0);
  ScalarField fx(n);
  ScalarField fz(n);
  for (std::size_t k = 0; k < n; ++k) {
    fx[k] = hs * s.p[k] * s.vel.u[k];
    fz[k] = hs * s.p[k] * s.vel.w[k];
  }
  detail::volume_terms(sp, fx.data(), fz.data(), t.energy.data(), 1.0);

  detail::face_terms<3, 3>(
      sp, {s.p.data(), s.vel.u.data(), s.vel.w.data()}, {1.0, 1.0, -1.0},
      {t.mom.u.data(), t.mom.w.data(), t.energy.data()},
      [hs, inv_gm1](const double* in, const double* ex, double nx, double nz, double* f) {
        const double un_in = in[1] * nx + in[2] * nz;
        const double un_ex = ex[1] * nx + ex[2] * nz;
        const double lam = std::max(std::abs(un_in), std::abs(un_ex));
        const double pavg = 0.5 * (in[0] + ex[0]);
        f[0] = pavg * nx;
        f[1] = pavg * nz;
        f[2] = 0.5 * hs * (in[0] * un_in + ex[0] * un_ex) +
               0.5 * lam * inv_gm1 * (in[0] - ex[0]);
      });

  // Gravity and Coriolis sources; Coriolis does no work.
  const double g = gas.gravity;
  const double fc = gas.coriolis;
  for (std::size_t k = 0; k < n; ++k) {
    const double mr = m[k] * s.rho[k];
    t.mom.u[k] += fc * mr * s.vel.v[k];
    t.mom.v[k] -= fc * mr * s.vel.u[k];
    t.mom.w[k] -= g * mr;
    t.energy[k] -= g * mr * s.vel.w[k];
  }
  return t;
}

StageRhs assemble_stage_rhs(const DgSpace& sp, const ConservedField& qn,
                            std::span<const Tendency> nonstiff, std::span<const Tendency> stiff,
                            const StageContext& ctx) {
  const std::size_t n = sp.size();
  const int prior = ctx.stage - 1;
  if (prior < 0 || static_cast<int>(nonstiff.size()) < prior ||
      static_cast<int>(stiff.size()) < prior) {
    throw std::invalid_argument("assemble_stage_rhs: missing stage history");
  }
  const auto& m = sp.mass();
  StageRhs rhs;
  rhs.rho.resize(n);
  rhs.f = VectorField(n);
  rhs.ehat.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    rhs.rho[k] = m[k] * qn.rho[k];
    rhs.f.u[k] = m[k] * qn.rho_u[k];
    rhs.f.v[k] = m[k] * qn.rho_v[k];
    rhs.f.w[k] = m[k] * qn.rho_w[k];
    rhs.ehat[k] = m[k] * qn.rho_e[k];
  }
  for (int s = 0; s < prior; ++s) {
    const double ae = ctx.dt * ctx.explicit_row[s];
    const double ai = ctx.dt * ctx.implicit_row[s];
    const Tendency& ns = nonstiff[s];
    const Tendency& st = stiff[s];
    for (std::size_t k = 0; k < n; ++k) {
      rhs.rho[k] += ae * ns.rho[k];
      rhs.f.u[k] += ae * ns.mom.u[k] + ai * st.mom.u[k];
      rhs.f.v[k] += ae * ns.mom.v[k] + ai * st.mom.v[k];
      rhs.f.w[k] += ae * ns.mom.w[k] + ai * st.mom.w[k];
      rhs.ehat[k] += ae * ns.energy[k] + ai * st.energy[k];
    }
  }
  return rhs;
}

namespace {

StageRhs rhs_from_states(const DgSpace& sp, const GasConstants& gas, const ConservedField& qn,
                         std::span<const PrimitiveField> stages, const StageContext& ctx) {
  std::vector<Tendency> ns;
  std::vector<Tendency> st;
  for (int s = 0; s < ctx.stage - 1; ++s) {
    ns.push_back(nonstiff_tendency(sp, stages[s], gas));
    st.push_back(stiff_tendency(sp, stages[s], gas));
  }
  return assemble_stage_rhs(sp, qn, ns, st, ctx);
}

}  // namespace

ScalarField explicit_density_rhs(const DgSpace& sp, const GasConstants& gas,
                                 const ConservedField& qn, std::span<const PrimitiveField> stages,
                                 const StageContext& ctx) {
  StageRhs rhs = rhs_from_states(sp, gas, qn, stages, ctx);
  const auto& m = sp.mass();
  for (std::size_t k = 0; k < rhs.rho.size(); ++k) rhs.rho[k] /= m[k];
  return rhs.rho;
}

VectorField explicit_momentum_rhs_f(const DgSpace& sp, const GasConstants& gas,
                                    const ConservedField& qn,
                                    std::span<const PrimitiveField> stages,
                                    const StageContext& ctx) {
  return rhs_from_states(sp, gas, qn, stages, ctx).f;
}

ScalarField energy_rhs_from_ehat(const DgSpace& sp, const GasConstants& gas,
                                 const ScalarField& ehat, const PrimitiveField& iterate,
                                 const StageContext& ctx) {
  ScalarField g = ehat;
  const ScalarField pen = energy_jump_penalty(sp, iterate, gas);
  const double c = ctx.coef();
  for (std::size_t k = 0; k < g.size(); ++k) g[k] -= c * pen[k];
  return g;
}

ScalarField explicit_energy_rhs_g(const DgSpace& sp, const GasConstants& gas,
                                  const ConservedField& qn, std::span<const PrimitiveField> stages,
                                  const PrimitiveField& iterate, const StageContext& ctx) {
  const StageRhs rhs = rhs_from_states(sp, gas, qn, stages, ctx);
  return energy_rhs_from_ehat(sp, gas, rhs.ehat, iterate, ctx);
}

}  // namespace imexdg
