#include "imexdg/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kernels.hpp"

namespace imexdg {
namespace {

void require_size(const DgSpace& sp, std::size_t n, const char* what) {
  if (n != sp.size()) {
    throw std::invalid_argument(std::string(what) + ": dof vector does not match the space layout");
  }
}

void require_size(const DgSpace& sp, const VectorField& v, const char* what) {
  require_size(sp, v.u.size(), what);
  require_size(sp, v.v.size(), what);
  require_size(sp, v.w.size(), what);
}

}  // namespace

VectorField apply_mass_rho(const DgSpace& sp, const VectorField& u, const ScalarField& rho) {
  require_size(sp, u, "apply_mass_rho");
  require_size(sp, rho.size(), "apply_mass_rho");
  const auto& m = sp.mass();
  VectorField out(sp.size());
  for (std::size_t k = 0; k < sp.size(); ++k) {
    const double a = m[k] * rho[k];
    out.u[k] = a * u.u[k];
    out.v[k] = a * u.v[k];
    out.w[k] = a * u.w[k];
  }
  return out;
}

VectorField apply_inv_mass_rho(const DgSpace& sp, const VectorField& v, const ScalarField& rho) {
  require_size(sp, v, "apply_inv_mass_rho");
  require_size(sp, rho.size(), "apply_inv_mass_rho");
  const auto& m = sp.mass();
  VectorField out(sp.size());
  for (std::size_t k = 0; k < sp.size(); ++k) {
    if (!(rho[k] > 0.0)) throw std::domain_error("A^{-1} needs positive density");
    const double a = 1.0 / (m[k] * rho[k]);
    out.u[k] = a * v.u[k];
    out.v[k] = a * v.v[k];
    out.w[k] = a * v.w[k];
  }
  return out;
}

VectorField apply_coriolis(const DgSpace& sp, const VectorField& u, const ScalarField& rho,
                           const StageContext& ctx) {
  require_size(sp, u, "apply_coriolis");
  require_size(sp, rho.size(), "apply_coriolis");
  const double beta = ctx.beta();
  const auto& m = sp.mass();
  VectorField out(sp.size());
  if (beta == 0.0) return out;
  for (std::size_t k = 0; k < sp.size(); ++k) {
    const double a = beta * m[k] * rho[k];
    out.u[k] = -a * u.v[k];
    out.v[k] = a * u.u[k];
  }
  return out;
}

std::array<double, 9> inverse_rotation_block(double beta) {
  const double s = 1.0 / (1.0 + beta * beta);
  return {s, s * beta, 0.0, -s * beta, s, 0.0, 0.0, 0.0, 1.0};
}

VectorField apply_inv_mass_coriolis(const DgSpace& sp, const VectorField& v,
                                    const ScalarField& rho, const StageContext& ctx) {
  VectorField out = apply_inv_mass_rho(sp, v, rho);
  const double beta = ctx.beta();
  if (beta == 0.0) return out;
  const auto rot = inverse_rotation_block(beta);
  for (std::size_t k = 0; k < sp.size(); ++k) {
    const double a = out.u[k];
    const double b = out.v[k];
    out.u[k] = rot[0] * a + rot[1] * b;
    out.v[k] = rot[3] * a + rot[4] * b;
  }
  return out;
}

VectorField apply_pressure_gradient(const DgSpace& sp, const ScalarField& p,
                                    const StageContext& ctx) {
  require_size(sp, p.size(), "apply_pressure_gradient");
  const double c = ctx.coef();
  VectorField out(sp.size());
  detail::volume_terms(sp, p.data(), nullptr, out.u.data(), -c);
  detail::volume_terms(sp, nullptr, p.data(), out.w.data(), -c);
  // Centered average; on walls the mirror pressure equals the interior one.
  detail::face_terms<1, 2>(sp, {p.data()}, {1.0}, {out.u.data(), out.w.data()},
                           [c](const double* in, const double* ex, double nx, double nz,
                               double* f) {
                             const double avg = 0.5 * (in[0] + ex[0]);
                             f[0] = -c * avg * nx;
                             f[1] = -c * avg * nz;
                           });
  return out;
}

ScalarField enthalpy_density(const ScalarField& p, const GasConstants& gas) {
  ScalarField out(p.size());
  const double s = gas.gamma / (gas.gamma - 1.0);
  for (std::size_t k = 0; k < p.size(); ++k) out[k] = s * p[k];
  return out;
}

ScalarField apply_enthalpy_div(const DgSpace& sp, const VectorField& u, const ScalarField& h_rho,
                               const StageContext& ctx) {
  require_size(sp, u, "apply_enthalpy_div");
  require_size(sp, h_rho.size(), "apply_enthalpy_div");
  const double c = ctx.coef();
  const std::size_t n = sp.size();
  ScalarField fx(n);
  ScalarField fz(n);
  for (std::size_t k = 0; k < n; ++k) {
    fx[k] = h_rho[k] * u.u[k];
    fz[k] = h_rho[k] * u.w[k];
  }
  ScalarField out(n, 0.0);
  detail::volume_terms(sp, fx.data(), fz.data(), out.data(), -c);
  // Mirror state negates w on walls, so the wall normal flux cancels.
  detail::face_terms<3, 1>(sp, {h_rho.data(), u.u.data(), u.w.data()}, {1.0, 1.0, -1.0},
                           {out.data()},
                           [c](const double* in, const double* ex, double nx, double nz,
                               double* f) {
                             const double fin = in[0] * (in[1] * nx + in[2] * nz);
                             const double fex = ex[0] * (ex[1] * nx + ex[2] * nz);
                             f[0] = -c * 0.5 * (fin + fex);
                           });
  return out;
}

ScalarField apply_energy_mass(const DgSpace& sp, const ScalarField& p, const GasConstants& gas) {
  require_size(sp, p.size(), "apply_energy_mass");
  const auto& m = sp.mass();
  const double s = 1.0 / (gas.gamma - 1.0);
  ScalarField out(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) out[k] = s * m[k] * p[k];
  return out;
}

ScalarField apply_gravity_coupling(const DgSpace& sp, const VectorField& u, const ScalarField& rho,
                                   const StageContext& ctx) {
  require_size(sp, u, "apply_gravity_coupling");
  require_size(sp, rho.size(), "apply_gravity_coupling");
  const double s = ctx.gravity * ctx.coef();
  const auto& m = sp.mass();
  ScalarField out(sp.size());
  for (std::size_t k = 0; k < sp.size(); ++k) out[k] = s * m[k] * rho[k] * u.w[k];
  return out;
}

VectorField gravity_vector(const DgSpace& sp, const ScalarField& rho, const StageContext& ctx) {
  require_size(sp, rho.size(), "gravity_vector");
  const double s = ctx.gravity * ctx.coef();
  const auto& m = sp.mass();
  VectorField out(sp.size());
  for (std::size_t k = 0; k < sp.size(); ++k) out.w[k] = s * m[k] * rho[k];
  return out;
}

ScalarField kinetic_energy_vector(const DgSpace& sp, const VectorField& u, const ScalarField& rho) {
  require_size(sp, u, "kinetic_energy_vector");
  const auto& m = sp.mass();
  ScalarField out(sp.size());
  for (std::size_t k = 0; k < sp.size(); ++k) {
    out[k] = 0.5 * m[k] * rho[k] *
             (u.u[k] * u.u[k] + u.v[k] * u.v[k] + u.w[k] * u.w[k]);
  }
  return out;
}

ScalarField energy_jump_penalty(const DgSpace& sp, const PrimitiveField& s,
                                const GasConstants& gas) {
  require_size(sp, s.size(), "energy_jump_penalty");
  ScalarField out(sp.size(), 0.0);
  const double inv_gm1 = 1.0 / (gas.gamma - 1.0);
  // The face kernel subtracts, so hand back the negated penalty density.
  detail::face_terms<3, 1>(sp, {s.p.data(), s.vel.u.data(), s.vel.w.data()}, {1.0, 1.0, -1.0},
                           {out.data()},
                           [inv_gm1](const double* in, const double* ex, double nx, double nz,
                                     double* f) {
                             const double lam = std::max(std::abs(in[1] * nx + in[2] * nz),
                                                         std::abs(ex[1] * nx + ex[2] * nz));
                             f[0] = -0.5 * lam * inv_gm1 * (in[0] - ex[0]);
                           });
  return out;
}

}  // namespace imexdg
