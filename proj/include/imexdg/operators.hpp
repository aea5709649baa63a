#pragma once

#include <array>

#include "imexdg/space.hpp"
#include "imexdg/thermo.hpp"

namespace imexdg {

/// Per-stage coefficients of the implicit system.
struct StageContext {
  int stage = 2;                      ///< 1-based stage index l
  double dt = 0.0;
  double diag = 0.0;                  ///< implicit diagonal weight a~_ll
  std::array<double, 3> explicit_row{};  ///< a_lm, m < l
  std::array<double, 3> implicit_row{};  ///< a~_lm, m < l
  double coriolis = 0.0;
  double gravity = 0.0;

  /// a~_ll * dt, the weight of every implicit operator.
  double coef() const { return diag * dt; }
  /// beta = a~_ll dt f.
  double beta() const { return coef() * coriolis; }
};

// Matrix-free actions of the blocks of the coupled stage system
//
//   (A + R) u + B p + f_g = f
//   (C + M_g) u + D p + k = g
//
// With the collocated nodal basis A, D, M_g and f_g are pointwise diagonal.

/// A u: density-weighted mass.
VectorField apply_mass_rho(const DgSpace& sp, const VectorField& u, const ScalarField& rho);

/// A^{-1} v. Throws std::domain_error on non-positive density.
VectorField apply_inv_mass_rho(const DgSpace& sp, const VectorField& v, const ScalarField& rho);

/// R u = beta A J u with J u = k x u = (-v, u, 0).
VectorField apply_coriolis(const DgSpace& sp, const VectorField& u, const ScalarField& rho,
                           const StageContext& ctx);

/// (A + R)^{-1} v = (I + beta J)^{-1} A^{-1} v, applied pointwise.
VectorField apply_inv_mass_coriolis(const DgSpace& sp, const VectorField& v,
                                    const ScalarField& rho, const StageContext& ctx);

/// The pointwise rotation (I + beta J)^{-1} as a 3x3 row-major matrix.
std::array<double, 9> inverse_rotation_block(double beta);

/// B p: weak pressure gradient with centered face average.
VectorField apply_pressure_gradient(const DgSpace& sp, const ScalarField& p,
                                    const StageContext& ctx);

/// C u: weak enthalpy-flux divergence with centered average of (h rho u).
/// `h_rho` is the nodal h * rho of the current Picard iterate.
ScalarField apply_enthalpy_div(const DgSpace& sp, const VectorField& u, const ScalarField& h_rho,
                               const StageContext& ctx);

/// h * rho = gamma p / (gamma - 1) at every node.
ScalarField enthalpy_density(const ScalarField& p, const GasConstants& gas);

/// D p: mass / (gamma - 1).
ScalarField apply_energy_mass(const DgSpace& sp, const ScalarField& p, const GasConstants& gas);

/// M_g u: g a~_ll dt rho w, mass-weighted.
ScalarField apply_gravity_coupling(const DgSpace& sp, const VectorField& u, const ScalarField& rho,
                                   const StageContext& ctx);

/// f_g: g a~_ll dt rho in the vertical component.
VectorField gravity_vector(const DgSpace& sp, const ScalarField& rho, const StageContext& ctx);

/// k: mass-weighted rho |u|^2 / 2.
ScalarField kinetic_energy_vector(const DgSpace& sp, const VectorField& u, const ScalarField& rho);

/// int lambda/2 [[rho e]].[[psi]] over all faces, lambda = max |u.n|.
ScalarField energy_jump_penalty(const DgSpace& sp, const PrimitiveField& s,
                                const GasConstants& gas);

}  // namespace imexdg
