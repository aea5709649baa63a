#pragma once

#include <span>

#include "imexdg/operators.hpp"
#include "imexdg/space.hpp"
#include "imexdg/thermo.hpp"

namespace imexdg {

/// Weak-form (mass-multiplied) time derivative of the conserved variables,
/// i.e. M dq/dt for one split part of the right-hand side.
struct Tendency {
  ScalarField rho;
  VectorField mom;
  ScalarField energy;

  Tendency() = default;
  explicit Tendency(std::size_t n) : rho(n, 0.0), mom(n), energy(n, 0.0) {}
};

/// Explicit part: mass flux, momentum advection, kinetic-energy flux, each
/// with a Rusanov penalty lambda = max |u.n|.
Tendency nonstiff_tendency(const DgSpace& sp, const PrimitiveField& s, const GasConstants& gas);

/// Implicit part: pressure gradient (centered), gravity, Coriolis, enthalpy
/// flux with a Rusanov penalty on rho e.
Tendency stiff_tendency(const DgSpace& sp, const PrimitiveField& s, const GasConstants& gas);

/// Right-hand sides of stage l in weak form:
///   rho  = M rho^n     + dt sum_m a_lm NS_m.rho
///   f    = M (rho u)^n + dt sum_m (a_lm NS_m.mom + a~_lm S_m.mom)
///   ehat = M (rho E)^n + dt sum_m (a_lm NS_m.energy + a~_lm S_m.energy)
struct StageRhs {
  ScalarField rho;
  VectorField f;
  ScalarField ehat;
};

StageRhs assemble_stage_rhs(const DgSpace& sp, const ConservedField& qn,
                            std::span<const Tendency> nonstiff, std::span<const Tendency> stiff,
                            const StageContext& ctx);

/// Nodal stage density rho^{(n,l)}.
ScalarField explicit_density_rhs(const DgSpace& sp, const GasConstants& gas,
                                 const ConservedField& qn, std::span<const PrimitiveField> stages,
                                 const StageContext& ctx);

/// Momentum right-hand side f^{(n,l)} from the previous stage states.
VectorField explicit_momentum_rhs_f(const DgSpace& sp, const GasConstants& gas,
                                    const ConservedField& qn,
                                    std::span<const PrimitiveField> stages,
                                    const StageContext& ctx);

/// Energy right-hand side g^{(n,l)}: ehat minus the stage-l jump penalty
/// a~_ll dt int lambda/2 [[rho e]][[psi]] evaluated at `iterate`.
ScalarField explicit_energy_rhs_g(const DgSpace& sp, const GasConstants& gas,
                                  const ConservedField& qn, std::span<const PrimitiveField> stages,
                                  const PrimitiveField& iterate, const StageContext& ctx);

/// Applies the lagged stage-l penalty to a precomputed ehat.
ScalarField energy_rhs_from_ehat(const DgSpace& sp, const GasConstants& gas,
                                 const ScalarField& ehat, const PrimitiveField& iterate,
                                 const StageContext& ctx);

}  // namespace imexdg
