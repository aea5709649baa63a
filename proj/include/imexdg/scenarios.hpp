#pragma once

#include "imexdg/space.hpp"
#include "imexdg/thermo.hpp"

namespace imexdg {

/// Isothermal hydrostatic background p0 = p_s e^{-delta z}, rho0 = rho_s e^{-delta z}.
struct Background {
  double t0 = 250.0;
  double p_s = 1e5;
  double r_gas = 287.0;
  double gravity = 9.81;

  double delta() const { return gravity / (r_gas * t0); }
  double rho_s() const { return p_s * delta() / gravity; }
  double pressure(double z) const;
  double density(double z) const;
};

/// Inertia-gravity-wave channel: warm Gaussian bubble on the background.
struct BaldaufParams {
  double lx = 6.0e6;
  double lz = 1.0e4;
  double t0 = 250.0;
  double p_s = 1e5;
  double delta_t = 0.01;  ///< bubble amplitude Delta T
  double a = 1.0e5;
  double xc = 3.0e6;
  double coriolis = 1.03126e-4;
  double t_final = 28800.0;
  double dt = 0.5;
  int nx = 300;
  int nz = 20;
  int degree = 4;
  GasConstants gas{};  ///< coriolis is overwritten by `coriolis`

  void validate() const;
  Background background() const;
  GasConstants constants() const;
  /// Channel height H.
  double height() const { return lz; }
  /// T_b = Delta T e^{-(x - xc)^2 / a^2} sin(pi z / H).
  double bubble(double x, double z) const;
};

BaldaufParams standard_baldauf_config();
BaldaufParams planetary_config();
/// 600 km x 10 km, a = 10 km, 60 x 10 elements, r = 2, dt = 2 s, T_f = 1800 s.
BaldaufParams desk_baldauf_config();

/// Nodal sampling of background plus Bretherton-scaled perturbation:
/// p = p0, rho = rho0 + e^{-delta z / 2} rho_b, rho_b = -rho_s T_b / T0, at rest.
ConservedField baldauf_initial_state(const BaldaufParams& params, const DgSpace& space);

/// The unperturbed background (Delta T = 0) in primitive form.
PrimitiveField background_state(const BaldaufParams& params, const DgSpace& space);

/// The space matching the mesh/degree fields of the params.
DgSpace make_space(const BaldaufParams& params);

}  // namespace imexdg
