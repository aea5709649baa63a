#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "imexdg/space.hpp"

namespace imexdg {

/// Ideal-gas and planetary constants.
struct GasConstants {
  double gamma = 1.4;
  double r_gas = 287.0;
  double gravity = 9.81;
  double coriolis = 0.0;

  double cp() const { return gamma * r_gas / (gamma - 1.0); }
  double cv() const { return r_gas / (gamma - 1.0); }
  void validate() const;
};

/// Thrown when a state has non-positive density or internal energy.
class InvalidStateError : public std::runtime_error {
 public:
  InvalidStateError(const std::string& what, std::size_t dof)
      : std::runtime_error(what + " at dof " + std::to_string(dof)), dof_(dof) {}
  std::size_t dof() const { return dof_; }

 private:
  std::size_t dof_;
};

/// (rho, rho u, rho v, rho w, rho E) at one node.
using ConservedSample = std::array<double, 5>;

struct PrimitiveSample {
  double rho;
  double u;
  double v;
  double w;
  double p;
  double temperature;
  double e;  ///< specific internal energy
  double h;  ///< specific enthalpy
  double k;  ///< specific kinetic energy
  double c;  ///< sound speed
};

PrimitiveSample primitives_from_conserved(const ConservedSample& q, const GasConstants& gas,
                                          std::size_t dof = 0);

ConservedSample conserved_from_primitive(double rho, double u, double v, double w, double p,
                                         const GasConstants& gas);

/// Nodal conserved variables over the whole mesh.
struct ConservedField {
  ScalarField rho;
  ScalarField rho_u;
  ScalarField rho_v;
  ScalarField rho_w;
  ScalarField rho_e;

  ConservedField() = default;
  explicit ConservedField(std::size_t n)
      : rho(n, 0.0), rho_u(n, 0.0), rho_v(n, 0.0), rho_w(n, 0.0), rho_e(n, 0.0) {}
  std::size_t size() const { return rho.size(); }
  ConservedSample at(std::size_t k) const { return {rho[k], rho_u[k], rho_v[k], rho_w[k], rho_e[k]}; }
  void set(std::size_t k, const ConservedSample& q);
};

/// Nodal (rho, velocity, pressure): the variables the stage system is posed in.
struct PrimitiveField {
  ScalarField rho;
  VectorField vel;
  ScalarField p;

  PrimitiveField() = default;
  explicit PrimitiveField(std::size_t n) : rho(n, 0.0), vel(n), p(n, 0.0) {}
  std::size_t size() const { return rho.size(); }
};

/// Throws InvalidStateError at the first inadmissible node.
PrimitiveField to_primitive(const ConservedField& q, const GasConstants& gas);
ConservedField to_conserved(const PrimitiveField& s, const GasConstants& gas);

}  // namespace imexdg
