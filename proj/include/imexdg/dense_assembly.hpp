#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "imexdg/operators.hpp"
#include "imexdg/space.hpp"
#include "imexdg/tendencies.hpp"
#include "imexdg/thermo.hpp"

namespace imexdg {

// Test oracle: every operator of the stage system assembled by explicit
// quadrature loops over elements and over the mesh face table, evaluating
// the Lagrange basis from scratch at each quadrature point. Shares nothing
// with the matrix-free kernels except mesh, basis nodes and weights.

enum class OperatorTag { mass_rho, coriolis, pressure_gradient, enthalpy_div, energy_mass, gravity_coupling };

/// Row-major dense matrix. Velocity-space indices are component-blocked:
/// row = c * N + k for component c and scalar dof k.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  std::vector<double> multiply(std::span<const double> x) const;
};

inline constexpr int kDenseMaxElements = 16;
inline constexpr int kDenseMaxDegree = 3;

/// Assembles the operator at the given state (rho, and p through h rho for
/// C). Throws std::length_error beyond 16 elements or degree 3.
DenseMatrix dense_assemble(OperatorTag tag, const DgSpace& sp, const PrimitiveField& state,
                           const GasConstants& gas, const StageContext& ctx);

/// Flatten / unflatten velocity-space vectors in the dense ordering.
std::vector<double> flatten(const VectorField& v);
VectorField unflatten(std::span<const double> x);

/// Quadrature-loop evaluations of the vector-valued forms.
Tendency reference_nonstiff_tendency(const DgSpace& sp, const PrimitiveField& s,
                                     const GasConstants& gas);
Tendency reference_stiff_tendency(const DgSpace& sp, const PrimitiveField& s,
                                  const GasConstants& gas);
VectorField reference_gravity_vector(const DgSpace& sp, const ScalarField& rho,
                                     const StageContext& ctx);
ScalarField reference_energy_jump_penalty(const DgSpace& sp, const PrimitiveField& s,
                                          const GasConstants& gas);

/// f^{(n,l)} and g^{(n,l)} written term by term from the stage formulas.
VectorField reference_momentum_rhs(const DgSpace& sp, const GasConstants& gas,
                                   const ConservedField& qn, std::span<const PrimitiveField> stages,
                                   const StageContext& ctx);
ScalarField reference_energy_rhs(const DgSpace& sp, const GasConstants& gas,
                                 const ConservedField& qn, std::span<const PrimitiveField> stages,
                                 const PrimitiveField& iterate, const StageContext& ctx);

}  // namespace imexdg
