#pragma once

#include <string>
#include <utility>
#include <vector>

#include "imexdg/scenarios.hpp"
#include "imexdg/space.hpp"
#include "imexdg/thermo.hpp"

namespace imexdg {

/// Uniform grid of cell centers over (0, lx) x (0, lz).
struct SampleGrid {
  int nx = 1;
  int nz = 1;
  double lx = 1.0;
  double lz = 1.0;

  SampleGrid() = default;
  SampleGrid(int nx_, int nz_, double lx_, double lz_);
  double x(int i) const { return (i + 0.5) * lx / nx; }
  double z(int j) const { return (j + 0.5) * lz / nz; }
  std::size_t size() const { return static_cast<std::size_t>(nx) * nz; }
};

/// `samples` points per element per direction.
SampleGrid element_grid(const ChannelMesh& mesh, int samples = 4);

/// Row-major in z: value(i, j) = data[j * nx + i].
struct SampleMatrix {
  int nx = 0;
  int nz = 0;
  std::vector<double> data;

  double operator()(int i, int j) const { return data[static_cast<std::size_t>(j) * nx + i]; }
};

enum class Quantity { w, u, v, temperature_pert, pressure_pert, rho };

/// "w", "u", "v", "Tp", "pp", "rho". Throws std::invalid_argument otherwise.
Quantity quantity_from_tag(const std::string& tag);

/// Point evaluation of a derived quantity at every grid point. T' and p' are
/// taken against `bg`.
SampleMatrix sample_field(const DgSpace& sp, const PrimitiveField& s, Quantity q,
                          const SampleGrid& grid, const Background& bg, const GasConstants& gas);

/// Several quantities at once, sharing the basis evaluations.
std::vector<SampleMatrix> sample_fields(const DgSpace& sp, const PrimitiveField& s,
                                        const std::vector<Quantity>& qs, const SampleGrid& grid,
                                        const Background& bg, const GasConstants& gas);

struct ErrorNorms {
  double l2 = 0.0;    ///< root mean square
  double linf = 0.0;
};

ErrorNorms error_norms(const SampleMatrix& a, const SampleMatrix& b);

/// Pairwise orders log(e_{k+1}/e_k) / log(h_{k+1}/h_k). Resolutions must
/// strictly decrease.
std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& resolutions);

struct CourantNumbers {
  double acoustic = 0.0;
  double advective = 0.0;
};

/// C = r c dt sqrt(d) / H, C_adv = r U dt sqrt(d) / H with d = 2, H the
/// smallest element diameter and c the largest nodal sound speed.
CourantNumbers courant_numbers(const DgSpace& sp, const PrimitiveField& s, const GasConstants& gas,
                               double dt, double u_ref);
/// Same with an explicit sound speed.
CourantNumbers courant_numbers(const ChannelMesh& mesh, int degree, double sound_speed, double dt,
                               double u_ref);

/// Mean over the grid of |dp/dx / rho - f v|, dp/dx from the exact
/// derivative of the local polynomial (midpoint rule).
double geostrophic_error(const DgSpace& sp, const PrimitiveField& s, double coriolis,
                         const SampleGrid& grid);

struct Totals {
  double mass = 0.0;
  double energy = 0.0;
};

Totals conservation_totals(const DgSpace& sp, const ConservedField& q);

double max_abs(const std::vector<double>& v);

}  // namespace imexdg
