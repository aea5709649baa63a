#include "imexdg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace imexdg {

SampleGrid::SampleGrid(int nx_, int nz_, double lx_, double lz_) : nx(nx_), nz(nz_), lx(lx_), lz(lz_) {
  if (nx < 1 || nz < 1) throw std::invalid_argument("sample grid counts must be at least 1");
  if (!(lx > 0.0) || !(lz > 0.0)) throw std::invalid_argument("sample grid extent must be positive");
}

SampleGrid element_grid(const ChannelMesh& mesh, int samples) {
  if (samples < 1) throw std::invalid_argument("samples per element must be at least 1");
  return SampleGrid(mesh.nx() * samples, mesh.nz() * samples, mesh.lx(), mesh.lz());
}

Quantity quantity_from_tag(const std::string& tag) {
  if (tag == "w") return Quantity::w;
  if (tag == "u") return Quantity::u;
  if (tag == "v") return Quantity::v;
  if (tag == "Tp") return Quantity::temperature_pert;
  if (tag == "pp") return Quantity::pressure_pert;
  if (tag == "rho") return Quantity::rho;
  throw std::invalid_argument("unknown quantity tag '" + tag + "'");
}

std::vector<SampleMatrix> sample_fields(const DgSpace& sp, const PrimitiveField& s,
                                        const std::vector<Quantity>& qs, const SampleGrid& grid,
                                        const Background& bg, const GasConstants& gas) {
  if (s.size() != sp.size()) throw std::invalid_argument("sample_fields: state does not match the space");
  std::vector<SampleMatrix> out(qs.size());
  for (auto& m : out) {
    m.nx = grid.nx;
    m.nz = grid.nz;
    m.data.resize(grid.size());
  }
  for (int j = 0; j < grid.nz; ++j) {
    const double z = grid.z(j);
    for (int i = 0; i < grid.nx; ++i) {
      const auto loc = sp.locate(grid.x(i), z);
      auto at = [&](const ScalarField& f) { return eval_at_point(sp, f, loc.element, loc.xi, loc.eta); };
      for (std::size_t q = 0; q < qs.size(); ++q) {
        double val = 0.0;
        switch (qs[q]) {
          case Quantity::w: val = at(s.vel.w); break;
          case Quantity::u: val = at(s.vel.u); break;
          case Quantity::v: val = at(s.vel.v); break;
          case Quantity::rho: val = at(s.rho); break;
          case Quantity::pressure_pert: val = at(s.p) - bg.pressure(z); break;
          case Quantity::temperature_pert:
            val = at(s.p) / (gas.r_gas * at(s.rho)) - bg.t0;
            break;
        }
        out[q].data[static_cast<std::size_t>(j) * grid.nx + i] = val;
      }
    }
  }
  return out;
}

SampleMatrix sample_field(const DgSpace& sp, const PrimitiveField& s, Quantity q,
                          const SampleGrid& grid, const Background& bg, const GasConstants& gas) {
  return std::move(sample_fields(sp, s, {q}, grid, bg, gas).front());
}

ErrorNorms error_norms(const SampleMatrix& a, const SampleMatrix& b) {
  if (a.nx != b.nx || a.nz != b.nz || a.data.size() != b.data.size()) {
    throw std::invalid_argument("error_norms: shape mismatch");
  }
  if (a.data.empty()) throw std::invalid_argument("error_norms: empty matrices");
  ErrorNorms e;
  double sum = 0.0;
  for (std::size_t k = 0; k < a.data.size(); ++k) {
    const double d = std::abs(a.data[k] - b.data[k]);
    sum += d * d;
    e.linf = std::max(e.linf, d);
  }
  e.l2 = std::sqrt(sum / static_cast<double>(a.data.size()));
  return e;
}

std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& resolutions) {
  if (errors.size() != resolutions.size() || errors.size() < 2) {
    throw std::invalid_argument("eoc: need at least two matching entries");
  }
  for (std::size_t k = 1; k < resolutions.size(); ++k) {
    if (!(resolutions[k] < resolutions[k - 1]) || !(resolutions[k] > 0.0)) {
      throw std::invalid_argument("eoc: resolutions must be positive and strictly decreasing");
    }
  }
  std::vector<double> out;
  for (std::size_t k = 1; k < errors.size(); ++k) {
    out.push_back(std::log(errors[k] / errors[k - 1]) / std::log(resolutions[k] / resolutions[k - 1]));
  }
  return out;
}

CourantNumbers courant_numbers(const ChannelMesh& mesh, int degree, double sound_speed, double dt,
                               double u_ref) {
  if (!(u_ref > 0.0)) throw std::invalid_argument("reference velocity must be positive");
  const double scale = degree * dt * std::sqrt(2.0) / min_diameter(mesh);
  return {scale * sound_speed, scale * u_ref};
}

CourantNumbers courant_numbers(const DgSpace& sp, const PrimitiveField& s, const GasConstants& gas,
                               double dt, double u_ref) {
  double c = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) c = std::max(c, std::sqrt(gas.gamma * s.p[k] / s.rho[k]));
  return courant_numbers(sp.mesh(), sp.basis().degree(), c, dt, u_ref);
}

double geostrophic_error(const DgSpace& sp, const PrimitiveField& s, double coriolis,
                         const SampleGrid& grid) {
  double sum = 0.0;
  for (int j = 0; j < grid.nz; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const auto loc = sp.locate(grid.x(i), grid.z(j));
      const double dpdx = eval_dx_at_point(sp, s.p, loc.element, loc.xi, loc.eta);
      const double rho = eval_at_point(sp, s.rho, loc.element, loc.xi, loc.eta);
      const double v = eval_at_point(sp, s.vel.v, loc.element, loc.xi, loc.eta);
      sum += std::abs(dpdx / rho - coriolis * v);
    }
  }
  return sum / static_cast<double>(grid.size());
}

Totals conservation_totals(const DgSpace& sp, const ConservedField& q) {
  return {integrate(sp, q.rho), integrate(sp, q.rho_e)};
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace imexdg
