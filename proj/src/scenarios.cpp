#include "imexdg/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace imexdg {

double Background::pressure(double z) const { return p_s * std::exp(-delta() * z); }

double Background::density(double z) const { return rho_s() * std::exp(-delta() * z); }

void BaldaufParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be positive");
  };
  positive(lx, "Lx");
  positive(lz, "Lz");
  positive(t0, "T0");
  positive(p_s, "p_s");
  positive(a, "a");
  positive(t_final, "t_final");
  positive(dt, "dt");
  if (!(delta_t >= 0.0) || !std::isfinite(delta_t)) throw std::invalid_argument("dT must be non-negative");
  if (!std::isfinite(coriolis)) throw std::invalid_argument("f must be finite");
  if (!(xc >= 0.0 && xc <= lx)) throw std::invalid_argument("xc must lie in [0, Lx]");
  if (nx < 1 || nz < 1) throw std::invalid_argument("element counts must be at least 1");
  if (degree < 1 || degree > kMaxDegree) throw std::invalid_argument("degree out of range");
  // The perturbation must leave the density positive.
  if (delta_t >= t0) throw std::invalid_argument("dT must be smaller than T0");
  gas.validate();
}

Background BaldaufParams::background() const {
  Background b;
  b.t0 = t0;
  b.p_s = p_s;
  b.r_gas = gas.r_gas;
  b.gravity = gas.gravity;
  return b;
}

GasConstants BaldaufParams::constants() const {
  GasConstants g = gas;
  g.coriolis = coriolis;
  return g;
}

double BaldaufParams::bubble(double x, double z) const {
  const double s = (x - xc) / a;
  return delta_t * std::exp(-s * s) * std::sin(std::numbers::pi * z / height());
}

BaldaufParams standard_baldauf_config() { return BaldaufParams{}; }

BaldaufParams planetary_config() {
  BaldaufParams p;
  p.lx = 6.0e7;
  p.xc = 3.0e7;
  p.a = 1.0e6;
  p.dt = 10.0;
  p.t_final = 96.0 * 3600.0;
  return p;
}

BaldaufParams desk_baldauf_config() {
  BaldaufParams p;
  p.lx = 6.0e5;
  p.xc = 3.0e5;
  p.a = 1.0e4;
  p.nx = 60;
  p.nz = 10;
  p.degree = 2;
  p.dt = 2.0;
  p.t_final = 1800.0;
  return p;
}

ConservedField baldauf_initial_state(const BaldaufParams& params, const DgSpace& space) {
  params.validate();
  const Background bg = params.background();
  const GasConstants gas = params.constants();
  const double delta = bg.delta();
  const double rho_s = bg.rho_s();
  ConservedField q(space.size());
  for (std::size_t k = 0; k < space.size(); ++k) {
    const auto [x, z] = space.node_coords(k);
    const double rho_b = -rho_s * params.bubble(x, z) / params.t0;
    const double rho = bg.density(z) + std::exp(-0.5 * delta * z) * rho_b;
    q.set(k, conserved_from_primitive(rho, 0.0, 0.0, 0.0, bg.pressure(z), gas));
  }
  return q;
}

PrimitiveField background_state(const BaldaufParams& params, const DgSpace& space) {
  const Background bg = params.background();
  PrimitiveField s(space.size());
  for (std::size_t k = 0; k < space.size(); ++k) {
    const double z = space.node_coords(k)[1];
    s.rho[k] = bg.density(z);
    s.p[k] = bg.pressure(z);
  }
  return s;
}

DgSpace make_space(const BaldaufParams& params) {
  return DgSpace(ChannelMesh(params.nx, params.nz, params.lx, params.lz), params.degree);
}

}  // namespace imexdg
