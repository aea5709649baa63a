#include "imexdg/thermo.hpp"

#include <cmath>

namespace imexdg {

void GasConstants::validate() const {
  if (!(gamma > 1.0)) throw std::invalid_argument("gamma must exceed 1");
  if (!(r_gas > 0.0)) throw std::invalid_argument("gas constant must be positive");
  if (!std::isfinite(gravity) || !std::isfinite(coriolis)) {
    throw std::invalid_argument("gravity and Coriolis parameter must be finite");
  }
}

PrimitiveSample primitives_from_conserved(const ConservedSample& q, const GasConstants& gas,
                                          std::size_t dof) {
  const double rho = q[0];
  if (!(rho > 0.0)) throw InvalidStateError("non-positive density", dof);
  PrimitiveSample s{};
  s.rho = rho;
  s.u = q[1] / rho;
  s.v = q[2] / rho;
  s.w = q[3] / rho;
  s.k = 0.5 * (s.u * s.u + s.v * s.v + s.w * s.w);
  const double rho_e = q[4] - rho * s.k;
  if (!(rho_e > 0.0)) throw InvalidStateError("non-positive internal energy", dof);
  s.e = rho_e / rho;
  s.p = (gas.gamma - 1.0) * rho_e;
  s.temperature = s.p / (rho * gas.r_gas);
  s.h = s.e + s.p / rho;
  s.c = std::sqrt(gas.gamma * s.p / rho);
  return s;
}

ConservedSample conserved_from_primitive(double rho, double u, double v, double w, double p,
                                         const GasConstants& gas) {
  if (!(rho > 0.0)) throw std::invalid_argument("density must be positive");
  if (!(p > 0.0)) throw std::invalid_argument("pressure must be positive");
  const double k = 0.5 * (u * u + v * v + w * w);
  return {rho, rho * u, rho * v, rho * w, p / (gas.gamma - 1.0) + rho * k};
}

void ConservedField::set(std::size_t k, const ConservedSample& q) {
  rho[k] = q[0];
  rho_u[k] = q[1];
  rho_v[k] = q[2];
  rho_w[k] = q[3];
  rho_e[k] = q[4];
}

PrimitiveField to_primitive(const ConservedField& q, const GasConstants& gas) {
  PrimitiveField s(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) {
    const auto ps = primitives_from_conserved(q.at(k), gas, k);
    s.rho[k] = ps.rho;
    s.vel.u[k] = ps.u;
    s.vel.v[k] = ps.v;
    s.vel.w[k] = ps.w;
    s.p[k] = ps.p;
  }
  return s;
}

ConservedField to_conserved(const PrimitiveField& s, const GasConstants& gas) {
  ConservedField q(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!(s.rho[k] > 0.0)) throw InvalidStateError("non-positive density", k);
    if (!(s.p[k] > 0.0)) throw InvalidStateError("non-positive pressure", k);
    q.set(k, conserved_from_primitive(s.rho[k], s.vel.u[k], s.vel.v[k], s.vel.w[k], s.p[k], gas));
  }
  return q;
}

}  // namespace imexdg
