#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <string>

#include "imexdg/dense_assembly.hpp"
#include "imexdg/driver.hpp"
#include "imexdg/gmres.hpp"
#include "imexdg/operators.hpp"
#include "imexdg/scenarios.hpp"
#include "imexdg/stepper.hpp"
#include "imexdg/tableau.hpp"

namespace imexdg {
namespace {

double rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    num = std::max(num, std::abs(a[k] - b[k]));
    den = std::max(den, std::abs(b[k]));
  }
  return num / std::max(den, 1e-300);
}

bool check_tableau() {
  const ButcherPair t = tableau();
  double sb = 0.0;
  double bc = 0.0;
  for (int l = 0; l < 3; ++l) {
    sb += t.b[l];
    bc += t.b[l] * t.c[l];
  }
  bool ok = sb == 1.0 && std::abs(bc - 0.5) <= 1e-15;
  for (int l = 0; l < 3; ++l) {
    ok = ok && t.b[l] == t.a_impl[2][l];
    double ra = 0.0;
    double ri = 0.0;
    for (int m = 0; m < 3; ++m) {
      ra += t.a[l][m];
      ri += t.a_impl[l][m];
    }
    ok = ok && std::abs(ra - t.c[l]) <= 1e-15 && std::abs(ri - t.c[l]) <= 1e-15;
  }
  return ok;
}

bool check_rotation() {
  const DgSpace sp(ChannelMesh(2, 2, 3.0, 2.0), 2);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> d(0.5, 1.5);
  ScalarField rho(sp.size());
  VectorField x(sp.size());
  for (std::size_t k = 0; k < sp.size(); ++k) {
    rho[k] = d(rng);
    for (int c = 0; c < 3; ++c) x[c][k] = d(rng) - 1.0;
  }
  bool ok = true;
  for (double beta : {0.0, 0.01, 0.5, 1.0, 3.0}) {
    StageContext ctx;
    ctx.dt = 1.0;
    ctx.diag = 1.0;
    ctx.coriolis = beta;
    VectorField y = apply_mass_rho(sp, x, rho);
    const VectorField r = apply_coriolis(sp, x, rho, ctx);
    for (int c = 0; c < 3; ++c) {
      for (std::size_t k = 0; k < sp.size(); ++k) y[c][k] += r[c][k];
    }
    const VectorField back = apply_inv_mass_coriolis(sp, y, rho, ctx);
    ok = ok && rel_diff(flatten(back), flatten(x)) <= 1e-12;
  }
  return ok;
}

bool check_operators() {
  const DgSpace sp(ChannelMesh(2, 2, 3.0, 2.0), 2);
  GasConstants gas;
  gas.coriolis = 0.3;
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  PrimitiveField s(sp.size());
  VectorField u(sp.size());
  ScalarField p(sp.size());
  for (std::size_t k = 0; k < sp.size(); ++k) {
    s.rho[k] = 1.0 + 0.3 * d(rng);
    s.p[k] = 2.0 + 0.5 * d(rng);
    p[k] = d(rng);
    for (int c = 0; c < 3; ++c) u[c][k] = d(rng);
  }
  StageContext ctx;
  ctx.dt = 0.7;
  ctx.diag = 0.3;
  ctx.coriolis = gas.coriolis;
  ctx.gravity = gas.gravity;
  const auto flat_u = flatten(u);
  bool ok = true;
  ok = ok && rel_diff(flatten(apply_mass_rho(sp, u, s.rho)),
                      dense_assemble(OperatorTag::mass_rho, sp, s, gas, ctx).multiply(flat_u)) <= 1e-12;
  ok = ok && rel_diff(flatten(apply_coriolis(sp, u, s.rho, ctx)),
                      dense_assemble(OperatorTag::coriolis, sp, s, gas, ctx).multiply(flat_u)) <= 1e-12;
  ok = ok && rel_diff(flatten(apply_pressure_gradient(sp, p, ctx)),
                      dense_assemble(OperatorTag::pressure_gradient, sp, s, gas, ctx).multiply(p)) <= 1e-12;
  ok = ok && rel_diff(apply_enthalpy_div(sp, u, enthalpy_density(s.p, gas), ctx),
                      dense_assemble(OperatorTag::enthalpy_div, sp, s, gas, ctx).multiply(flat_u)) <= 1e-12;
  ok = ok && rel_diff(apply_energy_mass(sp, p, gas),
                      dense_assemble(OperatorTag::energy_mass, sp, s, gas, ctx).multiply(p)) <= 1e-12;
  ok = ok && rel_diff(apply_gravity_coupling(sp, u, s.rho, ctx),
                      dense_assemble(OperatorTag::gravity_coupling, sp, s, gas, ctx).multiply(flat_u)) <= 1e-12;
  return ok;
}

bool check_gmres() {
  const std::size_t n = 20;
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> diag(n);
  std::vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = 1.0 + static_cast<double>(i);
    rhs[i] = d(rng);
  }
  LinearOperator op{n, [&](std::span<const double> in, std::span<double> out) {
                      for (std::size_t i = 0; i < n; ++i) out[i] = diag[i] * in[i];
                    }};
  std::vector<double> x(n, 0.0);
  gmres(op, rhs, x, GmresConfig{});
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(x[i] - rhs[i] / diag[i]));
  return err <= 1e-10;
}

bool check_mass_conservation() {
  BaldaufParams p = desk_baldauf_config();
  p.nx = 12;
  p.nz = 3;
  p.lx = 1.2e5;
  p.xc = 6.0e4;
  p.delta_t = 1.0;
  const DgSpace sp = make_space(p);
  ImexStepper stepper(sp, p.constants());
  ConservedField q = baldauf_initial_state(p, sp);
  const double m0 = conservation_totals(sp, q).mass;
  double drift = 0.0;
  for (int i = 0; i < 3; ++i) {
    q = stepper.step(q, p.dt);
    drift = std::max(drift, std::abs(conservation_totals(sp, q).mass - m0) / m0);
  }
  return drift <= 1e-12;
}

bool check_rest_state() {
  const DgSpace sp(ChannelMesh(3, 2, 3000.0, 2000.0), 2);
  GasConstants gas;
  gas.gravity = 0.0;
  PrimitiveField s(sp.size());
  std::fill(s.rho.begin(), s.rho.end(), 1.2);
  std::fill(s.p.begin(), s.p.end(), 1e5);
  const ConservedField q0 = to_conserved(s, gas);
  ImexStepper stepper(sp, gas);
  const ConservedField q1 = stepper.step(q0, 0.1);
  return rel_diff(q1.rho_e, q0.rho_e) <= 1e-13 && rel_diff(q1.rho, q0.rho) <= 1e-13 &&
         max_abs(q1.rho_u) + max_abs(q1.rho_w) <= 1e-13 * 1.2;
}

}  // namespace

int run_builtin_checks(std::ostream& out) {
  struct Check {
    const char* name;
    bool (*fn)();
  };
  const Check checks[] = {
      {"tableau order conditions", check_tableau},
      {"rotation block inverse", check_rotation},
      {"matrix-free vs dense operators", check_operators},
      {"gmres diagonal system", check_gmres},
      {"mass conservation over 3 steps", check_mass_conservation},
      {"uniform rest state is a fixed point", check_rest_state},
  };
  int failures = 0;
  for (const auto& c : checks) {
    bool ok = false;
    std::string detail;
    try {
      ok = c.fn();
    } catch (const std::exception& e) {
      detail = std::string(" (") + e.what() + ")";
    }
    out << (ok ? "PASS " : "FAIL ") << c.name << detail << "\n";
    if (!ok) ++failures;
  }
  return failures;
}

}  // namespace imexdg
