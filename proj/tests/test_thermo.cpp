#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "imexdg/thermo.hpp"

using namespace imexdg;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
}  // namespace

TEST_CASE("gas constants") {
  const GasConstants g;
  CHECK(g.gamma == 1.4);
  CHECK(g.r_gas == 287.0);
  CHECK(g.gravity == 9.81);
  CHECK(rel(g.cp() - g.cv(), g.r_gas) < 1e-12);
  GasConstants bad;
  bad.gamma = 1.0;
  CHECK_THROWS(bad.validate());
  bad = GasConstants{};
  bad.r_gas = 0.0;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("primitives at rest") {
  const GasConstants g;
  const auto s = primitives_from_conserved({1.0, 0.0, 0.0, 0.0, 2.5e5}, g);
  CHECK(rel(s.p, 1.0e5) < 1e-15);
  CHECK(s.k == 0.0);
  CHECK(rel(s.h - s.e, s.p / s.rho) < 1e-12);
  CHECK(rel(s.temperature, 1.0e5 / 287.0) < 1e-14);
}

TEST_CASE("primitives with kinetic energy") {
  const GasConstants g;
  const auto s = primitives_from_conserved({1.0, 1.0, 0.0, 0.0, 2.5e5}, g);
  CHECK(s.k == doctest::Approx(0.5));
  CHECK(rel(s.p, 0.4 * (2.5e5 - 0.5)) < 1e-14);
}

TEST_CASE("sound speed at 250 K") {
  const GasConstants g;
  const double rho = 1.0;
  const double p = rho * g.r_gas * 250.0;
  const auto s = primitives_from_conserved(conserved_from_primitive(rho, 0, 0, 0, p, g), g);
  CHECK(s.c == doctest::Approx(316.94).epsilon(1e-4));
  CHECK(rel(s.temperature, 250.0) < 1e-14);
}

TEST_CASE("conserved from primitive") {
  const GasConstants g;
  const auto q = conserved_from_primitive(1.0, 0.0, 0.0, 0.0, 1e5, g);
  CHECK(rel(q[4], 2.5e5) < 1e-15);
  CHECK_THROWS_AS(conserved_from_primitive(0.0, 0, 0, 0, 1e5, g), std::invalid_argument);
  CHECK_THROWS_AS(conserved_from_primitive(1.0, 0, 0, 0, -1.0, g), std::invalid_argument);

  // background state at the ground
  const double delta = g.gravity / (g.r_gas * 250.0);
  const double p_s = 1e5;
  const double rho_s = p_s * delta / g.gravity;
  const auto s = primitives_from_conserved(conserved_from_primitive(rho_s * std::exp(0.0), 0, 0, 0, p_s, g), g);
  CHECK(rel(s.rho, rho_s) < 1e-15);
  CHECK(rel(s.p, p_s) < 1e-13);
}

TEST_CASE("round trip on random admissible states") {
  const GasConstants g;
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> ur(0.1, 2.0);
  std::uniform_real_distribution<double> uu(-50.0, 50.0);
  std::uniform_real_distribution<double> up(1e3, 2e5);
  for (int t = 0; t < 100; ++t) {
    const double rho = ur(rng);
    const double u = uu(rng);
    const double v = uu(rng);
    const double w = uu(rng);
    const double p = up(rng);
    const auto s = primitives_from_conserved(conserved_from_primitive(rho, u, v, w, p, g), g);
    CHECK(rel(s.rho, rho) < 1e-13);
    CHECK(std::abs(s.u - u) < 1e-13 * std::abs(u) + 1e-15);
    CHECK(std::abs(s.v - v) < 1e-13 * std::abs(v) + 1e-15);
    CHECK(std::abs(s.w - w) < 1e-13 * std::abs(w) + 1e-15);
    CHECK(rel(s.p, p) < 1e-13);
    CHECK(rel(s.h - s.e, s.p / s.rho) < 1e-12);
  }
}

TEST_CASE("inadmissible states carry the dof") {
  const GasConstants g;
  CHECK_THROWS_AS(primitives_from_conserved({-1.0, 0, 0, 0, 1.0}, g, 7), InvalidStateError);
  try {
    primitives_from_conserved({1.0, 10.0, 0, 0, 1.0}, g, 13);
    FAIL("expected InvalidStateError");
  } catch (const InvalidStateError& e) {
    CHECK(e.dof() == 13u);
  }

  ConservedField q(4);
  for (std::size_t k = 0; k < 4; ++k) q.set(k, conserved_from_primitive(1.0, 0, 0, 0, 1e5, g));
  q.rho[2] = 0.0;
  try {
    to_primitive(q, g);
    FAIL("expected InvalidStateError");
  } catch (const InvalidStateError& e) {
    CHECK(e.dof() == 2u);
  }
}

TEST_CASE("field conversions round trip") {
  const GasConstants g;
  PrimitiveField s(5);
  for (std::size_t k = 0; k < 5; ++k) {
    s.rho[k] = 1.0 + 0.1 * k;
    s.vel.u[k] = 0.5 * k;
    s.vel.v[k] = -0.25 * k;
    s.vel.w[k] = 0.1;
    s.p[k] = 1e5 - 100.0 * k;
  }
  const PrimitiveField back = to_primitive(to_conserved(s, g), g);
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(rel(back.p[k], s.p[k]) < 1e-13);
    CHECK(std::abs(back.vel.u[k] - s.vel.u[k]) < 1e-13);
  }
}

TEST_CASE("Coriolis does no work") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> d(-100.0, 100.0);
  for (int t = 0; t < 50; ++t) {
    const double u = d(rng);
    const double v = d(rng);
    // k x u = (-v, u, 0)
    CHECK((-v) * u + u * v == 0.0);
  }
}
