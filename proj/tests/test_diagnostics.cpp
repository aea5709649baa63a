#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "imexdg/diagnostics.hpp"

using namespace imexdg;

namespace {

SampleMatrix matrix(int nx, int nz, std::vector<double> data) { return SampleMatrix{nx, nz, std::move(data)}; }

SampleMatrix random_matrix(int nx, int nz, std::mt19937& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  SampleMatrix m{nx, nz, std::vector<double>(static_cast<std::size_t>(nx) * nz)};
  for (auto& v : m.data) v = d(rng);
  return m;
}

PrimitiveField resting(const DgSpace& sp, double rho, double p) {
  PrimitiveField s(sp.size());
  std::fill(s.rho.begin(), s.rho.end(), rho);
  std::fill(s.p.begin(), s.p.end(), p);
  return s;
}

}  // namespace

TEST_CASE("sample grids") {
  const SampleGrid g(4, 2, 8.0, 2.0);
  CHECK(g.size() == 8);
  CHECK(g.x(0) == 1.0);
  CHECK(g.x(3) == 7.0);
  CHECK(g.z(1) == 1.5);
  CHECK_THROWS_AS(SampleGrid(0, 2, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SampleGrid(2, 2, -1.0, 1.0), std::invalid_argument);
  const SampleGrid e = element_grid(build_mesh(3, 2, 3.0, 2.0), 4);
  CHECK(e.nx == 12);
  CHECK(e.nz == 8);
  CHECK_THROWS_AS(element_grid(build_mesh(3, 2, 3.0, 2.0), 0), std::invalid_argument);
}

TEST_CASE("quantity tags") {
  CHECK(quantity_from_tag("w") == Quantity::w);
  CHECK(quantity_from_tag("Tp") == Quantity::temperature_pert);
  CHECK(quantity_from_tag("pp") == Quantity::pressure_pert);
  CHECK(quantity_from_tag("rho") == Quantity::rho);
  CHECK_THROWS_AS(quantity_from_tag("theta"), std::invalid_argument);
}

TEST_CASE("sampling constant and polynomial fields") {
  const DgSpace sp(build_mesh(3, 2, 3.0, 2.0), 3);
  const GasConstants gas;
  Background bg;
  bg.t0 = 2.0 / (1.5 * gas.r_gas);
  PrimitiveField s = resting(sp, 1.5, 2.0);
  std::fill(s.vel.u.begin(), s.vel.u.end(), 0.25);
  const SampleGrid grid(17, 9, 3.0, 2.0);
  const auto f = sample_fields(sp, s, {Quantity::u, Quantity::w, Quantity::rho, Quantity::temperature_pert}, grid, bg, gas);
  for (double v : f[0].data) CHECK(v == doctest::Approx(0.25).epsilon(1e-14));
  for (double v : f[1].data) CHECK(v == 0.0);
  for (double v : f[2].data) CHECK(v == doctest::Approx(1.5).epsilon(1e-14));
  for (double v : f[3].data) CHECK(std::abs(v) < 1e-12);

  auto poly = [](double x, double z) { return 0.5 + x * x * x - 2.0 * x * z * z + z; };
  s.vel.w = sp.interpolate(poly);
  const SampleMatrix w = sample_field(sp, s, Quantity::w, grid, bg, gas);
  for (int j = 0; j < grid.nz; ++j) {
    for (int i = 0; i < grid.nx; ++i) CHECK(w(i, j) == doctest::Approx(poly(grid.x(i), grid.z(j))).epsilon(1e-12));
  }
}

TEST_CASE("sampling at nodes returns nodal values") {
  // one element, one sample per direction puts the sample at the element centre,
  // which is a Gauss node for even degree
  const DgSpace sp(build_mesh(1, 1, 2.0, 2.0), 2);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  PrimitiveField s = resting(sp, 1.0, 1.0);
  for (auto& v : s.vel.w) v = d(rng);
  const SampleMatrix m = sample_field(sp, s, Quantity::w, SampleGrid(1, 1, 2.0, 2.0), Background{}, GasConstants{});
  CHECK(m(0, 0) == doctest::Approx(s.vel.w[4]).epsilon(1e-14));
}

TEST_CASE("error norms") {
  const SampleMatrix a = matrix(2, 1, {3.0, 4.0});
  const SampleMatrix z = matrix(2, 1, {0.0, 0.0});
  const ErrorNorms n = error_norms(a, z);
  CHECK(n.l2 == doctest::Approx(std::sqrt(12.5)).epsilon(1e-15));
  CHECK(n.l2 == doctest::Approx(3.5355).epsilon(1e-4));
  CHECK(n.linf == 4.0);
  CHECK(error_norms(a, a).l2 == 0.0);
  CHECK(error_norms(a, a).linf == 0.0);
  const SampleMatrix off = matrix(2, 1, {3.0 - 0.7, 4.0 - 0.7});
  CHECK(error_norms(a, off).l2 == doctest::Approx(0.7));
  CHECK(error_norms(a, off).linf == doctest::Approx(0.7));
  CHECK_THROWS_AS(error_norms(a, matrix(1, 2, {0.0, 0.0})), std::invalid_argument);
}

TEST_CASE("error norms form a metric") {
  std::mt19937 rng(11);
  for (int t = 0; t < 20; ++t) {
    const SampleMatrix a = random_matrix(7, 5, rng);
    const SampleMatrix b = random_matrix(7, 5, rng);
    const SampleMatrix c = random_matrix(7, 5, rng);
    CHECK(std::abs(error_norms(a, b).l2 - error_norms(b, a).l2) < 1e-15);
    CHECK(error_norms(a, c).l2 <= error_norms(a, b).l2 + error_norms(b, c).l2 + 1e-12);
    CHECK(error_norms(a, c).linf <= error_norms(a, b).linf + error_norms(b, c).linf + 1e-12);
  }
}

TEST_CASE("experimental order of convergence") {
  CHECK(eoc({4e-3, 1e-3}, {2.0, 1.0})[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(eoc({3.83e-3, 1.07e-4}, {40e3, 20e3})[0] == doctest::Approx(5.16).epsilon(1e-3));
  CHECK(eoc({1e-3, 1e-3}, {2.0, 1.0})[0] == 0.0);
  std::vector<double> h = {0.3, 0.17, 0.05, 0.011};
  std::vector<double> e;
  for (double x : h) e.push_back(7.3 * x * x);
  for (double v : eoc(e, h)) CHECK(std::abs(v - 2.0) < 1e-12);
  CHECK(eoc(e, h).size() == 3);
  CHECK_THROWS_AS(eoc({1.0, 0.5}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(eoc({1.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(eoc({1.0, 0.5}, {1.0}), std::invalid_argument);
}

TEST_CASE("Courant numbers") {
  const ChannelMesh mesh = build_mesh(300, 20, 6e6, 1e4);
  CHECK(min_diameter(mesh) == doctest::Approx(20006.25).epsilon(1e-6));
  const CourantNumbers c = courant_numbers(mesh, 4, 316.94, 0.5, 0.016);
  CHECK(c.acoustic == doctest::Approx(0.0448).epsilon(1e-3));
  const CourantNumbers c2 = courant_numbers(mesh, 4, 316.94, 1.0, 0.016);
  CHECK(c2.acoustic == doctest::Approx(2.0 * c.acoustic).epsilon(1e-15));
  const CourantNumbers c3 = courant_numbers(mesh, 4, 316.94, 0.5, 316.94);
  CHECK(c3.advective == doctest::Approx(c3.acoustic).epsilon(1e-15));

  // state overload: sound speed is the largest nodal value, H = sqrt(2)
  const DgSpace sp(build_mesh(2, 2, 2.0, 2.0), 2);
  const GasConstants gas;
  PrimitiveField s = resting(sp, 1.0, 1.0);
  s.p[5] = 4.0;
  const double cmax = std::sqrt(gas.gamma * 4.0);
  const CourantNumbers cs = courant_numbers(sp, s, gas, 0.1, 1.0);
  CHECK(cs.acoustic == doctest::Approx(2 * cmax * 0.1).epsilon(1e-14));
}

TEST_CASE("geostrophic balance error") {
  const DgSpace sp(build_mesh(4, 2, 4.0, 2.0), 3);
  const SampleGrid grid = element_grid(sp.mesh(), 4);
  const double f = 1e-4;

  PrimitiveField rest = resting(sp, 1.2, 5.0);
  CHECK(geostrophic_error(sp, rest, f, grid) < 1e-13);

  // p = alpha x, rho = 1, v = 0: integrand is |alpha|
  PrimitiveField lin = resting(sp, 1.0, 0.0);
  lin.p = sp.interpolate([](double x, double) { return 10.0 - 0.3 * x; });
  CHECK(geostrophic_error(sp, lin, f, grid) == doctest::Approx(0.3).epsilon(1e-12));

  // exact balance dp/dx = rho f v
  PrimitiveField bal = lin;
  std::fill(bal.rho.begin(), bal.rho.end(), 2.0);
  std::fill(bal.vel.v.begin(), bal.vel.v.end(), -0.3 / (2.0 * f));
  CHECK(geostrophic_error(sp, bal, f, grid) < 1e-12);

  // offsets in p do not matter
  PrimitiveField shifted = lin;
  for (auto& v : shifted.p) v += 1e3;
  CHECK(geostrophic_error(sp, shifted, f, grid) == doctest::Approx(geostrophic_error(sp, lin, f, grid)).epsilon(1e-10));
}

TEST_CASE("conservation totals") {
  const DgSpace sp(build_mesh(3, 2, 6.0, 2.0), 2);
  const GasConstants gas;
  const ConservedField q = to_conserved(resting(sp, 1.0, 0.4), gas);
  const Totals t = conservation_totals(sp, q);
  CHECK(t.mass == doctest::Approx(12.0).epsilon(1e-14));
  CHECK(t.energy == doctest::Approx(12.0 * 0.4 / (gas.gamma - 1.0)).epsilon(1e-14));
  CHECK(max_abs({-3.0, 2.0}) == 3.0);
}
