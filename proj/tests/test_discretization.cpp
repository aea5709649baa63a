#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <set>

#include "imexdg/basis.hpp"
#include "imexdg/mesh.hpp"
#include "imexdg/space.hpp"

using namespace imexdg;

TEST_CASE("mesh: single element wraps onto itself") {
  const ChannelMesh m = build_mesh(1, 1, 1.0, 1.0);
  CHECK(m.num_elements() == 1);
  int periodic = 0;
  int walls = 0;
  for (const auto& f : m.faces()) {
    if (f.kind == FaceKind::periodic) ++periodic;
    if (f.kind == FaceKind::wall_bottom || f.kind == FaceKind::wall_top) ++walls;
  }
  CHECK(walls == 2);
  CHECK(periodic == 1);
  // the one periodic face is seen from both x sides of the element
  CHECK(m.face_of(0, LocalFace::left) == m.face_of(0, LocalFace::right));
  const FaceSide right{0, LocalFace::right};
  CHECK(m.neighbor(right).element == 0);
  CHECK(m.neighbor(right).local == LocalFace::left);
}

TEST_CASE("mesh: standard channel sizes") {
  const ChannelMesh m = build_mesh(300, 20, 6.0e6, 1.0e4);
  CHECK(m.hx() == doctest::Approx(20000.0).epsilon(1e-15));
  CHECK(m.hz() == doctest::Approx(500.0).epsilon(1e-15));
  CHECK(m.jacobian_det() == doctest::Approx(20000.0 * 500.0 / 4.0));
  CHECK(min_diameter(m) == doctest::Approx(20006.2490237).epsilon(1e-10));
}

TEST_CASE("mesh: 3x2 face enumeration by brute force") {
  const ChannelMesh m = build_mesh(3, 2, 3.0, 2.0);
  CHECK(m.num_elements() == 6);

  // element-side incidences on x faces and unique faces per direction
  int x_incidences = 0;
  std::set<int> x_faces;
  std::set<int> z_faces;
  for (int e = 0; e < 6; ++e) {
    for (LocalFace lf : {LocalFace::left, LocalFace::right}) {
      ++x_incidences;
      x_faces.insert(m.face_of(e, lf));
    }
    for (LocalFace lf : {LocalFace::bottom, LocalFace::top}) z_faces.insert(m.face_of(e, lf));
  }
  CHECK(x_incidences == 12);
  CHECK(x_faces.size() == 6);
  CHECK(z_faces.size() == 9);
  CHECK(m.faces().size() == 15);

  int walls = 0;
  int periodic = 0;
  for (const auto& f : m.faces()) {
    walls += f.kind == FaceKind::wall_bottom || f.kind == FaceKind::wall_top;
    periodic += f.kind == FaceKind::periodic;
  }
  CHECK(walls == 6);
  CHECK(periodic == 2);
}

TEST_CASE("mesh: periodic wrap, opposed normals and involutive pairing") {
  const ChannelMesh m = build_mesh(4, 3, 8.0, 3.0);
  for (int ez = 0; ez < 3; ++ez) {
    const FaceSide s{m.element(3, ez), LocalFace::right};
    const FaceSide nb = m.neighbor(s);
    CHECK(nb.element == m.element(0, ez));
    CHECK(nb.local == LocalFace::left);
  }
  for (const auto& f : m.faces()) {
    const double len = std::hypot(f.normal[0], f.normal[1]);
    CHECK(len == doctest::Approx(1.0));
    if (!f.has_plus) continue;
    const FaceSide back = m.neighbor(m.neighbor(f.minus));
    CHECK(back.element == f.minus.element);
    CHECK(back.local == f.minus.local);
    CHECK(m.neighbor(f.minus).element == f.plus.element);
  }
  for (int e = 0; e < m.num_elements(); ++e) {
    for (int lfi = 0; lfi < 4; ++lfi) {
      const FaceSide s{e, static_cast<LocalFace>(lfi)};
      const FaceSide nb = m.neighbor(s);
      if (nb.element < 0) continue;
      const FaceSide back = m.neighbor(nb);
      CHECK(back.element == e);
      CHECK(back.local == s.local);
    }
  }
}

TEST_CASE("mesh: invalid input rejected") {
  CHECK_THROWS_AS(build_mesh(0, 1, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_mesh(1, 0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_mesh(1, 1, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_mesh(1, 1, 1.0, -2.0), std::invalid_argument);
}

TEST_CASE("min_diameter examples") {
  CHECK(min_diameter(build_mesh(2, 2, 2.0, 2.0)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(min_diameter(build_mesh(1, 1, 3.0, 4.0)) == doctest::Approx(5.0));
}

TEST_CASE("gauss_legendre: textbook rules") {
  const TensorBasis b1 = gauss_legendre(1);
  CHECK(b1.nodes()[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(b1.nodes()[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(b1.weights()[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(b1.weights()[1] == doctest::Approx(1.0).epsilon(1e-15));

  const TensorBasis b2 = gauss_legendre(2);
  CHECK(std::abs(b2.nodes()[0] + std::sqrt(0.6)) < 1e-14);
  CHECK(std::abs(b2.nodes()[1]) < 1e-14);
  CHECK(std::abs(b2.nodes()[2] - std::sqrt(0.6)) < 1e-14);
  CHECK(std::abs(b2.weights()[0] - 5.0 / 9.0) < 1e-14);
  CHECK(std::abs(b2.weights()[1] - 8.0 / 9.0) < 1e-14);
  CHECK(std::abs(b2.weights()[2] - 5.0 / 9.0) < 1e-14);

  const TensorBasis b4 = gauss_legendre(4);
  double sw = 0.0;
  double x8 = 0.0;
  for (int i = 0; i < 5; ++i) {
    sw += b4.weights()[i];
    x8 += b4.weights()[i] * std::pow(b4.nodes()[i], 8);
  }
  CHECK(std::abs(sw - 2.0) < 1e-14);
  CHECK(std::abs(x8 - 2.0 / 9.0) < 1e-14);

  CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_legendre(kMaxDegree + 1), std::invalid_argument);
}

TEST_CASE("basis invariants for every supported degree") {
  for (int r = 1; r <= kMaxDegree; ++r) {
    CAPTURE(r);
    const TensorBasis b(r);
    const int n = b.n1d();
    double sw = 0.0;
    for (int i = 0; i < n; ++i) {
      sw += b.weights()[i];
      CHECK(std::abs(b.nodes()[i] + b.nodes()[n - 1 - i]) < 1e-15);
      if (i > 0) CHECK(b.nodes()[i] > b.nodes()[i - 1]);
    }
    CHECK(std::abs(sw - 2.0) < 1e-14);

    // exact up to degree 2r+1
    for (int k = 0; k <= 2 * r + 1; ++k) {
      double q = 0.0;
      for (int i = 0; i < n; ++i) q += b.weights()[i] * std::pow(b.nodes()[i], k);
      const double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
      CHECK(std::abs(q - exact) <= 1e-12 * std::max(1.0, exact));
    }

    // D1 differentiates monomials up to degree r exactly
    for (int k = 0; k <= r; ++k) {
      for (int i = 0; i < n; ++i) {
        double d = 0.0;
        for (int j = 0; j < n; ++j) d += b.d1(i, j) * std::pow(b.nodes()[j], k);
        const double exact = k == 0 ? 0.0 : k * std::pow(b.nodes()[i], k - 1);
        CHECK(std::abs(d - exact) < 1e-12);
      }
    }

    // partition of unity, including the traces
    for (double x : {-1.0, -0.731, 0.0, 0.25, 0.999, 1.0}) {
      double s = 0.0;
      for (double v : b.values(x)) s += v;
      CHECK(std::abs(s - 1.0) < 1e-13);
    }
    double sm = 0.0;
    double sp = 0.0;
    for (int j = 0; j < n; ++j) {
      sm += b.trace_minus()[j];
      sp += b.trace_plus()[j];
    }
    CHECK(std::abs(sm - 1.0) < 1e-13);
    CHECK(std::abs(sp - 1.0) < 1e-13);
  }
}

TEST_CASE("dof layout is a bijection") {
  const DofLayout l(7, 4);
  CHECK(l.size() == 7u * 16u);
  for (std::size_t k = 0; k < l.size(); ++k) {
    const auto t = l.triple(k);
    CHECK(l.index(t[0], t[1], t[2]) == k);
  }
  CHECK(l.index(1, 2, 3) == 16u + 3u * 4u + 2u);
}

TEST_CASE("eval_at_point") {
  const DgSpace sp(build_mesh(3, 2, 3.0, 2.0), 2);

  const ScalarField c(sp.size(), 4.25);
  CHECK(eval_at_point(sp, c, 4, 0.3, -0.7) == doctest::Approx(4.25).epsilon(1e-14));

  // x z is in Q_2: exact anywhere
  const ScalarField xz = sp.interpolate([](double x, double z) { return x * z; });
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> ux(0.0, 3.0);
  std::uniform_real_distribution<double> uz(0.0, 2.0);
  for (int t = 0; t < 10; ++t) {
    const double x = ux(rng);
    const double z = uz(rng);
    const auto loc = sp.locate(x, z);
    CHECK(std::abs(eval_at_point(sp, xz, loc.element, loc.xi, loc.eta) - x * z) < 1e-12);
  }

  // bit-exact at nodes
  std::uniform_real_distribution<double> ur(-5.0, 5.0);
  ScalarField rnd(sp.size());
  for (auto& v : rnd) v = ur(rng);
  const auto& nodes = sp.basis().nodes();
  for (std::size_t k = 0; k < sp.size(); ++k) {
    const auto t = sp.layout().triple(k);
    CHECK(eval_at_point(sp, rnd, t[0], nodes[t[1]], nodes[t[2]]) == rnd[k]);
  }

  CHECK_THROWS_AS(eval_at_point(sp, rnd, 0, 1.5, 0.0), std::out_of_range);
  CHECK_THROWS_AS(eval_at_point(sp, rnd, 0, 0.0, -1.01), std::out_of_range);
  CHECK_THROWS_AS(sp.locate(3.5, 1.0), std::out_of_range);
}

TEST_CASE("x-derivative of the local polynomial") {
  const DgSpace sp(build_mesh(2, 2, 4.0, 2.0), 3);
  const ScalarField f = sp.interpolate([](double x, double z) { return x * x * x - 2.0 * x * z; });
  for (double x : {0.1, 1.3, 2.7, 3.9}) {
    const auto loc = sp.locate(x, 0.6);
    CHECK(std::abs(eval_dx_at_point(sp, f, loc.element, loc.xi, loc.eta) - (3 * x * x - 1.2)) < 1e-11);
  }
}

TEST_CASE("integration and mass diagonal") {
  const DgSpace sp(build_mesh(3, 2, 3.0, 2.0), 3);
  const ScalarField one(sp.size(), 1.0);
  CHECK(integrate(sp, one) == doctest::Approx(6.0).epsilon(1e-14));
  const ScalarField f = sp.interpolate([](double x, double z) { return x * x * z; });
  CHECK(integrate(sp, f) == doctest::Approx(9.0 * 2.0).epsilon(1e-13));

  const DgSpace unit(build_mesh(1, 1, 2.0, 2.0), 1);
  for (double m : unit.mass()) CHECK(m == doctest::Approx(1.0).epsilon(1e-15));
}
