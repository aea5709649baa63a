#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "imexdg/config.hpp"
#include "imexdg/driver.hpp"

using namespace imexdg;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("imexdg_test_config_" + name);
  fs::remove_all(p);
  return p;
}

// A short, narrow version of the desk channel.
RunConfig small_run(const std::string& out) {
  RunConfig c = scenario_defaults("desk");
  c.params.nx = 8;
  c.params.nz = 4;
  c.params.lx = 8e4;
  c.params.xc = 4e4;
  c.params.t_final = 40.0;
  c.output_dir = out;
  c.sample_nx = 80;
  c.sample_nz = 8;
  return c;
}

int line_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("empty config gives the standard channel") {
  const RunConfig c = parse_config("");
  CHECK(c.scenario == "baldauf");
  CHECK(c.params.nx == 300);
  CHECK(c.params.degree == 4);
  CHECK(c.params.dt == 0.5);
  CHECK(c.picard.strategy == Strategy::r1);
  CHECK(c.picard.tol == 1e-10);
  CHECK(c.picard.gmres.rel_tol == 1e-12);
}

TEST_CASE("single overrides") {
  const RunConfig c = parse_config("strategy=R2\n");
  const RunConfig d = parse_config("");
  CHECK(c.picard.strategy == Strategy::r2);
  CHECK(format_config(c) != format_config(d));
  RunConfig e = c;
  e.picard.strategy = Strategy::r1;
  CHECK(format_config(e) == format_config(d));

  const RunConfig x = parse_config("  nx = 12   # comment\n\n# whole line\ndT=0.02\nscenario=desk\n");
  CHECK(x.scenario == "desk");
  CHECK(x.params.nx == 12);
  CHECK(x.params.delta_t == 0.02);
  CHECK(x.params.lx == 6e5);
  CHECK(parse_config("scenario=hydrostatic").params.delta_t == 0.0);
  CHECK(parse_config("scenario=planetary").params.lx == 6e7);
}

TEST_CASE("validation errors name the key and line") {
  try {
    parse_config("nx=4\ndt=-1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "dt");
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("dt") != std::string::npos);
  }
  CHECK(line_of("nx=4\nbogus=1\n") == 2);
  CHECK(line_of("nx=4\nnx=5\n") == 2);
  CHECK(line_of("degree=two") == 1);
  CHECK(line_of("\n\nstrategy=R3") == 3);
  CHECK(line_of("scenario=moon") == 1);
  CHECK(line_of("just text") == 1);
  CHECK(line_of("dt=0.7") == 0);  // t_final is not a multiple of dt; no explicit t_final line
  CHECK(line_of("degree=0") == 1);
  CHECK(line_of("write_fields=maybe") == 1);
  CHECK(line_of("picard_tol=2") == 1);
  CHECK_THROWS_AS(load_config("/nonexistent/imexdg.cfg"), ConfigError);
}

TEST_CASE("resolved config round-trips") {
  RunConfig c = parse_config("scenario=desk\nstrategy=R2\ndt=0.1\nf=1.234567890123e-4\noutput_dir=/tmp/x y\n");
  const RunConfig back = parse_config(format_config(c));
  CHECK(format_config(back) == format_config(c));
  CHECK(back.params.coriolis == c.params.coriolis);
  CHECK(back.output_dir == "/tmp/x y");
  CHECK(strategy_name(Strategy::r1) == "R1");
}

TEST_CASE("time labels and csv formatting") {
  CHECK(time_label(0.0) == "0");
  CHECK(time_label(1800.0) == "1800");
  CHECK(time_label(0.5) == "0.5");
  DiagnosticsRow r;
  r.time = 2.0;
  r.mass = 1.0;
  const std::string csv = format_diagnostics_csv({r});
  CHECK(csv.rfind("time,", 0) == 0);
  CHECK(csv.find("2.000000000000000e+00") != std::string::npos);
}

TEST_CASE("rest run conserves mass and writes its artifacts") {
  const fs::path dir = scratch("rest");
  RunConfig c = small_run(dir.string());
  c.params.delta_t = 0.0;
  c.params.t_final = 20.0;
  c.snapshot_every = 5;
  const RunResult r = run(c);
  CHECK(r.steps == 10);
  CHECK(r.time == doctest::Approx(20.0));
  CHECK(r.implicit_solves == 20);
  CHECK(r.mass_drift <= 1e-12);
  REQUIRE(r.rows.size() == 3);
  for (const auto& row : r.rows) CHECK(std::abs(row.mass - r.rows[0].mass) <= 1e-12 * r.rows[0].mass);
  CHECK(fs::exists(dir / "diagnostics.csv"));
  CHECK(fs::exists(dir / "field_0.csv"));
  CHECK(fs::exists(dir / "field_10.csv"));
  CHECK(fs::exists(dir / "field_20.csv"));
  const std::string field = slurp(dir / "field_20.csv");
  CHECK(field.rfind("x,z,w,u,v,Tp,pp\n", 0) == 0);
  const std::string echo = slurp(dir / "config.resolved");
  CHECK(format_config(parse_config(echo)) == echo);
  fs::remove_all(dir);
}

TEST_CASE("reruns are byte-identical") {
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  RunConfig ca = small_run(a.string());
  ca.params.t_final = 10.0;
  RunConfig cb = ca;
  cb.output_dir = b.string();
  run(ca);
  run(cb);
  CHECK(slurp(a / "diagnostics.csv") == slurp(b / "diagnostics.csv"));
  CHECK(slurp(a / "field_10.csv") == slurp(b / "field_10.csv"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("bubble response is mirror symmetric about the centre") {
  // w is even and u is odd in x - xc
  RunConfig c = small_run("unused");
  c.params.t_final = 60.0;
  RunOptions opts;
  opts.write_outputs = false;
  const RunResult r = run(c, opts);
  const SampleGrid grid(c.sample_nx, c.sample_nz, c.params.lx, c.params.lz);
  const auto f = sample_fields(*r.space, r.primitive, {Quantity::w, Quantity::u}, grid,
                               c.params.background(), c.params.constants());
  double wmax = 0.0;
  double umax = 0.0;
  double wsym = 0.0;
  double uasym = 0.0;
  for (int j = 0; j < grid.nz; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const int m = grid.nx - 1 - i;
      wmax = std::max(wmax, std::abs(f[0](i, j)));
      umax = std::max(umax, std::abs(f[1](i, j)));
      wsym = std::max(wsym, std::abs(f[0](i, j) - f[0](m, j)));
      uasym = std::max(uasym, std::abs(f[1](i, j) + f[1](m, j)));
    }
  }
  CHECK(wmax > 0.0);
  CHECK(wsym <= 0.05 * wmax);
  CHECK(uasym <= 0.05 * umax);
}

TEST_CASE("R1 and R2 runs give the same fields") {
  RunConfig c1 = small_run("unused");
  c1.params.t_final = 20.0;
  RunConfig c2 = c1;
  c2.picard.strategy = Strategy::r2;
  RunOptions opts;
  opts.write_outputs = false;
  const auto f1 = sample_final(c1, run(c1, opts));
  const auto f2 = sample_final(c2, run(c2, opts));
  CHECK(error_norms(f1[0], f2[0]).l2 <= 1e-6);
}

TEST_CASE("solver failure is reported with its step") {
  RunConfig c = small_run("unused");
  c.picard.max_iterations = 1;
  c.picard.tol = 1e-15;
  RunOptions opts;
  opts.write_outputs = false;
  try {
    run(c, opts);
    FAIL("expected RunFailure");
  } catch (const RunFailure& e) {
    CHECK(e.step() == 1);
    CHECK(e.stage() == 2);
  }
}

TEST_CASE("sampling errors of a steady field converge at order r + 1") {
  // interpolation-only convergence: no time steps, finest mesh as reference
  const BaldaufParams p = desk_baldauf_config();
  const SampleGrid grid(240, 40, 6e4, 1e4);
  const Background bg = p.background();
  std::vector<SampleMatrix> fields;
  std::vector<double> hs;
  for (int level = 0; level < 4; ++level) {
    const int k = 1 << level;
    const DgSpace sp(build_mesh(6 * k, 2 * k, 6e4, 1e4), 2);
    PrimitiveField s(sp.size());
    s.rho = sp.interpolate([&](double, double z) { return bg.density(z); });
    s.p = sp.interpolate([&](double, double z) { return bg.pressure(z); });
    s.vel.w = sp.interpolate([](double x, double z) { return std::sin(2e-4 * x) * std::cos(3e-4 * z); });
    fields.push_back(sample_field(sp, s, Quantity::w, grid, bg, p.constants()));
    hs.push_back(1e4 / k);
  }
  std::vector<double> errs;
  for (int level = 0; level < 3; ++level) errs.push_back(error_norms(fields[level], fields[3]).l2);
  const auto orders = eoc(errs, {hs[0], hs[1], hs[2]});
  CHECK(orders[0] >= 2.7);
}

TEST_CASE("shipped configurations parse") {
  for (const char* name : {"desk.cfg", "desk_r2.cfg", "convergence.cfg", "geostrophic.cfg"}) {
    CAPTURE(name);
    const RunConfig c = load_config(std::string(IMEXDG_CONFIG_DIR) + "/" + name);
    CHECK(c.params.degree == 2);
  }
  const RunConfig g = load_config(std::string(IMEXDG_CONFIG_DIR) + "/geostrophic.cfg");
  CHECK(g.params.t_final / g.params.dt == doctest::Approx(2160.0));
}
