#include "imexdg/driver.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "imexdg/scenarios.hpp"
#include "imexdg/stepper.hpp"

namespace imexdg {
namespace {

std::string sci(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15e", x);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string format_field_csv(const SampleGrid& grid, const std::vector<SampleMatrix>& m) {
  std::string out = "x,z,w,u,v,Tp,pp\n";
  out.reserve(grid.size() * 7 * 23);
  for (int j = 0; j < grid.nz; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      out += sci(grid.x(i));
      out += ',';
      out += sci(grid.z(j));
      for (const auto& q : m) {
        out += ',';
        out += sci(q(i, j));
      }
      out += '\n';
    }
  }
  return out;
}

const std::vector<Quantity> kFieldQuantities = {Quantity::w, Quantity::u, Quantity::v,
                                                Quantity::temperature_pert, Quantity::pressure_pert};

}  // namespace

std::string time_label(double t) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, t);
  return std::string(buf, res.ptr);
}

std::string format_diagnostics_csv(const std::vector<DiagnosticsRow>& rows) {
  std::string out = "time,mass,energy,max_w,max_u,e_geo,picard_iterations,gmres_iterations,courant,courant_adv\n";
  for (const auto& r : rows) {
    out += sci(r.time) + "," + sci(r.mass) + "," + sci(r.energy) + "," + sci(r.max_w) + "," +
           sci(r.max_u) + "," + sci(r.e_geo) + "," + std::to_string(r.picard) + "," +
           std::to_string(r.gmres) + "," + sci(r.courant) + "," + sci(r.courant_adv) + "\n";
  }
  return out;
}

std::string format_convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out = "variable,level,nx,nz,dt,dx,l2,linf,eoc_l2,eoc_linf\n";
  for (const auto& r : rows) {
    out += r.variable + "," + std::to_string(r.level) + "," + std::to_string(r.nx) + "," +
           std::to_string(r.nz) + "," + sci(r.dt) + "," + sci(r.dx) + "," + sci(r.l2) + "," +
           sci(r.linf) + "," + (std::isnan(r.eoc_l2) ? std::string("") : sci(r.eoc_l2)) + "," +
           (std::isnan(r.eoc_linf) ? std::string("") : sci(r.eoc_linf)) + "\n";
  }
  return out;
}

RunResult run(const RunConfig& cfg, const RunOptions& opts) {
  cfg.validate();
  const BaldaufParams& params = cfg.params;
  const GasConstants gas = params.constants();
  const Background bg = params.background();

  RunResult result;
  auto space = std::make_shared<const DgSpace>(make_space(params));
  result.space = space;
  const DgSpace& sp = *space;
  const SampleGrid geo_grid = element_grid(sp.mesh(), cfg.geo_samples);
  const SampleGrid field_grid(cfg.sample_nx, cfg.sample_nz, params.lx, params.lz);

  std::filesystem::path dir;
  if (opts.write_outputs) {
    dir = cfg.output_dir;
    std::filesystem::create_directories(dir);
    write_file(dir / "config.resolved", format_config(cfg));
  }

  StepperOptions sopts;
  sopts.picard = cfg.picard;
  ImexStepper stepper(sp, gas, sopts);

  const int nsteps = static_cast<int>(std::llround(params.t_final / params.dt));
  ConservedField q = baldauf_initial_state(params, sp);

  auto snapshot = [&](int step, const StepStats* stats) {
    const PrimitiveField s = to_primitive(q, gas);
    DiagnosticsRow row;
    row.time = step * params.dt;
    const Totals t = conservation_totals(sp, q);
    row.mass = t.mass;
    row.energy = t.energy;
    row.max_w = max_abs(s.vel.w);
    row.max_u = max_abs(s.vel.u);
    row.e_geo = geostrophic_error(sp, s, params.coriolis, geo_grid);
    if (stats) {
      for (int l = 0; l < 3; ++l) {
        row.picard += stats->picard[l];
        row.gmres += stats->gmres[l];
      }
    }
    const CourantNumbers c = courant_numbers(sp, s, gas, params.dt, cfg.u_ref);
    row.courant = c.acoustic;
    row.courant_adv = c.advective;
    result.rows.push_back(row);
    if (opts.write_outputs && cfg.write_fields) {
      const auto m = sample_fields(sp, s, kFieldQuantities, field_grid, bg, gas);
      write_file(dir / ("field_" + time_label(row.time) + ".csv"), format_field_csv(field_grid, m));
    }
  };

  snapshot(0, nullptr);
  double mass = conservation_totals(sp, q).mass;
  for (int step = 1; step <= nsteps; ++step) {
    try {
      q = stepper.step(q, params.dt);
    } catch (const StageSolveError& err) {
      throw RunFailure("step " + std::to_string(step) + ", stage " + std::to_string(err.stage()) +
                           ", Picard iteration " + std::to_string(err.iteration()) + ": " + err.what(),
                       step, err.stage());
    } catch (const InvalidStateError& err) {
      throw RunFailure("step " + std::to_string(step) + ": " + err.what(), step, 0);
    } catch (const std::domain_error& err) {
      throw RunFailure("step " + std::to_string(step) + ": " + err.what(), step, 0);
    }
    const double m = conservation_totals(sp, q).mass;
    result.mass_drift = std::max(result.mass_drift, std::abs(m - mass) / std::abs(mass));
    mass = m;
    if (opts.on_step) opts.on_step(step, q);
    const bool due = step == nsteps || (cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0);
    if (due) snapshot(step, &stepper.last_stats());
  }

  result.steps = nsteps;
  result.time = nsteps * params.dt;
  result.implicit_solves = stepper.implicit_solves();
  result.primitive = to_primitive(q, gas);
  result.state = std::move(q);
  if (opts.write_outputs) write_file(dir / "diagnostics.csv", format_diagnostics_csv(result.rows));
  return result;
}

std::vector<SampleMatrix> sample_final(const RunConfig& cfg, const RunResult& result) {
  const SampleGrid grid(cfg.sample_nx, cfg.sample_nz, cfg.params.lx, cfg.params.lz);
  return sample_fields(*result.space, result.primitive,
                       {Quantity::w, Quantity::pressure_pert, Quantity::temperature_pert}, grid,
                       cfg.params.background(), cfg.params.constants());
}

std::vector<ConvergenceRow> convergence_study(const RunConfig& base, int levels,
                                              const RunOptions& opts) {
  if (levels < 3) throw ConfigError("convergence study needs at least 3 levels", 0, "levels");
  base.validate();
  std::vector<RunConfig> cfgs;
  std::vector<std::vector<SampleMatrix>> samples;
  for (int k = 0; k < levels; ++k) {
    RunConfig c = base;
    c.params.nx = base.params.nx << k;
    c.params.nz = base.params.nz << k;
    c.params.dt = base.params.dt / static_cast<double>(1 << k);
    RunOptions level_opts;
    level_opts.write_outputs = false;
    level_opts.on_step = opts.on_step;
    const RunResult r = run(c, level_opts);
    samples.push_back(sample_final(c, r));
    cfgs.push_back(c);
  }

  const std::vector<std::string> names = {"w", "pp", "Tp"};
  const auto& ref = samples.back();
  std::vector<ConvergenceRow> rows;
  for (std::size_t v = 0; v < names.size(); ++v) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int k = 0; k + 1 < levels; ++k) {
      ConvergenceRow row;
      row.variable = names[v];
      row.level = k;
      row.nx = cfgs[k].params.nx;
      row.nz = cfgs[k].params.nz;
      row.dt = cfgs[k].params.dt;
      row.dx = cfgs[k].params.lx / cfgs[k].params.nx;
      const ErrorNorms e = error_norms(samples[k][v], ref[v]);
      row.l2 = e.l2;
      row.linf = e.linf;
      row.eoc_l2 = nan;
      row.eoc_linf = nan;
      if (k > 0) {
        const ConvergenceRow& prev = rows.back();
        row.eoc_l2 = eoc({prev.l2, row.l2}, {prev.dx, row.dx})[0];
        row.eoc_linf = eoc({prev.linf, row.linf}, {prev.dx, row.dx})[0];
      }
      rows.push_back(row);
    }
  }
  if (opts.write_outputs) {
    std::filesystem::create_directories(base.output_dir);
    write_file(std::filesystem::path(base.output_dir) / "convergence.csv", format_convergence_csv(rows));
    write_file(std::filesystem::path(base.output_dir) / "config.resolved", format_config(base));
  }
  return rows;
}

}  // namespace imexdg
