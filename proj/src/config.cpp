#include "imexdg/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace imexdg {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, int line, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(x)) {
    throw ConfigError("'" + key + "' expects a number, got '" + v + "'", line, key);
  }
  return x;
}

int to_int(const std::string& v, int line, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || x < -1000000000L ||
      x > 1000000000L) {
    throw ConfigError("'" + key + "' expects an integer, got '" + v + "'", line, key);
  }
  return static_cast<int>(x);
}

bool to_bool(const std::string& v, int line, const std::string& key) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("'" + key + "' expects true or false, got '" + v + "'", line, key);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

struct Key {
  const char* name;
  Setter set;
  std::function<std::string(const RunConfig&)> get;
};

#define REAL_KEY(NAME, FIELD)                                                              \
  Key {                                                                                    \
    NAME, [](RunConfig& c, const std::string& v, int l) { c.FIELD = to_double(v, l, NAME); }, \
        [](const RunConfig& c) { return fmt(c.FIELD); }                                   \
  }
#define INT_KEY(NAME, FIELD)                                                            \
  Key {                                                                                 \
    NAME, [](RunConfig& c, const std::string& v, int l) { c.FIELD = to_int(v, l, NAME); }, \
        [](const RunConfig& c) { return std::to_string(c.FIELD); }                     \
  }

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      Key{"scenario", [](RunConfig&, const std::string&, int) {},
          [](const RunConfig& c) { return c.scenario; }},
      INT_KEY("nx", params.nx),
      INT_KEY("nz", params.nz),
      INT_KEY("degree", params.degree),
      REAL_KEY("dt", params.dt),
      REAL_KEY("t_final", params.t_final),
      Key{"strategy",
          [](RunConfig& c, const std::string& v, int l) {
            if (v == "R1" || v == "r1") {
              c.picard.strategy = Strategy::r1;
            } else if (v == "R2" || v == "r2") {
              c.picard.strategy = Strategy::r2;
            } else {
              throw ConfigError("'strategy' must be R1 or R2, got '" + v + "'", l, "strategy");
            }
          },
          [](const RunConfig& c) { return strategy_name(c.picard.strategy); }},
      REAL_KEY("picard_tol", picard.tol),
      INT_KEY("picard_max_iter", picard.max_iterations),
      REAL_KEY("gmres_tol", picard.gmres.rel_tol),
      INT_KEY("gmres_restart", picard.gmres.restart),
      INT_KEY("gmres_max_iter", picard.gmres.max_iterations),
      REAL_KEY("f", params.coriolis),
      REAL_KEY("g", params.gas.gravity),
      REAL_KEY("T0", params.t0),
      REAL_KEY("dT", params.delta_t),
      REAL_KEY("p_s", params.p_s),
      REAL_KEY("Lx", params.lx),
      REAL_KEY("Lz", params.lz),
      REAL_KEY("a", params.a),
      REAL_KEY("xc", params.xc),
      Key{"output_dir", [](RunConfig& c, const std::string& v, int) { c.output_dir = v; },
          [](const RunConfig& c) { return c.output_dir; }},
      INT_KEY("snapshot_every", snapshot_every),
      Key{"write_fields",
          [](RunConfig& c, const std::string& v, int l) { c.write_fields = to_bool(v, l, "write_fields"); },
          [](const RunConfig& c) { return std::string(c.write_fields ? "true" : "false"); }},
      INT_KEY("sample_nx", sample_nx),
      INT_KEY("sample_nz", sample_nz),
      INT_KEY("geo_samples", geo_samples),
      REAL_KEY("u_ref", u_ref),
  };
  return table;
}

#undef REAL_KEY
#undef INT_KEY

}  // namespace

std::string strategy_name(Strategy s) { return s == Strategy::r1 ? "R1" : "R2"; }

RunConfig scenario_defaults(const std::string& name) {
  RunConfig c;
  c.scenario = name;
  if (name == "baldauf") {
    c.params = standard_baldauf_config();
  } else if (name == "planetary") {
    c.params = planetary_config();
  } else if (name == "desk") {
    c.params = desk_baldauf_config();
  } else if (name == "hydrostatic") {
    c.params = standard_baldauf_config();
    c.params.delta_t = 0.0;
  } else {
    throw ConfigError("unknown scenario '" + name + "'", 0, "scenario");
  }
  return c;
}

void RunConfig::validate() const {
  auto require = [](bool ok, const char* key, const std::string& what) {
    if (!ok) throw ConfigError(std::string("invalid '") + key + "': " + what, 0, key);
  };
  auto positive = [&](double v, const char* key) { require(v > 0.0, key, "must be positive"); };
  positive(params.dt, "dt");
  positive(params.t_final, "t_final");
  positive(params.lx, "Lx");
  positive(params.lz, "Lz");
  positive(params.a, "a");
  positive(params.t0, "T0");
  positive(params.p_s, "p_s");
  positive(params.gas.gravity, "g");
  positive(u_ref, "u_ref");
  require(params.delta_t >= 0.0 && params.delta_t < params.t0, "dT", "must lie in [0, T0)");
  require(params.xc >= 0.0 && params.xc <= params.lx, "xc", "must lie in [0, Lx]");
  require(params.nx >= 1, "nx", "must be at least 1");
  require(params.nz >= 1, "nz", "must be at least 1");
  require(params.degree >= 1 && params.degree <= kMaxDegree, "degree",
          "must be between 1 and " + std::to_string(kMaxDegree));
  require(picard.tol > 0.0 && picard.tol < 1.0, "picard_tol", "must lie in (0,1)");
  require(picard.gmres.rel_tol > 0.0 && picard.gmres.rel_tol < 1.0, "gmres_tol", "must lie in (0,1)");
  require(picard.max_iterations >= 1, "picard_max_iter", "must be at least 1");
  require(picard.gmres.restart >= 1, "gmres_restart", "must be at least 1");
  require(picard.gmres.max_iterations >= 1, "gmres_max_iter", "must be at least 1");
  require(snapshot_every >= 0, "snapshot_every", "must be non-negative");
  require(sample_nx >= 1, "sample_nx", "must be at least 1");
  require(sample_nz >= 1, "sample_nz", "must be at least 1");
  require(geo_samples >= 1, "geo_samples", "must be at least 1");
  require(!output_dir.empty(), "output_dir", "must not be empty");
  const double steps = params.t_final / params.dt;
  require(std::abs(steps - std::round(steps)) <= 1e-9 * steps, "t_final",
          "must be an integer multiple of dt");
}

RunConfig parse_config(const std::string& text) {
  struct Entry {
    std::string key;
    std::string value;
    int line;
  };
  std::vector<Entry> entries;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value", line, "");
    Entry e{trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line};
    if (e.key.empty()) throw ConfigError("empty key", line, "");
    bool known = false;
    for (const auto& k : keys()) known = known || e.key == k.name;
    if (!known) throw ConfigError("unknown key '" + e.key + "'", line, e.key);
    if (!seen.insert(e.key).second) throw ConfigError("duplicate key '" + e.key + "'", line, e.key);
    entries.push_back(std::move(e));
  }

  RunConfig cfg;
  for (const auto& e : entries) {
    if (e.key != "scenario") continue;
    try {
      cfg = scenario_defaults(e.value);
    } catch (const ConfigError& err) {
      throw ConfigError(err.what(), e.line, "scenario");
    }
  }
  for (const auto& e : entries) {
    for (const auto& k : keys()) {
      if (e.key == k.name) k.set(cfg, e.value, e.line);
    }
  }
  try {
    cfg.validate();
  } catch (const ConfigError& err) {
    int where = 0;
    for (const auto& e : entries) {
      if (e.key == err.key()) where = e.line;
    }
    throw ConfigError(err.what(), where, err.key());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'", 0, "");
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& k : keys()) out += std::string(k.name) + "=" + k.get(cfg) + "\n";
  return out;
}

}  // namespace imexdg
