#pragma once

#include <stdexcept>
#include <string>

#include "imexdg/scenarios.hpp"
#include "imexdg/stage_solver.hpp"

namespace imexdg {

/// Parse or validation failure; `line` is 0 when not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line, std::string key)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line),
        key_(std::move(key)) {}
  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

struct RunConfig {
  std::string scenario = "baldauf";  ///< baldauf | planetary | desk | hydrostatic
  BaldaufParams params = standard_baldauf_config();
  PicardConfig picard{};
  std::string output_dir = "output";
  int snapshot_every = 0;  ///< steps between snapshots; 0 = first and last only
  bool write_fields = true;
  int sample_nx = 1200;
  int sample_nz = 80;
  int geo_samples = 4;     ///< E_geo midpoint samples per element and direction
  double u_ref = 0.016;    ///< reference speed for C_adv

  /// Throws ConfigError naming the offending key.
  void validate() const;
};

/// Defaults of a named scenario.
RunConfig scenario_defaults(const std::string& name);

/// Line-based key=value text; '#' starts a comment. Unknown or duplicate keys
/// are rejected. A `scenario` line selects the defaults the other keys
/// override, wherever it appears.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Every key, one per line, with round-trip precision.
std::string format_config(const RunConfig& cfg);

std::string strategy_name(Strategy s);

}  // namespace imexdg
