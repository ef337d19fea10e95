#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "zetauniv/experiments.hpp"

namespace zetauniv {

enum class Command { eval, sweep, orbit, density, recur, gdelta, joint };

[[nodiscard]] std::string to_string(Command command);
[[nodiscard]] Command parse_command(std::string_view text);

struct PatchConfig {
  StripDomain strip;
  Shape shape = Disc{Complex{0.75, 0.0}, 0.05};
  double grid_step = 0.01;

  [[nodiscard]] CompactPatch build() const { return build_patch(shape, grid_step, strip); }
  friend bool operator==(const PatchConfig&, const PatchConfig&) = default;
};

struct JointComponentConfig {
  Subject subject;
  PatchConfig patch;
  TargetFunction target;
  double h = 1.0;
  friend bool operator==(const JointComponentConfig&, const JointComponentConfig&) = default;
};

struct GdeltaConfig {
  double t0 = 1.7;
  std::uint64_t m_max = 10;
  int n_max = 20;
  double grid_step = 0.1;  ///< grid of the exhaustion K_N
  friend bool operator==(const GdeltaConfig&, const GdeltaConfig&) = default;
};

/// Everything a run needs. `output` and `threads` are runtime settings:
/// they are not part of the echoed configuration in a record.
struct RunConfig {
  int schema_version = 1;
  Command command = Command::eval;
  Subject subject;
  Complex s{2.0, 0.0};
  PatchConfig patch;
  TargetFunction target;
  ShiftSpec shift = ContinuousShift{100.0, 0.01};
  double epsilon = 0.1;
  std::vector<double> h_list;
  EvalPrecision prec;
  bool refine = true;
  int curve_points = 100;
  GdeltaConfig gdelta;
  std::vector<JointComponentConfig> joint;

  std::string output;
  int threads = 0;

  /// Throws ConfigError naming the offending key.
  void validate() const;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline constexpr int kSchemaVersion = 1;

using ConfigEntries = std::map<std::string, std::string>;

/// `key = value` lines; `#` starts a comment. Duplicate keys are errors.
[[nodiscard]] ConfigEntries parse_config_entries(std::string_view text);
/// Unknown or inapplicable keys are rejected; the result is validated.
[[nodiscard]] RunConfig config_from_entries(const ConfigEntries& entries);
[[nodiscard]] RunConfig parse_config(std::string_view text);
[[nodiscard]] RunConfig load_config(const std::string& path);

/// Full key/value form of a config; reals use 17 significant digits.
[[nodiscard]] ConfigEntries config_to_entries(const RunConfig& config, bool include_runtime = true);
[[nodiscard]] std::string serialize_config(const RunConfig& config, bool include_runtime = true);

[[nodiscard]] std::string format_real(double x);
[[nodiscard]] std::string format_complex(Complex z);
[[nodiscard]] double parse_real(std::string_view text);
[[nodiscard]] Complex parse_complex(std::string_view text);
[[nodiscard]] GaussianRational parse_gaussian_rational(std::string_view text);

}  // namespace zetauniv
