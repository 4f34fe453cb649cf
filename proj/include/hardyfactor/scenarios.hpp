#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hardyfactor/serialization.hpp"

namespace hardyfactor {

enum class ScenarioKind { theorem_a, theorem_1, derivative_lemma, frostman };
const char* to_string(ScenarioKind k);

struct Tolerances {
  double rank = 1e-8;
  double deriv = 1e-7;
  double soundness = 1e-6;
  double agreement = 1e-9;
  double identity = 1e-12;
  double outer = 1e-4;
  double divisibility_relative = 0.05;
  double divisibility_floor = 1e-3;
  double lemma = 0.02;
};

// Parsed and validated config. `functions` and the scenario-specific blocks
// are kept as JSON and decoded by the scenario that uses them.
struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::theorem_a;
  std::uint64_t seed = 1;
  int sample_count = 0;  // 0: scenario default
  int lambda_count = 50;
  double radius = 0.995;
  std::vector<double> radii;  // empty: 1 - 2^-k, k = 4..14
  Tolerances tolerances;
  Json functions;  // null when absent
  Json fixtures;   // null when absent
  double mass = 1.0;
  // frostman
  Json theta;  // measure; null means a unit atom at 1
  std::vector<Complex> alphas = {Complex(0.3, 0.0), Complex(0.0, 0.5)};
  std::vector<double> alpha_moduli = {0.1, 0.3, 0.5, 0.7, 0.9};
  std::vector<double> alpha_args = {0.0, 1.5707963267948966, 3.141592653589793, 4.71238898038469};
  double count_radius = 0.999;
  int identity_points = 100;
  int disjoint_support_k = 8;
  bool emit_csv = true;
  bool emit_svg = true;
  Json echo;  // normalized config, written back into the report
};

// Throws ConfigError with a JSON pointer on schema violations.
ScenarioConfig parse_config(const Json& j);

// Command-line overrides applied after parsing; re-validates.
void apply_overrides(ScenarioConfig& c, std::optional<std::uint64_t> seed, std::optional<double> radius,
                     std::optional<int> samples);

struct CheckResult {
  std::string name;
  bool mandatory = true;
  bool passed = false;
  double margin = 0.0;  // positive when passing with room to spare
  Json details;
  double seconds = 0.0;  // wall time, reported only in the timing sidecar
};

struct Artifact {
  std::string file;  // relative to the output directory
  std::string content;
};

struct ScenarioReport {
  ScenarioKind scenario = ScenarioKind::theorem_a;
  Json config;
  std::vector<CheckResult> checks;  // ordered by name
  std::vector<Artifact> artifacts;
  // Every mandatory check passed.
  bool overall_pass() const;
};

ScenarioReport run_scenario(const ScenarioConfig& config);

}  // namespace hardyfactor
