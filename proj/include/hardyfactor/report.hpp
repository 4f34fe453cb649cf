#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hardyfactor/polynomial.hpp"
#include "hardyfactor/scenarios.hpp"

namespace hardyfactor {

// report.json content: config echo, checks ordered by name, artifact list,
// overall verdict. Keys are sorted and no timing is included, so equal
// configs give equal bytes.
std::string report_json(const ScenarioReport& report);

// Wall times per check, kept out of report.json.
std::string timing_json(const ScenarioReport& report);

// Unit disk with one class="certificate" marker per certified deep zero and
// plain markers for other zeros.
std::string zero_map_svg(const std::vector<Complex>& certificates, const std::vector<Complex>& other_zeros);

struct Series {
  std::string label;
  std::vector<double> radii;
  std::vector<double> values;
};

// Values against -log2(1 - r), one polyline per series.
std::string radial_decay_svg(const std::vector<Series>& series);

// Writes report.json, timing.json and every artifact under `dir`, creating
// directories as needed. Returns the paths written. Throws Error naming the
// path on I/O failure.
std::vector<std::filesystem::path> emit_report(const ScenarioReport& report, const std::filesystem::path& dir);

}  // namespace hardyfactor
