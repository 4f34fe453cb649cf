#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "hardyfactor/errors.hpp"
#include "hardyfactor/report.hpp"
#include "hardyfactor/scenarios.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailure = 2;
constexpr int kConfigError = 3;
constexpr int kInternalError = 4;

hardyfactor::Json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hardyfactor::ConfigError("", "cannot read " + path);
  try {
    return hardyfactor::Json::parse(in);
  } catch (const hardyfactor::Json::parse_error& e) {
    throw hardyfactor::ConfigError("", path + " is not valid JSON: " + e.what());
  }
}

// what() without the leading pointer.
std::string message_of(const hardyfactor::ConfigError& e) {
  const std::string w = e.what();
  return w.substr(std::min(w.size(), e.pointer().size() + 2));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wronskian deep zeros and singular inner factors"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "Run a scenario and write its report");
  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> radius;
  std::optional<int> samples;
  run->add_option("config", config_path, "Scenario config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--radius", radius, "Override the search radius");
  run->add_option("--samples", samples, "Override sample_count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfigError;
  }

  hardyfactor::ScenarioConfig config;
  try {
    config = hardyfactor::parse_config(read_config(config_path));
    hardyfactor::apply_overrides(config, seed, radius, samples);
  } catch (const hardyfactor::ConfigError& e) {
    std::cerr << "config error at " << (e.pointer().empty() ? "(document root)" : e.pointer()) << ": " << message_of(e) << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    const auto report = hardyfactor::run_scenario(config);
    hardyfactor::emit_report(report, out_dir);
    for (const auto& c : report.checks)
      std::printf("%-4s %s%s\n", c.passed ? "ok" : "FAIL", c.name.c_str(), c.mandatory ? "" : " (informational)");
    const bool pass = report.overall_pass();
    std::printf("%s: %s\n", hardyfactor::to_string(config.scenario), pass ? "pass" : "fail");
    return pass ? kPass : kCheckFailure;
  } catch (const hardyfactor::ConfigError& e) {
    std::cerr << "config error at " << (e.pointer().empty() ? "(document root)" : e.pointer()) << ": " << message_of(e) << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}
