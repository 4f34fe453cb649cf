#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hardyfactor/errors.hpp"
#include "hardyfactor/report.hpp"
#include "hardyfactor/scenarios.hpp"

using namespace hardyfactor;

namespace {

std::string pointer_of(const std::string& json) {
  try {
    parse_config(Json::parse(json));
  } catch (const ConfigError& e) {
    return e.pointer();
  }
  return "<accepted>";
}

const CheckResult& check(const ScenarioReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c;
  FAIL("missing check " << name);
  throw 0;
}

std::size_t count_of(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("scenarios") {
  TEST_CASE("config errors carry JSON pointers") {
    CHECK(pointer_of(R"([1, 2])") == "");
    CHECK(pointer_of(R"({})") == "/scenario");
    CHECK(pointer_of(R"({"scenario": "theorem-b"})") == "/scenario");
    CHECK(pointer_of(R"({"scenario": "theorem-a", "bogus": 1})") == "/bogus");
    CHECK(pointer_of(R"({"scenario": "theorem-a", "seed": -1})") == "/seed");
    CHECK(pointer_of(R"({"scenario": "theorem-a", "radius": 1.0})") == "/radius");
    CHECK(pointer_of(R"({"scenario": "theorem-a", "radii": [0.5, 0.4, 0.9]})") == "/radii/1");
    CHECK(pointer_of(R"({"scenario": "theorem-a", "tolerances": {"outer": "x"}})") == "/tolerances/outer");
    CHECK(pointer_of(R"({"scenario": "theorem-a", "functions": [{"kind": "exact", "coeffs": [["1/0", "0"]]},
                                                                  {"kind": "exact", "coeffs": [["1", "0"]]}]})")
              .rfind("/functions/0", 0) == 0);
    CHECK(pointer_of(R"({"scenario": "theorem-a", "functions": [{"kind": "exact", "coeffs": [["1", "0"]]},
                                                                  {"kind": "exact", "coeffs": [["2", "0"]]}]})") ==
          "/functions");
    CHECK(pointer_of(R"({"scenario": "frostman", "alphas": [[1.0, 0.0]]})") == "/alphas/0");
    CHECK(pointer_of(R"({"scenario": "derivative-lemma", "fixtures": [{"arg": 0}]})") == "/fixtures/0/power");
    CHECK(pointer_of(R"({"scenario": "theorem-1", "fixtures": [{"name": "a", "functions": []}]})") ==
          "/fixtures/0/functions");
    CHECK(pointer_of(R"({"scenario": "frostman", "output": {"csv": 1}})") == "/output/csv");
    CHECK(pointer_of(R"({"scenario": "frostman", "seed": 18446744073709551615})") == "<accepted>");
  }

  TEST_CASE("overrides replace config fields") {
    auto c = parse_config(Json::parse(R"({"scenario": "theorem-a", "seed": 3})"));
    apply_overrides(c, 9u, 0.9, 12);
    CHECK(c.seed == 9u);
    CHECK(c.radius == 0.9);
    CHECK(c.sample_count == 12);
    CHECK_THROWS_AS(apply_overrides(c, std::nullopt, 1.5, std::nullopt), ConfigError);
    CHECK_THROWS_AS(apply_overrides(c, std::nullopt, std::nullopt, 0), ConfigError);
  }

  TEST_CASE("empty report is valid JSON and passes") {
    ScenarioReport r;
    const Json j = Json::parse(report_json(r));
    CHECK(j["overall_pass"] == true);
    CHECK(j["checks"].empty());
  }

  TEST_CASE("theorem-a on (1, z^2)") {
    auto c = parse_config(Json::parse(R"({"scenario": "theorem-a", "seed": 5, "sample_count": 10, "lambda_count": 8})"));
    const auto r = run_scenario(c);
    CHECK(r.overall_pass());
    const auto& t = check(r, "theorem-a/configured-tuple");
    const auto& certs = t.details["deep_zeros"]["certificates"];
    REQUIRE(certs.size() == 1);
    CHECK(std::abs(certs[0]["point"][0].get<double>()) <= 1e-12);
    CHECK(std::abs(certs[0]["point"][1].get<double>()) <= 1e-12);
    const auto& w = certs[0]["witness"]["lambdas"];
    CHECK(std::abs(w[0][0].get<double>()) + std::abs(w[0][1].get<double>()) <= 1e-12);
    CHECK(std::hypot(w[1][0].get<double>(), w[1][1].get<double>()) == doctest::Approx(1.0));

    // One certificate marker per certificate.
    bool found = false;
    for (const auto& a : r.artifacts)
      if (a.file == "zeros.svg") {
        found = true;
        CHECK(count_of(a.content, "class=\"certificate\"") == certs.size());
      }
    CHECK(found);

    // Checks are ordered by name.
    for (std::size_t i = 1; i < r.checks.size(); ++i) CHECK(r.checks[i - 1].name < r.checks[i].name);
  }

  TEST_CASE("zero map markers match the certificate list") {
    const std::vector<Complex> certs{Complex(0.1, 0.2), Complex(-0.5, 0.0), Complex(0.0, 0.7)};
    const auto svg = zero_map_svg(certs, {Complex(0.3, 0.3)});
    CHECK(count_of(svg, "class=\"certificate\"") == 3);
    CHECK(count_of(svg, "class=\"zero\"") == 1);
  }

  TEST_CASE("frostman with alpha = 0") {
    auto c = parse_config(Json::parse(R"({"scenario": "frostman", "alphas": [[0.0, 0.0]],
        "alpha_grid": {"moduli": [], "args": []}, "disjoint_support_k": 2, "identity_points": 20})"));
    const auto r = run_scenario(c);
    const auto& id = check(r, "frostman/identity");
    CHECK(id.passed);
    CHECK(id.details["alpha_zero_identical"] == true);
    CHECK(id.details["per_alpha"][0]["max_residual"].get<double>() == 0.0);
    const auto& zc = check(r, "frostman/zero-counts");
    REQUIRE(zc.details["counts"].size() == 1);
    CHECK(zc.details["counts"][0]["count"] == 0);
    CHECK(zc.details["counts"][0]["closed_form"] == 0);
  }

  TEST_CASE("disjoint support demo") {
    auto c = parse_config(Json::parse(R"({"scenario": "frostman", "alpha_grid": {"moduli": [], "args": []},
        "alphas": [[0.3, 0.0]], "disjoint_support_k": 8})"));
    const auto r = run_scenario(c);
    const auto& d = check(r, "frostman/disjoint-support");
    CHECK(d.passed);
    CHECK(d.details["pairwise_disjoint"] == true);
    CHECK(d.details["least_dominating_mass_K"].get<double>() == doctest::Approx(8.0).epsilon(1e-6));
    const auto& per_k = d.details["per_k"];
    REQUIRE(per_k.size() == 8);
    for (int k = 0; k < 8; ++k)
      CHECK(per_k[k]["least_dominating_mass"].get<double>() == doctest::Approx(k + 1.0).epsilon(1e-6));
  }

  TEST_CASE("emit_report writes files and reruns are identical") {
    auto c = parse_config(Json::parse(R"({"scenario": "derivative-lemma", "fixtures": [{"power": 4}]})"));
    const auto dir = std::filesystem::temp_directory_path() / "hardyfactor-emit-test";
    std::filesystem::remove_all(dir);
    const auto first = emit_report(run_scenario(c), dir / "a");
    emit_report(run_scenario(c), dir / "b");
    for (const auto& p : first) CHECK(std::filesystem::exists(p));
    CHECK(std::filesystem::exists(dir / "a" / "radial-decay.svg"));
    CHECK(std::filesystem::exists(dir / "a" / "traces" / "atom-mass.csv"));
    CHECK(slurp(dir / "a" / "report.json") == slurp(dir / "b" / "report.json"));
    CHECK(Json::parse(slurp(dir / "a" / "report.json"))["overall_pass"] == true);

    // A file where a directory should be.
    std::ofstream(dir / "blocker") << "x";
    CHECK_THROWS_WITH_AS(emit_report(run_scenario(c), dir / "blocker" / "out"),
                         doctest::Contains("blocker"), Error);
    std::filesystem::remove_all(dir);
  }
}
