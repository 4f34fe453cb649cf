#include "hardyfactor/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hardyfactor/errors.hpp"

namespace hardyfactor {

namespace {

constexpr double kSize = 400.0;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string svg_open(double w, double h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(w) + "\" height=\"" + fmt(h) + "\" viewBox=\"0 0 " +
         fmt(w) + " " + fmt(h) + "\">\n";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw Error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace

std::string report_json(const ScenarioReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name},
                      {"mandatory", c.mandatory},
                      {"passed", c.passed},
                      {"margin", c.margin},
                      {"details", c.details.is_null() ? Json::object() : c.details}});
  Json artifacts = Json::array();
  for (const auto& a : report.artifacts) artifacts.push_back(a.file);
  const Json j = {{"scenario", to_string(report.scenario)},
                  {"config", report.config.is_null() ? Json::object() : report.config},
                  {"checks", checks},
                  {"artifacts", artifacts},
                  {"overall_pass", report.overall_pass()}};
  return j.dump(2) + "\n";
}

std::string timing_json(const ScenarioReport& report) {
  Json checks = Json::object();
  double total = 0.0;
  for (const auto& c : report.checks) {
    checks[c.name] = c.seconds;
    total += c.seconds;
  }
  return Json{{"checks", checks}, {"total_seconds", total}}.dump(2) + "\n";
}

std::string zero_map_svg(const std::vector<Complex>& certificates, const std::vector<Complex>& other_zeros) {
  const double c = kSize / 2.0, s = kSize * 0.45;
  std::ostringstream os;
  os << svg_open(kSize, kSize);
  os << "<title>deep zeros</title>\n";
  os << "<line x1=\"" << fmt(c - s) << "\" y1=\"" << fmt(c) << "\" x2=\"" << fmt(c + s) << "\" y2=\"" << fmt(c)
     << "\" stroke=\"#ccc\"/>\n";
  os << "<line x1=\"" << fmt(c) << "\" y1=\"" << fmt(c - s) << "\" x2=\"" << fmt(c) << "\" y2=\"" << fmt(c + s)
     << "\" stroke=\"#ccc\"/>\n";
  os << "<circle class=\"unit-circle\" cx=\"" << fmt(c) << "\" cy=\"" << fmt(c) << "\" r=\"" << fmt(s)
     << "\" fill=\"none\" stroke=\"#000\"/>\n";
  for (auto z : other_zeros)
    os << "<circle class=\"zero\" cx=\"" << fmt(c + s * z.real()) << "\" cy=\"" << fmt(c - s * z.imag())
       << "\" r=\"3\" fill=\"none\" stroke=\"#888\"/>\n";
  for (auto z : certificates)
    os << "<circle class=\"certificate\" cx=\"" << fmt(c + s * z.real()) << "\" cy=\"" << fmt(c - s * z.imag())
       << "\" r=\"4\" fill=\"#d62728\"/>\n";
  os << "</svg>\n";
  return os.str();
}

std::string radial_decay_svg(const std::vector<Series>& series) {
  const double w = 520.0, h = 320.0, left = 60.0, right = 140.0, top = 20.0, bottom = 40.0;
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  auto x_of = [](double r) { return -std::log2(1.0 - r); };
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.radii.size() && i < s.values.size(); ++i) {
      if (!std::isfinite(s.values[i])) continue;
      xmin = std::min(xmin, x_of(s.radii[i]));
      xmax = std::max(xmax, x_of(s.radii[i]));
      ymin = std::min(ymin, s.values[i]);
      ymax = std::max(ymax, s.values[i]);
    }
  if (!(xmin < xmax)) xmin = 0.0, xmax = 1.0;
  if (!(ymin < ymax)) ymin = std::isfinite(ymin) ? ymin - 1.0 : 0.0, ymax = ymin + 2.0;
  const double pw = w - left - right, ph = h - top - bottom;
  auto px = [&](double x) { return left + pw * (x - xmin) / (xmax - xmin); };
  auto py = [&](double y) { return top + ph * (1.0 - (y - ymin) / (ymax - ymin)); };

  std::ostringstream os;
  os << svg_open(w, h);
  os << "<title>radial decay</title>\n";
  os << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(pw) << "\" height=\"" << fmt(ph)
     << "\" fill=\"none\" stroke=\"#000\"/>\n";
  os << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"" << fmt(h - 8) << "\" text-anchor=\"middle\" font-size=\"12\">"
     << "-log2(1 - r)</text>\n";
  os << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(top + 10) << "\" text-anchor=\"end\" font-size=\"10\">"
     << fmt(ymax) << "</text>\n";
  os << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(top + ph) << "\" text-anchor=\"end\" font-size=\"10\">"
     << fmt(ymin) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* colour = kPalette[k % std::size(kPalette)];
    os << "<polyline class=\"series\" fill=\"none\" stroke=\"" << colour << "\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.radii.size() && i < s.values.size(); ++i) {
      if (!std::isfinite(s.values[i])) continue;
      os << (first ? "" : " ") << fmt(px(x_of(s.radii[i]))) << "," << fmt(py(s.values[i]));
      first = false;
    }
    os << "\"/>\n";
    os << "<text x=\"" << fmt(w - right + 8) << "\" y=\"" << fmt(top + 14.0 * (k + 1)) << "\" font-size=\"11\" fill=\""
       << colour << "\">" << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::vector<std::filesystem::path> emit_report(const ScenarioReport& report, const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  for (const auto& a : report.artifacts) {
    written.push_back(dir / a.file);
    write_file(written.back(), a.content);
  }
  written.push_back(dir / "report.json");
  write_file(written.back(), report_json(report));
  written.push_back(dir / "timing.json");
  write_file(written.back(), timing_json(report));
  return written;
}

}  // namespace hardyfactor
