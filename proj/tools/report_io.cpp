#include "report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace qtradeoff::cli {

namespace fs = std::filesystem;

void RunConfig::validate() const {
  if (n_values.empty()) throw std::invalid_argument("at least one --n value is required");
  for (int n : n_values)
    if (n < 1) throw std::invalid_argument("--n must be >= 1");
  if (x_points < 2) throw std::invalid_argument("--x-points must be >= 2");
  if (samples < 1000) throw std::invalid_argument("--samples must be >= 1000");
  if (k_list)
    for (int k : *k_list)
      if (k < 0) throw std::invalid_argument("--k values must be >= 0");
}

void write_atomic(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("failed writing " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string());
  }
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string curve_csv(const curve::CurveResult& c) {
  std::string out = kCurveCsvHeader;
  out += '\n';
  for (const auto& p : c.points) {
    out += std::to_string(p.k) + ',' + format_double(p.x) + ',' + format_double(p.lambda) + ',' + format_double(p.f) +
           ',' + format_double(p.g) + ',' + format_double(p.F) + ',' + format_double(p.G) + ',' +
           format_double(p.top_eigenvalue) + ',' + (p.degenerate ? "1" : "0") + '\n';
  }
  return out;
}

std::string envelope_csv(const curve::Envelope& e) {
  std::string out = kEnvelopeCsvHeader;
  out += '\n';
  for (std::size_t i = 0; i < e.g_grid.size(); ++i) {
    const auto fid = curve::fidelities(e.n_qubits, e.best_f[i], e.g_grid[i]);
    out += format_double(e.g_grid[i]) + ',' + format_double(e.best_f[i]) + ',' + std::to_string(e.argmax_k[i]) + ',' +
           format_double(fid.F) + ',' + format_double(fid.G) + '\n';
  }
  return out;
}

namespace {

nlohmann::json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

nlohmann::json config_json(const RunConfig& cfg, const std::string& command) {
  nlohmann::json j;
  j["command"] = command;
  j["n"] = cfg.n_values;
  j["k"] = cfg.k_list ? nlohmann::json(*cfg.k_list) : nlohmann::json(nullptr);
  j["x_points"] = cfg.x_points;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  j["format"] = cfg.format == OutputFormat::csv ? "csv" : "json";
  j["relative"] = cfg.relative;
  return j;
}

nlohmann::json curve_json(const curve::CurveResult& c) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : c.points) {
    pts.push_back({{"k", p.k},
                   {"x", p.x},
                   {"lambda", number_or_null(p.lambda)},
                   {"f", p.f},
                   {"g", p.g},
                   {"F", p.F},
                   {"G", p.G},
                   {"eigenvalue", p.top_eigenvalue},
                   {"degenerate", p.degenerate}});
  }
  return {{"N", c.n_qubits}, {"k", c.k}, {"points", std::move(pts)}};
}

nlohmann::json envelope_json(const curve::Envelope& e) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < e.g_grid.size(); ++i) {
    const auto fid = curve::fidelities(e.n_qubits, e.best_f[i], e.g_grid[i]);
    rows.push_back({{"g", e.g_grid[i]},
                    {"best_f", number_or_null(e.best_f[i])},
                    {"argmax_k", e.argmax_k[i]},
                    {"F", number_or_null(fid.F)},
                    {"G", fid.G}});
  }
  return {{"N", e.n_qubits}, {"ks", e.ks}, {"rows", std::move(rows)}};
}

nlohmann::json checks_json(int n_qubits, const std::vector<verify::CheckResult>& checks) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json metrics = nlohmann::json::object();
    for (const auto& [k, v] : c.metrics) metrics[k] = number_or_null(v);
    arr.push_back({{"name", c.name}, {"hard", c.hard}, {"passed", c.passed}, {"metrics", std::move(metrics)}});
  }
  return {{"N", n_qubits}, {"checks", std::move(arr)}};
}

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
constexpr double kTick = 0.05;

const char* dash_pattern(int style) {
  switch (style % 4) {
    case 0: return "";
    case 1: return "8,4";
    case 2: return "8,3,2,3";
    default: return "2,3";
  }
}

std::string fmt(const char* f, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string svg_plot(const std::vector<Series>& series, const PlotOptions& opts) {
  double gmin = std::numeric_limits<double>::infinity(), gmax = -gmin;
  double fmin = gmin, fmax = -gmin;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.G.size(); ++i) {
      if (!std::isfinite(s.F[i]) || !std::isfinite(s.G[i])) continue;
      gmin = std::min(gmin, s.G[i]);
      gmax = std::max(gmax, s.G[i]);
      fmin = std::min(fmin, s.F[i]);
      fmax = std::max(fmax, s.F[i]);
    }
  if (!std::isfinite(gmin)) gmin = 0.5, gmax = 1.0, fmin = 0.5, fmax = 1.0;
  // Snap the ranges outward to the tick lattice.
  auto snap_down = [](double v) { return std::floor(v / kTick + 1e-9) * kTick; };
  auto snap_up = [](double v) { return std::ceil(v / kTick - 1e-9) * kTick; };
  gmin = snap_down(gmin);
  gmax = std::max(snap_up(gmax), gmin + kTick);
  fmin = snap_down(fmin);
  fmax = std::max(snap_up(fmax), fmin + kTick);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double g) { return kLeft + (g - gmin) / (gmax - gmin) * pw; };
  auto py = [&](double f) { return kTop + (fmax - f) / (fmax - fmin) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 640 480\" width=\"640\" height=\"480\">\n";
  o << "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";
  if (!opts.title.empty())
    o << "<text x=\"" << fmt("%.1f", kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << escape_xml(opts.title) << "</text>\n";
  o << "<rect x=\"" << fmt("%.1f", kLeft) << "\" y=\"" << fmt("%.1f", kTop) << "\" width=\"" << fmt("%.1f", pw)
    << "\" height=\"" << fmt("%.1f", ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  const int gticks = static_cast<int>(std::lround((gmax - gmin) / kTick));
  for (int i = 0; i <= gticks; ++i) {
    const double g = gmin + i * kTick;
    const double x = px(g);
    o << "<line x1=\"" << fmt("%.2f", x) << "\" y1=\"" << fmt("%.2f", kTop + ph) << "\" x2=\"" << fmt("%.2f", x)
      << "\" y2=\"" << fmt("%.2f", kTop + ph + 5) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << fmt("%.2f", x) << "\" y=\"" << fmt("%.2f", kTop + ph + 18)
      << "\" text-anchor=\"middle\" font-size=\"10\">" << fmt("%.2f", g) << "</text>\n";
  }
  const int fticks = static_cast<int>(std::lround((fmax - fmin) / kTick));
  for (int i = 0; i <= fticks; ++i) {
    const double f = fmin + i * kTick;
    const double y = py(f);
    o << "<line x1=\"" << fmt("%.2f", kLeft - 5) << "\" y1=\"" << fmt("%.2f", y) << "\" x2=\"" << fmt("%.2f", kLeft)
      << "\" y2=\"" << fmt("%.2f", y) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << fmt("%.2f", kLeft - 8) << "\" y=\"" << fmt("%.2f", y + 3)
      << "\" text-anchor=\"end\" font-size=\"10\">" << fmt("%.2f", f) << "</text>\n";
  }
  o << "<text x=\"" << fmt("%.1f", kLeft + pw / 2) << "\" y=\"" << fmt("%.1f", kHeight - 12)
    << "\" text-anchor=\"middle\" font-size=\"13\">" << escape_xml(opts.x_label) << "</text>\n";
  o << "<text x=\"18\" y=\"" << fmt("%.1f", kTop + ph / 2) << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
    << fmt("%.1f", kTop + ph / 2) << ")\">" << escape_xml(opts.y_label) << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    o << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"";
    const char* dash = dash_pattern(s.style);
    if (*dash) o << " stroke-dasharray=\"" << dash << "\"";
    o << " points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.G.size(); ++i) {
      if (!std::isfinite(s.F[i]) || !std::isfinite(s.G[i])) continue;
      if (!first) o << ' ';
      first = false;
      o << fmt("%.3f", px(s.G[i])) << ',' << fmt("%.3f", py(s.F[i]));
    }
    o << "\"/>\n";
    const double ly = kTop + 14.0 + 18.0 * static_cast<double>(si);
    const double lx = kLeft + pw + 10.0;
    o << "<line x1=\"" << fmt("%.1f", lx) << "\" y1=\"" << fmt("%.1f", ly) << "\" x2=\"" << fmt("%.1f", lx + 30)
      << "\" y2=\"" << fmt("%.1f", ly) << "\" stroke=\"black\" stroke-width=\"1.5\"";
    if (*dash) o << " stroke-dasharray=\"" << dash << "\"";
    o << "/>\n";
    o << "<text x=\"" << fmt("%.1f", lx + 36) << "\" y=\"" << fmt("%.1f", ly + 4) << "\" font-size=\"11\">"
      << escape_xml(s.label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

Series relative_series(Series s, int n_qubits) {
  const double top = (n_qubits + 1.0) / (n_qubits + 2.0);
  for (auto& g : s.G) g = (g - 0.5) / (top - 0.5);
  for (auto& f : s.F) f = (f - top) / (1.0 - top);
  return s;
}

}  // namespace qtradeoff::cli
