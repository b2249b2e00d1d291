#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtradeoff/curve.hpp"
#include "qtradeoff/verify.hpp"

namespace qtradeoff::cli {

inline constexpr int kSchemaVersion = 1;

enum class OutputFormat { csv, json };

struct RunConfig {
  std::vector<int> n_values{10};
  std::optional<std::vector<int>> k_list;
  std::size_t x_points = curve::kDefaultXPoints;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = ".";
  OutputFormat format = OutputFormat::csv;
  bool relative = false;

  /// Throws std::invalid_argument when N < 1, x_points < 2 or samples < 1000.
  void validate() const;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Writes to a temporary sibling and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// %.17g, with "inf" / "-inf" for infinities.
std::string format_double(double v);

inline constexpr const char* kCurveCsvHeader = "k,x,lambda,f,g,F,G,eigenvalue,degenerate";
inline constexpr const char* kEnvelopeCsvHeader = "g,best_f,argmax_k,F,G";

std::string curve_csv(const curve::CurveResult& c);
std::string envelope_csv(const curve::Envelope& e);

nlohmann::json config_json(const RunConfig& cfg, const std::string& command);
nlohmann::json curve_json(const curve::CurveResult& c);
nlohmann::json envelope_json(const curve::Envelope& e);
nlohmann::json checks_json(int n_qubits, const std::vector<verify::CheckResult>& checks);

/// One polyline in an F-vs-G plot.
struct Series {
  std::string label;
  std::vector<double> G;
  std::vector<double> F;
  int style = 0;  // 0 solid, 1 dashed, 2 dotted-dashed, 3 dotted (cycles)
};

struct PlotOptions {
  std::string title;
  std::string x_label = "G";
  std::string y_label = "F";
};

/// Static SVG with fixed viewBox and ticks every 0.05 on both axes.
std::string svg_plot(const std::vector<Series>& series, const PlotOptions& opts);

/// (G - 1/2) / (G_max - 1/2) and (F - F_min) / (1 - F_min) with G_max = F_min = (N+1)/(N+2).
Series relative_series(Series s, int n_qubits);

}  // namespace qtradeoff::cli
