#include "cli.hpp"

#include <cstdlib>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "qtradeoff/curve.hpp"
#include "qtradeoff/tradeoff_core.hpp"
#include "qtradeoff/verify.hpp"
#include "report_io.hpp"

namespace qtradeoff::cli {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::uint64_t default_seed() {
  const char* env = std::getenv("QTRADEOFF_SEED");
  if (env == nullptr || *env == '\0') return 1;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("QTRADEOFF_SEED is not an unsigned integer: ") + env);
  }
}

std::string doc_dump(const RunConfig& cfg, const std::string& command, nlohmann::json results) {
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["config"] = config_json(cfg, command);
  doc["results"] = std::move(results);
  return doc.dump(2) + "\n";
}

int cmd_curve(const RunConfig& cfg, std::ostream& out) {
  const auto x_grid = curve::uniform_grid(cfg.x_points);
  nlohmann::json results = nlohmann::json::array();
  for (int n : cfg.n_values) {
    const auto ks = cfg.k_list ? *cfg.k_list : core::relevant_k_range(n);
    for (int k : ks)
      if (k > n) throw UsageError("--k " + std::to_string(k) + " exceeds 2j = " + std::to_string(n));
    std::vector<Series> series;
    for (int k : ks) {
      const auto c = curve::sweep(n, k, x_grid);
      if (cfg.format == OutputFormat::csv) {
        const auto path = cfg.output_dir / ("curve_N" + std::to_string(n) + "_k" + std::to_string(k) + ".csv");
        write_atomic(path, curve_csv(c));
        out << "wrote " << path.string() << "\n";
      } else {
        results.push_back(curve_json(c));
      }
      Series s{"k=" + std::to_string(k), {}, {}, k};
      for (const auto& p : c.points) {
        s.G.push_back(p.G);
        s.F.push_back(p.F);
      }
      series.push_back(cfg.relative ? relative_series(std::move(s), n) : std::move(s));
    }
    const auto svg = cfg.output_dir / ("curve_N" + std::to_string(n) + ".svg");
    write_atomic(svg, svg_plot(series, {"N = " + std::to_string(n), cfg.relative ? "relative G" : "G",
                                        cfg.relative ? "relative F" : "F"}));
    out << "wrote " << svg.string() << "\n";
  }
  if (cfg.format == OutputFormat::json) {
    const auto path = cfg.output_dir / "curve.json";
    write_atomic(path, doc_dump(cfg, "curve", std::move(results)));
    out << "wrote " << path.string() << "\n";
  }
  return kSuccess;
}

int cmd_envelope(const RunConfig& cfg, std::ostream& out) {
  const auto x_grid = curve::uniform_grid(cfg.x_points);
  nlohmann::json results = nlohmann::json::array();
  std::vector<Series> series;
  int style = 0;
  for (int n : cfg.n_values) {
    const auto g_grid = curve::uniform_grid(cfg.x_points, 0.0, 0.5 * n);
    const auto env = curve::envelope(n, g_grid, x_grid);
    if (cfg.format == OutputFormat::csv) {
      const auto path = cfg.output_dir / ("envelope_N" + std::to_string(n) + ".csv");
      write_atomic(path, envelope_csv(env));
      out << "wrote " << path.string() << "\n";
    } else {
      results.push_back(envelope_json(env));
    }
    Series s{"N=" + std::to_string(n), {}, {}, style++};
    for (std::size_t i = 0; i < env.g_grid.size(); ++i) {
      const auto fid = curve::fidelities(n, env.best_f[i], env.g_grid[i]);
      s.G.push_back(fid.G);
      s.F.push_back(fid.F);
    }
    series.push_back(cfg.relative ? relative_series(std::move(s), n) : std::move(s));
  }
  const auto svg = cfg.output_dir / "envelope.svg";
  write_atomic(svg, svg_plot(series, {"Fidelity trade-off", cfg.relative ? "relative G" : "G",
                                      cfg.relative ? "relative F" : "F"}));
  out << "wrote " << svg.string() << "\n";
  if (cfg.format == OutputFormat::json) {
    const auto path = cfg.output_dir / "envelope.json";
    write_atomic(path, doc_dump(cfg, "envelope", std::move(results)));
    out << "wrote " << path.string() << "\n";
  }
  return kSuccess;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  for (int n : cfg.n_values)
    if (n > 8) throw UsageError("verify supports N <= 8");
  nlohmann::json results = nlohmann::json::array();
  bool all_hard = true;
  for (int n : cfg.n_values) {
    const auto checks = verify::run_suite({n, cfg.samples, cfg.seed});
    for (const auto& c : checks) {
      out << (c.passed ? "PASS " : (c.hard ? "FAIL " : "NOTE ")) << "N=" << n << ' ' << c.name
          << (c.hard ? "" : " (conjecture, report only)") << "\n";
      if (c.hard && !c.passed) all_hard = false;
    }
    results.push_back(checks_json(n, checks));
  }
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["config"] = config_json(cfg, "verify");
  doc["results"] = std::move(results);
  doc["all_hard_checks_passed"] = all_hard;
  const auto path = cfg.output_dir / "verify.json";
  write_atomic(path, doc.dump(2) + "\n");
  out << "wrote " << path.string() << "\n";
  return all_hard ? kSuccess : kAssertionFailure;
}

void add_common_options(CLI::App& sub, RunConfig& cfg, std::string& format, std::string& out_dir, std::vector<int>& ks,
                        std::uint64_t& seed) {
  sub.add_option("--n", cfg.n_values, "Ensemble size(s) N")->expected(1, -1);
  sub.add_option("--k", ks, "Stripe indices k (default: 0 <= k < sqrt(N))")->expected(1, -1);
  sub.add_option("--x-points", cfg.x_points, "Points in the x sweep and g grid")->capture_default_str();
  sub.add_option("--samples", cfg.samples, "Monte-Carlo samples")->capture_default_str();
  sub.add_option("--seed", seed, "Random seed (default: $QTRADEOFF_SEED or 1)");
  sub.add_option("--format", format, "Table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sub.add_option("--out", out_dir, "Output directory")->capture_default_str();
  sub.add_flag("--relative", cfg.relative, "Rescale plot axes to [0, 1]");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fidelity trade-off curves for N identically prepared qubits"};
  app.name("qtradeoff");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "csv";
  std::string out_dir = ".";
  std::vector<int> ks;
  std::uint64_t seed = 0;

  auto* curve_cmd = app.add_subcommand("curve", "Per-k trade-off curves");
  auto* envelope_cmd = app.add_subcommand("envelope", "Allowed region as the envelope over k");
  auto* verify_cmd = app.add_subcommand("verify", "Monte-Carlo and oracle verification suites");
  for (auto* sub : {curve_cmd, envelope_cmd, verify_cmd}) add_common_options(*sub, cfg, format, out_dir, ks, seed);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    const bool seed_given = active->count("--seed") > 0;
    cfg.seed = seed_given ? seed : default_seed();
    cfg.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
    cfg.output_dir = out_dir;
    if (active->count("--k") > 0) cfg.k_list = ks;
    cfg.validate();

    if (active == curve_cmd) return cmd_curve(cfg, out);
    if (active == envelope_cmd) return cmd_envelope(cfg, out);
    return cmd_verify(cfg, out);
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kAssertionFailure;
  }
}

}  // namespace qtradeoff::cli
