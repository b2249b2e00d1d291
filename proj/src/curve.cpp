#include "qtradeoff/curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qtradeoff/eigensolve.hpp"
#include "qtradeoff/tradeoff_core.hpp"

namespace qtradeoff::curve {

namespace {
constexpr double kMonotoneTol = 1e-9;
}

Fidelities fidelities(int n_qubits, double f, double g) {
  if (n_qubits < 1) throw std::domain_error("fidelities: N must be positive");
  const double j = 0.5 * n_qubits;
  return {0.5 + f / (2.0 * j * (j + 1.0)), 0.5 + g / (2.0 * (j + 1.0))};
}

std::vector<double> uniform_grid(std::size_t n, double lo, double hi) {
  if (n < 2) throw std::domain_error("uniform_grid: need at least two points");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  out.front() = lo;
  out.back() = hi;
  return out;
}

CurveResult sweep(int n_qubits, int k, const std::vector<double>& x_grid) {
  if (n_qubits < 1) throw std::domain_error("sweep: N must be positive");
  if (x_grid.size() < 2 || x_grid.front() != 0.0 || x_grid.back() != 1.0)
    throw std::domain_error("sweep: x grid must start at 0 and end at 1");
  if (!std::is_sorted(x_grid.begin(), x_grid.end()) ||
      std::adjacent_find(x_grid.begin(), x_grid.end()) != x_grid.end())
    throw std::domain_error("sweep: x grid must be strictly increasing");

  const int two_j = n_qubits;
  const auto mats = core::build_matrices(two_j, k);
  const std::size_t n = mats.f.dim();

  CurveResult out;
  out.n_qubits = n_qubits;
  out.k = k;
  out.points.reserve(x_grid.size());
  for (double x : x_grid) {
    TradeoffPoint p;
    p.k = k;
    p.x = x;
    if (x == 1.0) {
      // G^k is diagonal with its largest entry u_k = j last.
      p.lambda = std::numeric_limits<double>::infinity();
      p.stripe.assign(n, 0.0);
      p.stripe.back() = 1.0;
      p.top_eigenvalue = mats.g.diag.back();
      p.degenerate = false;
    } else {
      p.lambda = x / (1.0 - x);
      const auto pair = eigen::max_eigenpair(blend(mats.f, mats.g, x));
      p.stripe = pair.vector;
      p.top_eigenvalue = pair.value;
      p.degenerate = pair.degenerate;
    }
    p.f = mats.f.quadratic_form(p.stripe);
    p.g = mats.g.quadratic_form(p.stripe);
    const auto fid = fidelities(n_qubits, p.f, p.g);
    p.F = fid.F;
    p.G = fid.G;
    if (!out.points.empty() && p.g < out.points.back().g - kMonotoneTol)
      throw std::runtime_error("sweep: g decreased along the curve at x=" + std::to_string(x));
    out.points.push_back(std::move(p));
  }
  return out;
}

double interpolate_f(const CurveResult& curve, double g) {
  const auto& pts = curve.points;
  if (pts.empty()) throw std::domain_error("interpolate_f: empty curve");
  if (g < pts.front().g) return pts.front().f;
  if (g > pts.back().g) return -std::numeric_limits<double>::infinity();
  // First point with g_i >= g.
  const auto it = std::lower_bound(pts.begin(), pts.end(), g, [](const TradeoffPoint& p, double v) { return p.g < v; });
  if (it == pts.begin()) return it->f;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  if (hi.g == g) {
    // Several points may share this g; the curve bound is the largest f among them.
    double best = hi.f;
    for (auto jt = it; jt != pts.end() && jt->g == g; ++jt) best = std::max(best, jt->f);
    return best;
  }
  const double t = (g - lo.g) / (hi.g - lo.g);
  return lo.f + t * (hi.f - lo.f);
}

Envelope envelope(int n_qubits, const std::vector<double>& g_grid, const std::vector<double>& x_grid) {
  const double j = 0.5 * n_qubits;
  if (g_grid.empty()) throw std::domain_error("envelope: empty g grid");
  for (double g : g_grid)
    if (g < 0.0 || g > j) throw std::domain_error("envelope: g grid must lie in [0, j]");

  Envelope env;
  env.n_qubits = n_qubits;
  env.g_grid = g_grid;
  env.ks = core::relevant_k_range(n_qubits);
  if (env.ks.empty()) throw std::domain_error("envelope: no curves to sweep");
  env.best_f.assign(g_grid.size(), -std::numeric_limits<double>::infinity());
  env.argmax_k.assign(g_grid.size(), -1);
  for (int k : env.ks) {
    const CurveResult c = sweep(n_qubits, k, x_grid);
    if (c.points.empty()) throw std::domain_error("envelope: empty sweep");
    std::vector<double> fk(g_grid.size());
    for (std::size_t i = 0; i < g_grid.size(); ++i) {
      fk[i] = interpolate_f(c, g_grid[i]);
      if (fk[i] > env.best_f[i]) {
        env.best_f[i] = fk[i];
        env.argmax_k[i] = k;
      }
    }
    env.per_k_f.push_back(std::move(fk));
  }
  return env;
}

Envelope envelope(int n_qubits, const std::vector<double>& g_grid) {
  return envelope(n_qubits, g_grid, uniform_grid(kDefaultXPoints));
}

std::vector<MaxFReport> g_at_max_f_report(int n_qubits) {
  std::vector<MaxFReport> out;
  for (int k : core::relevant_k_range(n_qubits)) {
    const auto c = sweep(n_qubits, k, {0.0, 1.0});
    const double g0 = c.points.front().g;
    out.push_back({k, g0, std::abs(g0 - 0.5 * k)});
  }
  return out;
}

}  // namespace qtradeoff::curve
