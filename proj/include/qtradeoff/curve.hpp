#pragma once

#include <limits>
#include <vector>

namespace qtradeoff::curve {

struct TradeoffPoint {
  int k = 0;
  double x = 0.0;
  double lambda = 0.0;  // x / (1 - x); +inf at x = 1
  double f = 0.0;
  double g = 0.0;
  double F = 0.0;
  double G = 0.0;
  double top_eigenvalue = 0.0;  // of (1 - x) F^k + x G^k
  bool degenerate = false;
  std::vector<double> stripe;  // optimal a^k
};

struct CurveResult {
  int n_qubits = 0;
  int k = 0;
  std::vector<TradeoffPoint> points;  // ascending x, endpoints at 0 and 1
};

struct Envelope {
  int n_qubits = 0;
  std::vector<double> g_grid;
  std::vector<double> best_f;
  std::vector<int> argmax_k;
  /// Per-k interpolated f on g_grid (-inf where the curve does not reach), ordered like `ks`.
  std::vector<int> ks;
  std::vector<std::vector<double>> per_k_f;
};

struct Fidelities {
  double F = 0.0;
  double G = 0.0;
};

/// F = 1/2 + f / (2 j (j+1)), G = 1/2 + g / (2 (j+1)) with j = N/2.
Fidelities fidelities(int n_qubits, double f, double g);

/// n uniform points on [0, 1] including both endpoints (n >= 2).
std::vector<double> uniform_grid(std::size_t n, double lo = 0.0, double hi = 1.0);

inline constexpr std::size_t kDefaultXPoints = 401;

/// Top eigenvector of (1 - x) F^k + x G^k at each grid x. Throws
/// std::domain_error for an unsorted grid or one missing 0 or 1, and
/// std::runtime_error if g decreases by more than 1e-9 along the sweep.
CurveResult sweep(int n_qubits, int k, const std::vector<double>& x_grid);

/// f on an increasing-g curve at g, by linear interpolation. Left of the
/// curve's first point the x = 0 value (the unconstrained maximum of f^k)
/// is returned; right of its last point -inf.
double interpolate_f(const CurveResult& curve, double g);

/// Pointwise maximum over k in relevant_k_range(N) of the swept curves.
Envelope envelope(int n_qubits, const std::vector<double>& g_grid, const std::vector<double>& x_grid);
Envelope envelope(int n_qubits, const std::vector<double>& g_grid);

/// g at the x = 0 point of curve k, compared with k/2 (report only).
struct MaxFReport {
  int k = 0;
  double g_at_max_f = 0.0;
  double deviation = 0.0;  // |g - k/2|
};
std::vector<MaxFReport> g_at_max_f_report(int n_qubits);

}  // namespace qtradeoff::curve
