#include "qtradeoff/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "qtradeoff/random.hpp"

namespace qtradeoff::eigen {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_finite(const SymmetricTridiagonal& m) {
  if (m.dim() == 0) throw std::domain_error("eigensolve: empty matrix");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(m.diag.begin(), m.diag.end(), finite) || !std::all_of(m.offdiag.begin(), m.offdiag.end(), finite))
    throw std::domain_error("eigensolve: non-finite matrix entry");
}

struct Interval {
  double lo;
  double hi;
};

Interval gershgorin(const SymmetricTridiagonal& m) {
  const std::size_t n = m.dim();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(m.offdiag[i - 1]);
    if (i + 1 < n) r += std::abs(m.offdiag[i]);
    lo = std::min(lo, m.diag[i] - r);
    hi = std::max(hi, m.diag[i] + r);
  }
  const double pad = 2.0 * kEps * std::max({1.0, std::abs(lo), std::abs(hi)}) * static_cast<double>(n);
  return {lo - pad, hi + pad};
}

double pivot_floor(const SymmetricTridiagonal& m) {
  double e2 = 1.0;
  for (double e : m.offdiag) e2 = std::max(e2, e * e);
  return std::numeric_limits<double>::min() * e2;
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Solves (shift I - M) x = rhs in place; returns false if the factorization is not definite.
bool solve_shifted(const SymmetricTridiagonal& m, double shift, std::vector<double>& rhs) {
  const std::size_t n = m.dim();
  std::vector<double> pivots(n);
  std::vector<double> mult(n, 0.0);
  pivots[0] = shift - m.diag[0];
  if (!(pivots[0] > 0.0)) return false;
  for (std::size_t i = 1; i < n; ++i) {
    const double c = -m.offdiag[i - 1];
    mult[i] = c / pivots[i - 1];
    pivots[i] = (shift - m.diag[i]) - mult[i] * c;
    if (!(pivots[i] > 0.0)) return false;
  }
  for (std::size_t i = 1; i < n; ++i) rhs[i] -= mult[i] * rhs[i - 1];
  rhs[n - 1] /= pivots[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] + m.offdiag[i] * rhs[i + 1]) / pivots[i];
  return std::all_of(rhs.begin(), rhs.end(), [](double v) { return std::isfinite(v); });
}

void orient_positive(std::vector<double>& v) {
  const auto it = std::max_element(v.begin(), v.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  if (*it < 0.0)
    for (double& x : v) x = -x;
}

double residual_of(const SymmetricTridiagonal& m, double value, std::span<const double> v) {
  auto mv = m.apply(v);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += (mv[i] - value * v[i]) * (mv[i] - value * v[i]);
  return std::sqrt(s);
}

}  // namespace

double residual_tolerance(const SymmetricTridiagonal& m) {
  return 1e-10 * std::max(1.0, m.max_abs() * static_cast<double>(m.dim()));
}

std::size_t sturm_count(const SymmetricTridiagonal& m, double shift) {
  const double floor = pivot_floor(m);
  std::size_t count = 0;
  double q = m.diag[0] - shift;
  for (std::size_t i = 0;; ++i) {
    if (std::abs(q) < floor) q = -floor;
    if (q < 0.0) ++count;
    if (i + 1 == m.dim()) break;
    q = (m.diag[i + 1] - shift) - m.offdiag[i] * m.offdiag[i] / q;
  }
  return count;
}

double bisect_eigenvalue(const SymmetricTridiagonal& m, std::size_t index) {
  require_finite(m);
  if (index >= m.dim()) throw std::domain_error("bisect_eigenvalue: index out of range");
  auto [lo, hi] = gershgorin(m);
  // Invariant: count(lo) <= index < count(hi).
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi))) break;
    if (sturm_count(m, mid) > index)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> tridiagonal_spectrum(const SymmetricTridiagonal& m) {
  std::vector<double> out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) out[i] = bisect_eigenvalue(m, i);
  return out;
}

EigenPair max_eigenpair(const SymmetricTridiagonal& m) {
  require_finite(m);
  const std::size_t n = m.dim();
  EigenPair out;
  if (n == 1) {
    out.value = m.diag[0];
    out.vector = {1.0};
    return out;
  }

  const double top = bisect_eigenvalue(m, n - 1);
  const double second = bisect_eigenvalue(m, n - 2);
  const double scale = std::max(1.0, m.max_abs());
  out.gap = top - second;
  out.degenerate = out.gap < 1e-9 * scale;

  // Fixed start vector so degenerate cases resolve reproducibly.
  Rng rng(0x5eed5eedULL);
  std::vector<double> v(n);
  for (double& x : v) x = 0.5 + rng.uniform();

  const double tol = residual_tolerance(m);
  double delta = 4.0 * kEps * scale * static_cast<double>(n);
  for (int attempt = 0; attempt < 60; ++attempt) {
    std::vector<double> x = v;
    bool ok = true;
    for (int it = 0; it < 4 && ok; ++it) {
      ok = solve_shifted(m, top + delta, x);
      if (!ok) break;
      const double nx = norm2(x);
      if (!(nx > 0.0) || !std::isfinite(nx)) {
        ok = false;
        break;
      }
      for (double& xi : x) xi /= nx;
    }
    if (!ok) {
      delta *= 4.0;
      continue;
    }
    const double rq = m.quadratic_form(x);
    const double res = residual_of(m, rq, x);
    v = x;
    if (res < tol) break;
    delta *= 4.0;
  }

  orient_positive(v);
  out.vector = std::move(v);
  out.value = m.quadratic_form(out.vector);
  out.residual = residual_of(m, out.value, out.vector);
  if (!(out.residual < tol)) throw std::runtime_error("max_eigenpair: inverse iteration did not converge");
  return out;
}

SymmetricEigen jacobi_symmetric(std::span<const double> input, std::size_t n) {
  if (input.size() != n * n) throw std::invalid_argument("jacobi_symmetric: size mismatch");
  std::vector<double> a(input.begin(), input.end());
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  auto at = [n](std::vector<double>& m, std::size_t r, std::size_t c) -> double& { return m[r * n + c]; };

  double frob = 0.0;
  for (double x : a) frob += x * x;
  frob = std::sqrt(frob);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += at(a, p, q) * at(a, p, q);
    if (std::sqrt(2.0 * off) <= 1e-15 * frob || off == 0.0) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(a, p, q);
        if (apq == 0.0) continue;
        const double app = at(a, p, p);
        const double aqq = at(a, q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(a, k, p);
          const double akq = at(a, k, q);
          at(a, k, p) = c * akp - s * akq;
          at(a, k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(a, p, k);
          const double aqk = at(a, q, k);
          at(a, p, k) = c * apk - s * aqk;
          at(a, q, k) = s * apk + c * aqk;
        }
        at(a, p, q) = 0.0;
        at(a, q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = at(v, k, p);
          const double vkq = at(v, k, q);
          at(v, k, p) = c * vkp - s * vkq;
          at(v, k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a[order[c] * n + order[c]];
    for (std::size_t r = 0; r < n; ++r) out.vectors[r * n + c] = v[r * n + order[c]];
  }
  return out;
}

HermitianEigen dense_hermitian_eigen(const ComplexMatrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) throw std::domain_error("dense_hermitian_eigen: need a non-empty square matrix");
  const std::size_t n = h.rows();
  const double scale = std::max(1.0, h.max_abs());
  if (!is_hermitian(h, 1e-10 * scale)) throw std::domain_error("dense_hermitian_eigen: matrix is not Hermitian");

  const std::size_t n2 = 2 * n;
  std::vector<double> s(n2 * n2);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      // Symmetrize so the embedding is exactly symmetric.
      const Complex z = 0.5 * (h(r, c) + std::conj(h(c, r)));
      s[r * n2 + c] = z.real();
      s[(r + n) * n2 + (c + n)] = z.real();
      s[r * n2 + (c + n)] = -z.imag();
      s[(r + n) * n2 + c] = z.imag();
    }
  const SymmetricEigen real = jacobi_symmetric(s, n2);

  // Each eigenvalue appears twice in the embedding; (u; v) and (-v; u) map to z and i z.
  // Within each cluster pick the candidates with the largest component outside the
  // span already chosen.
  std::vector<std::vector<Complex>> chosen;
  std::vector<double> chosen_values;
  const double cluster_tol = 1e-12 * scale * static_cast<double>(n);
  std::size_t start = 0;
  while (start < n2) {
    std::size_t end = start + 1;
    while (end < n2 && real.values[end] - real.values[end - 1] <= cluster_tol) ++end;
    std::vector<std::vector<Complex>> candidates;
    for (std::size_t c = start; c < end; ++c) {
      std::vector<Complex> z(n);
      for (std::size_t r = 0; r < n; ++r) z[r] = Complex(real.vectors[r * n2 + c], real.vectors[(r + n) * n2 + c]);
      candidates.push_back(std::move(z));
    }
    const std::size_t want = (end - start) / 2 + ((end - start) % 2);
    for (std::size_t pick = 0; pick < want && chosen.size() < n; ++pick) {
      double best_norm = -1.0;
      std::vector<Complex> best;
      for (const auto& cand : candidates) {
        std::vector<Complex> w = cand;
        for (int pass = 0; pass < 2; ++pass)
          for (const auto& q : chosen) {
            const Complex proj = inner_product(q, w);
            for (std::size_t r = 0; r < n; ++r) w[r] -= proj * q[r];
          }
        double nw = 0.0;
        for (const auto& x : w) nw += std::norm(x);
        nw = std::sqrt(nw);
        if (nw > best_norm) {
          best_norm = nw;
          best = std::move(w);
        }
      }
      for (auto& x : best) x /= best_norm;
      const auto hb = h.apply(best);
      chosen_values.push_back(inner_product(best, hb).real());
      chosen.push_back(std::move(best));
    }
    start = end;
  }
  if (chosen.size() != n) throw std::runtime_error("dense_hermitian_eigen: failed to extract eigenvectors");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return chosen_values[i] < chosen_values[j]; });
  HermitianEigen out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = chosen_values[order[c]];
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = chosen[order[c]][r];
  }
  return out;
}

}  // namespace qtradeoff::eigen
