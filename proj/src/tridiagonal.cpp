#include "qtradeoff/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qtradeoff {

SymmetricTridiagonal::SymmetricTridiagonal(std::vector<double> d, std::vector<double> e)
    : diag(std::move(d)), offdiag(std::move(e)) {
  if (diag.empty() ? !offdiag.empty() : offdiag.size() + 1 != diag.size())
    throw std::invalid_argument("SymmetricTridiagonal: offdiag must have length dim-1");
}

double SymmetricTridiagonal::quadratic_form(std::span<const double> a) const {
  if (a.size() != dim()) throw std::invalid_argument("quadratic_form: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += diag[i] * a[i] * a[i];
  for (std::size_t i = 0; i + 1 < a.size(); ++i) s += 2.0 * offdiag[i] * a[i] * a[i + 1];
  return s;
}

std::vector<double> SymmetricTridiagonal::apply(std::span<const double> v) const {
  if (v.size() != dim()) throw std::invalid_argument("apply: size mismatch");
  const std::size_t n = dim();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * v[i];
    if (i > 0) s += offdiag[i - 1] * v[i - 1];
    if (i + 1 < n) s += offdiag[i] * v[i + 1];
    out[i] = s;
  }
  return out;
}

double SymmetricTridiagonal::max_abs() const {
  double m = 0.0;
  for (double d : diag) m = std::max(m, std::abs(d));
  for (double e : offdiag) m = std::max(m, std::abs(e));
  return m;
}

std::vector<double> SymmetricTridiagonal::to_dense() const {
  const std::size_t n = dim();
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) out[i * n + i] = diag[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    out[i * n + i + 1] = offdiag[i];
    out[(i + 1) * n + i] = offdiag[i];
  }
  return out;
}

SymmetricTridiagonal blend(const SymmetricTridiagonal& a, const SymmetricTridiagonal& b, double x) {
  if (a.dim() != b.dim()) throw std::invalid_argument("blend: dimension mismatch");
  SymmetricTridiagonal out = a;
  for (std::size_t i = 0; i < a.diag.size(); ++i) out.diag[i] = (1.0 - x) * a.diag[i] + x * b.diag[i];
  for (std::size_t i = 0; i < a.offdiag.size(); ++i) out.offdiag[i] = (1.0 - x) * a.offdiag[i] + x * b.offdiag[i];
  return out;
}

}  // namespace qtradeoff
