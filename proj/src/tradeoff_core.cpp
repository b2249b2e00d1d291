#include "qtradeoff/tradeoff_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qtradeoff::core {

StripeIndex::StripeIndex(int two_j, int k) : two_j_(two_j), k_(k) {
  if (two_j < 0) throw std::domain_error("StripeIndex: two_j must be nonnegative");
  if (std::abs(k) > two_j) throw std::domain_error("StripeIndex: |k| must not exceed 2j");
}

HalfInteger StripeIndex::lower() const { return -j() + std::max(0, k_); }

HalfInteger StripeIndex::upper() const { return j() + std::min(k_, 0); }

std::size_t StripeIndex::length() const { return static_cast<std::size_t>(two_j_ + 1 - std::abs(k_)); }

std::size_t StripeIndex::position(HalfInteger m) const {
  const HalfInteger lo = lower();
  if (m < lo || m > upper() || (m - lo).twice() % 2 != 0)
    throw std::domain_error("StripeIndex: m=" + m.str() + " outside stripe k=" + std::to_string(k_));
  return static_cast<std::size_t>((m - lo).twice() / 2);
}

HalfInteger StripeIndex::label(std::size_t position) const {
  if (position >= length()) throw std::domain_error("StripeIndex: position out of range");
  return lower() + static_cast<int>(position);
}

StripeVector::StripeVector(StripeIndex idx, std::vector<double> v, bool canonical_orientation)
    : index(idx), values(std::move(v)), canonical(canonical_orientation) {
  if (values.size() != index.length()) throw std::domain_error("StripeVector: length must be 2j+1-|k|");
  if (canonical && std::any_of(values.begin(), values.end(), [](double x) { return x < 0.0; }))
    throw std::domain_error("StripeVector: canonical stripes have nonnegative entries");
}

double StripeVector::norm_squared() const {
  double s = 0.0;
  for (double x : values) s += x * x;
  return s;
}

bool StripeVector::is_normalized(double tol) const { return std::abs(norm_squared() - 1.0) < tol; }

StripeVector random_unit_stripe(int two_j, int k, Rng& rng, bool canonical) {
  const StripeIndex idx(two_j, k);
  std::vector<double> v(idx.length());
  double s = 0.0;
  do {
    s = 0.0;
    for (double& x : v) {
      x = canonical ? std::abs(rng.normal()) : rng.normal();
      s += x * x;
    }
  } while (s == 0.0);
  const double inv = 1.0 / std::sqrt(s);
  for (double& x : v) x *= inv;
  return StripeVector(idx, std::move(v), canonical);
}

double gamma(int two_j, int k, HalfInteger m) {
  const StripeIndex idx(two_j, k);
  if (m < idx.lower() || m > idx.upper() - 1 || (m - idx.lower()).twice() % 2 != 0)
    throw std::domain_error("gamma: m=" + m.str() + " outside [l_k, u_k - 1]");
  // Doubled factors stay exact integers.
  const int tj = two_j;
  const int tm = m.twice();
  const int tk = 2 * k;
  const long long f1 = tj - tm;
  const long long f2 = tj + tm + 2;
  const long long f3 = tj + tk - tm;
  const long long f4 = tj - tk + tm + 2;
  if (f1 < 0 || f2 < 0 || f3 < 0 || f4 < 0) throw std::logic_error("gamma: negative factor");
  return 0.25 * std::sqrt(static_cast<double>(f1 * f2) * static_cast<double>(f3 * f4));
}

StripeMatrices build_matrices(int two_j, int k) {
  if (k < 0 || k > two_j) throw std::domain_error("build_matrices: need 0 <= k <= 2j");
  const StripeIndex idx(two_j, k);
  const std::size_t n = idx.length();
  std::vector<double> fd(n), fe(n - 1), gd(n), ge(n - 1, 0.0);
  for (std::size_t p = 0; p < n; ++p) {
    const HalfInteger m = idx.label(p);
    fd[p] = m.value() * (m.value() - k);
    gd[p] = m.value();
    if (p + 1 < n) fe[p] = 0.5 * gamma(two_j, k, m);
  }
  return {SymmetricTridiagonal(std::move(fd), std::move(fe)), SymmetricTridiagonal(std::move(gd), std::move(ge))};
}

StripeForms quadratic_forms(const StripeVector& a) {
  const StripeIndex& idx = a.index;
  const double k = idx.k();
  StripeForms out;
  HalfInteger m = idx.lower();
  for (std::size_t p = 0; p < a.values.size(); ++p, m += 1) {
    const double am = a.values[p];
    out.f += m.value() * (m.value() - k) * am * am;
    out.g += m.value() * am * am;
    out.h += am * am;
    if (p + 1 < a.values.size()) out.f += gamma(idx.two_j(), idx.k(), m) * am * a.values[p + 1];
  }
  return out;
}

std::vector<int> relevant_k_range(int n_qubits) {
  if (n_qubits < 1) throw std::domain_error("relevant_k_range: N must be positive");
  std::vector<int> ks;
  // k < sqrt(N)  <=>  k*k < N
  for (int k = 0; k * k < n_qubits && k <= n_qubits; ++k) ks.push_back(k);
  return ks;
}

double fk_upper_bound(int two_j, int k) {
  const double j = 0.5 * two_j;
  return j * (j + 1.0) - 0.5 * static_cast<double>(k) * k;
}

MirroredForms negative_k_shift(const StripeVector& a) {
  if (a.index.k() >= 0) throw std::domain_error("negative_k_shift: requires k < 0");
  const StripeForms here = quadratic_forms(a);
  const StripeVector mirrored(StripeIndex(a.index.two_j(), -a.index.k()), a.values, a.canonical);
  const StripeForms there = quadratic_forms(mirrored);
  return {{here.f, there.f}, {here.g, there.g}};
}

}  // namespace qtradeoff::core
