#include "qtradeoff/spin_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qtradeoff/eigensolve.hpp"

namespace qtradeoff::spin {

SpinBasis::SpinBasis(int two_j) : two_j_(two_j) {
  if (two_j < 0) throw std::domain_error("SpinBasis: two_j must be nonnegative");
}

std::size_t SpinBasis::index(HalfInteger m) const {
  if (!is_valid_label(j(), m)) throw std::domain_error("SpinBasis: invalid label m=" + m.str() + " for j=" + j().str());
  return static_cast<std::size_t>((m.twice() + two_j_) / 2);
}

HalfInteger SpinBasis::label(std::size_t index) const {
  if (index >= dim()) throw std::domain_error("SpinBasis: index out of range");
  return HalfInteger::from_twice(2 * static_cast<int>(index) - two_j_);
}

SpinOperators spin_operators(int two_j) {
  const SpinBasis basis(two_j);
  const std::size_t n = basis.dim();
  const double j = 0.5 * two_j;
  SpinOperators ops{ComplexMatrix(n, n), ComplexMatrix(n, n), ComplexMatrix(n, n), ComplexMatrix(n, n),
                    ComplexMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double m = basis.label(i).value();
    ops.jz(i, i) = m;
    if (i + 1 < n) {
      // <m+1|J+|m> = sqrt((j-m)(j+m+1))
      const double c = std::sqrt((j - m) * (j + m + 1.0));
      ops.jplus(i + 1, i) = c;
      ops.jminus(i, i + 1) = c;
    }
  }
  ops.jx = (ops.jplus + ops.jminus) * Complex(0.5, 0.0);
  ops.jy = (ops.jplus - ops.jminus) * Complex(0.0, -0.5);
  return ops;
}

std::array<double, 3> EulerAngles::direction() const {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

WignerRotator::WignerRotator(int two_j) : two_j_(two_j) {
  const auto ops = spin_operators(two_j);
  auto eig = eigen::dense_hermitian_eigen(ops.jy);
  jy_values_ = std::move(eig.values);
  jy_vectors_ = std::move(eig.vectors);
}

ComplexMatrix WignerRotator::small_d(double theta) const {
  const std::size_t n = jy_values_.size();
  ComplexMatrix d(n, n);
  std::vector<Complex> phases(n);
  for (std::size_t l = 0; l < n; ++l) phases[l] = std::polar(1.0, -theta * jy_values_[l]);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Complex s = 0.0;
      for (std::size_t l = 0; l < n; ++l) s += jy_vectors_(r, l) * phases[l] * std::conj(jy_vectors_(c, l));
      d(r, c) = s;
    }
  return d;
}

ComplexMatrix WignerRotator::rotation(const EulerAngles& omega) const {
  ComplexMatrix u = small_d(omega.theta);
  const std::size_t n = u.rows();
  for (std::size_t r = 0; r < n; ++r) {
    const double mr = 0.5 * (2.0 * static_cast<double>(r) - two_j_);
    for (std::size_t c = 0; c < n; ++c) {
      const double mc = 0.5 * (2.0 * static_cast<double>(c) - two_j_);
      u(r, c) *= std::polar(1.0, -omega.phi * mr - omega.zeta * mc);
    }
  }
  return u;
}

std::vector<Complex> WignerRotator::rotated_highest_weight(const EulerAngles& omega) const {
  const std::size_t n = jy_values_.size();
  const std::size_t top = n - 1;
  std::vector<Complex> col(n);
  const double j = 0.5 * two_j_;
  std::vector<Complex> weights(n);
  for (std::size_t l = 0; l < n; ++l)
    weights[l] = std::polar(1.0, -omega.theta * jy_values_[l]) * std::conj(jy_vectors_(top, l));
  for (std::size_t r = 0; r < n; ++r) {
    Complex s = 0.0;
    for (std::size_t l = 0; l < n; ++l) s += jy_vectors_(r, l) * weights[l];
    const double mr = 0.5 * (2.0 * static_cast<double>(r) - two_j_);
    col[r] = s * std::polar(1.0, -omega.phi * mr - omega.zeta * j);
  }
  return col;
}

ComplexMatrix wigner_rotation(int two_j, const EulerAngles& omega) { return WignerRotator(two_j).rotation(omega); }

EulerAngles haar_sample(Rng& rng) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  EulerAngles out;
  out.phi = two_pi * rng.uniform();
  out.theta = std::acos(std::clamp(2.0 * rng.uniform() - 1.0, -1.0, 1.0));
  out.zeta = two_pi * rng.uniform();
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (n < 0) throw std::domain_error("binomial: negative n");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (int i = 1; i <= k; ++i) {
    // C(n, i) = C(n, i-1) * (n - i + 1) / i is exact at every step.
    c = c * static_cast<unsigned __int128>(n - i + 1) / static_cast<unsigned __int128>(i);
    if (c > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("binomial: result exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(c);
}

std::uint64_t multiplicity(int n_qubits, int two_jprime) {
  if (n_qubits < 1) throw std::domain_error("multiplicity: N must be positive");
  if (n_qubits > 64) throw std::domain_error("multiplicity: exact arithmetic supported only up to N = 64");
  if (two_jprime < 0 || two_jprime > n_qubits || (n_qubits - two_jprime) % 2 != 0)
    throw std::domain_error("multiplicity: need 0 <= j' <= N/2 with N/2 - j' integer");
  // j + j' = (N + 2j') / 2
  const int upper = (n_qubits + two_jprime) / 2;
  return binomial(n_qubits, upper) - binomial(n_qubits, upper + 1);
}

}  // namespace qtradeoff::spin
