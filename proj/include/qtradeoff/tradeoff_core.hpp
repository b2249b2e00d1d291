#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qtradeoff/half_integer.hpp"
#include "qtradeoff/random.hpp"
#include "qtradeoff/tridiagonal.hpp"

namespace qtradeoff::core {

/// The k-th diagonal stripe <j; m-k| A |j; m> of an operator on H_j, for
/// m = lower()..upper(). Requires |k| <= 2j.
class StripeIndex {
 public:
  StripeIndex(int two_j, int k);

  int two_j() const { return two_j_; }
  int k() const { return k_; }
  HalfInteger j() const { return HalfInteger::from_twice(two_j_); }

  /// l_k = -j + max(0, k)
  HalfInteger lower() const;
  /// u_k = j + min(k, 0)
  HalfInteger upper() const;
  /// 2j + 1 - |k|
  std::size_t length() const;

  /// Stripe position of label m; throws std::domain_error outside [lower, upper].
  std::size_t position(HalfInteger m) const;
  HalfInteger label(std::size_t position) const;

 private:
  int two_j_;
  int k_;
};

struct StripeVector {
  StripeIndex index;
  std::vector<double> values;
  /// False for vectors deliberately carrying negative entries.
  bool canonical = true;

  StripeVector(StripeIndex idx, std::vector<double> v, bool canonical_orientation = true);

  double norm_squared() const;
  bool is_normalized(double tol = 1e-12) const;
};

/// Unit stripe vector with iid |N(0,1)| entries (or signed when `canonical` is false).
StripeVector random_unit_stripe(int two_j, int k, Rng& rng, bool canonical = true);

/// gamma_m^k = sqrt((j-m)(j+m+1)(j+k-m)(j-k+m+1)) for l_k <= m <= u_k - 1.
double gamma(int two_j, int k, HalfInteger m);

struct StripeMatrices {
  SymmetricTridiagonal f;
  SymmetricTridiagonal g;
};

/// F^k: diagonal m(m-k), off-diagonal gamma_m^k / 2. G^k: diagonal m.
/// Requires 0 <= k <= 2j.
StripeMatrices build_matrices(int two_j, int k);

struct StripeForms {
  double f = 0.0;
  double g = 0.0;
  double h = 0.0;
};

/// Direct summation of f^k, g^k, h^k; independent of build_matrices.
StripeForms quadratic_forms(const StripeVector& a);

/// {0, 1, ..., ceil(sqrt(N)) - 1}, i.e. the k with 0 <= k < sqrt(N).
std::vector<int> relevant_k_range(int n_qubits);

/// j(j+1) - k^2/2
double fk_upper_bound(int two_j, int k);

struct MirroredForms {
  std::pair<double, double> f;  // (f^k(a), f^{-k}(a) with the same entries)
  std::pair<double, double> g;  // (g^k(a), g^{-k}(a) with the same entries)
};

/// Evaluates a k < 0 stripe and its mirror at -k; f agrees and g shifts by -k.
MirroredForms negative_k_shift(const StripeVector& a);

}  // namespace qtradeoff::core
