#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qtradeoff {

/// Real symmetric tridiagonal matrix: diag has length n, offdiag length n-1.
struct SymmetricTridiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag;

  SymmetricTridiagonal() = default;
  SymmetricTridiagonal(std::vector<double> d, std::vector<double> e);

  std::size_t dim() const { return diag.size(); }

  /// a^T M a = sum diag_i a_i^2 + 2 sum offdiag_i a_i a_{i+1}.
  double quadratic_form(std::span<const double> a) const;

  std::vector<double> apply(std::span<const double> v) const;

  double max_abs() const;

  /// Dense row-major copy.
  std::vector<double> to_dense() const;
};

/// (1 - x) a + x b, entrywise; a and b must have equal dimension.
SymmetricTridiagonal blend(const SymmetricTridiagonal& a, const SymmetricTridiagonal& b, double x);

}  // namespace qtradeoff
