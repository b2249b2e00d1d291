#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qtradeoff/complex_matrix.hpp"
#include "qtradeoff/half_integer.hpp"
#include "qtradeoff/random.hpp"

namespace qtradeoff::spin {

/// |j;m> basis with m ascending; index(m) = (twice_m + two_j) / 2.
class SpinBasis {
 public:
  explicit SpinBasis(int two_j);

  int two_j() const { return two_j_; }
  HalfInteger j() const { return HalfInteger::from_twice(two_j_); }
  std::size_t dim() const { return static_cast<std::size_t>(two_j_) + 1; }

  /// Throws std::domain_error for an invalid label.
  std::size_t index(HalfInteger m) const;
  HalfInteger label(std::size_t index) const;

 private:
  int two_j_;
};

struct SpinOperators {
  ComplexMatrix jx, jy, jz, jplus, jminus;
};

/// Spin-j matrices in the m-ascending basis.
SpinOperators spin_operators(int two_j);

/// Euler angles (phi, theta, zeta) of U = exp(-i phi Jz) exp(-i theta Jy) exp(-i zeta Jz).
struct EulerAngles {
  double phi = 0.0;
  double theta = 0.0;
  double zeta = 0.0;

  /// Bloch direction (sin theta cos phi, sin theta sin phi, cos theta).
  std::array<double, 3> direction() const;
};

/// Rotation matrices for one spin value. The J^y eigendecomposition is computed
/// once; d(theta) = V exp(-i theta Lambda) V^dagger.
class WignerRotator {
 public:
  explicit WignerRotator(int two_j);

  int two_j() const { return two_j_; }

  ComplexMatrix small_d(double theta) const;
  ComplexMatrix rotation(const EulerAngles& omega) const;

  /// Column of rotation(omega) belonging to m = j, i.e. U(omega)|j;j>.
  std::vector<Complex> rotated_highest_weight(const EulerAngles& omega) const;

 private:
  int two_j_;
  std::vector<double> jy_values_;
  ComplexMatrix jy_vectors_;
};

ComplexMatrix wigner_rotation(int two_j, const EulerAngles& omega);

/// phi, zeta uniform on [0, 2 pi); cos theta uniform on [-1, 1].
EulerAngles haar_sample(Rng& rng);

/// Number of spin-j' blocks among N qubits: C(N, j+j') - C(N, j+j'+1).
/// Exact up to N = 64; throws std::domain_error for invalid pairs or N > 64.
std::uint64_t multiplicity(int n_qubits, int two_jprime);

/// Exact binomial coefficient; throws std::overflow_error if it does not fit in 64 bits.
std::uint64_t binomial(int n, int k);

}  // namespace qtradeoff::spin
