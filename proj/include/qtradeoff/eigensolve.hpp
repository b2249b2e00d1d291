#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qtradeoff/complex_matrix.hpp"
#include "qtradeoff/tridiagonal.hpp"

namespace qtradeoff::eigen {

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;  // unit norm, largest-magnitude entry positive
  double residual = 0.0;       // ||M v - value v||_2
  bool degenerate = false;     // top two eigenvalues closer than gap_tol
  double gap = 0.0;            // value minus the second-largest eigenvalue (0 for dim 1)
};

/// Residual bound every returned EigenPair satisfies.
double residual_tolerance(const SymmetricTridiagonal& m);

/// Number of eigenvalues strictly below `shift` (Sturm sequence count).
std::size_t sturm_count(const SymmetricTridiagonal& m, double shift);

/// Eigenvalue with ascending index `index` (0 = smallest), by bisection.
double bisect_eigenvalue(const SymmetricTridiagonal& m, std::size_t index);

/// All eigenvalues in ascending order, by bisection.
std::vector<double> tridiagonal_spectrum(const SymmetricTridiagonal& m);

/// Algebraically largest eigenvalue and its eigenvector.
///
/// The eigenvalue comes from Sturm bisection; the vector from inverse iteration
/// with a shift placed just above it, so the shifted system is definite and the
/// LDL^T factorization needs no pivoting. Throws std::domain_error on non-finite
/// entries or an empty matrix.
EigenPair max_eigenpair(const SymmetricTridiagonal& m);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column i belongs to values[i]
};

/// Full spectrum of a Hermitian matrix via cyclic Jacobi on the real
/// 2n x 2n embedding [[Re, -Im], [Im, Re]]. Throws std::domain_error when
/// the input is not Hermitian within 1e-10 (scaled by its max entry).
HermitianEigen dense_hermitian_eigen(const ComplexMatrix& h);

struct SymmetricEigen {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // row-major n x n, column i belongs to values[i]
};

/// Cyclic Jacobi for a dense real symmetric matrix given row-major.
SymmetricEigen jacobi_symmetric(std::span<const double> a, std::size_t n);

/// Deviation of the F^k spectrum from the set {-nu(nu-1)/2 + 2 j nu - j^2}.
/// Report only: the set is an empirical observation, not a theorem.
struct SpectrumReport {
  int two_j = 0;
  int k = 0;
  std::vector<double> spectrum;     // ascending, computed
  std::vector<double> conjectured;  // ascending
  double max_deviation = 0.0;
  double top_eigenvalue = 0.0;
  double top_conjectured = 0.0;  // j(j+1) - k(k+1)/2
  double general_bound = 0.0;    // j(j+1) - k^2/2
};

SpectrumReport fk_spectrum_check(int two_j, int k);

}  // namespace qtradeoff::eigen
