#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qtradeoff/complex_matrix.hpp"
#include "qtradeoff/random.hpp"
#include "qtradeoff/tradeoff_core.hpp"

namespace qtradeoff::verify {

/// Operator on the (2j+1)-dimensional symmetric subspace H_j.
struct OperationElement {
  int two_j = 0;
  ComplexMatrix a;

  OperationElement(int two_j, ComplexMatrix a);

  /// Tr(A^dagger A)
  double norm_squared() const;
};

/// A with <j; m-k|A|j; m> = a^k_m and zeros elsewhere.
OperationElement stripe_to_operator(const core::StripeVector& a);

struct FG {
  double f = 0.0;
  double g = 0.0;
};

/// f(A) = Tr(Jx A Jx A^+ + Jy A Jy A^+ + Jz A Jz A^+) / Tr(A^+ A) and
/// g(A) = Tr(A^+ A Jz) / Tr(A^+ A), the form valid once the guess vector
/// points along +z. Throws std::domain_error for A = 0.
FG analytic_fg(const OperationElement& a);

/// Same traces for B : H_j -> H_j', with J_j' acting on the left of B.
FG analytic_fg_block(const ComplexMatrix& b, int two_jprime, int two_j);

/// Vector of traces Tr(A^+ A J^c) and the guess direction derived from it.
struct GuessVector {
  double ax = 0.0;
  double ay = 0.0;
  double az = 0.0;
  bool random_guess = false;  // norm below kGuessZeroTol

  double norm() const;
  /// Unit vector along (ax, ay, az); (0, 0, 0) for a random guess.
  std::array<double, 3> direction() const;
};

inline constexpr double kGuessZeroTol = 1e-12;

GuessVector optimal_guess(const OperationElement& a);

/// |A_vec| / Tr(A^+ A): g without assuming alignment.
double unaligned_g(const OperationElement& a);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample std deviation / sqrt(samples)
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  /// |mean - expected| <= sigmas * std_error + 1e-12.
  bool agrees_with(double expected, double sigmas = 3.0) const;
};

/// Welford accumulator.
class MeanAccumulator {
 public:
  void add(double x);
  MonteCarloEstimate estimate(std::uint64_t seed) const;
  std::size_t count() const { return n_; }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct FGEstimate {
  MonteCarloEstimate F;
  MonteCarloEstimate G;
};

inline constexpr std::size_t kBatchSize = 10000;
inline constexpr double kSigmaFloor = 1e-12;

/// Raw-definition estimate of (F, G) for the covariant operation
/// A_Xi = sqrt(2j+1) U(Xi) A U^+(Xi). Input states Omega and outcomes Xi are
/// drawn Haar-uniformly and every sample is weighted by p_Xi(Omega).
/// `zeta_offset` is added to every sampled input zeta. Requires samples >= 1000.
FGEstimate estimate_F_G(const OperationElement& a, std::size_t samples, std::uint64_t seed, double zeta_offset = 0.0);

/// Entrywise Monte-Carlo estimate of a matrix integral against its closed form.
struct MatrixCheck {
  ComplexMatrix estimate;
  ComplexMatrix expected;
  std::vector<double> std_error_re;  // row-major
  std::vector<double> std_error_im;
  double max_deviation = 0.0;
  double max_std_error = 0.0;
  /// Largest |deviation| / std_error over entries whose std error exceeds
  /// kSigmaFloor (zero-variance entries are pure roundoff).
  double max_sigma_ratio = 0.0;
  std::size_t samples = 0;
  /// Real and imaginary parts with std error above kSigmaFloor.
  std::size_t components = 0;

  /// Every real and imaginary part within sigmas * std_error + 1e-12.
  bool within(double sigmas = 3.0) const;
};

/// Per-component z threshold giving `m` independent two-sided tests the same
/// joint false-alarm rate as one test at `single` sigmas (Sidak correction).
double family_sigmas(std::size_t m, double single = 3.0);

/// K_tau = int dOmega k_tau(Omega) U|j;j><j;j|U^+ against J^-/(j+1)(2j+1) (tau=+1),
/// J^+/(j+1)(2j+1) (tau=-1), Jz/(j+1)(2j+1) (tau=0).
MatrixCheck k_tau_check(int n_qubits, int tau, std::size_t samples, std::uint64_t seed);

/// int dXi A_Xi^+ A_Xi against the identity on H_j. Requires Tr(A^+ A) = 1.
MatrixCheck completeness_check(const OperationElement& a, std::size_t samples, std::uint64_t seed);

/// Lifts B : H_j -> H_j' (entries real and nonnegative, g >= 0) to H_j by
/// <j;n|A'|j;m> = <j'; n-j+j'|B|j;m> for n >= j - 2j', zero otherwise.
OperationElement promote(const ComplexMatrix& b, int two_j, int two_jprime);

/// Random (2j'+1) x (2j+1) block with nonnegative real entries, unit trace norm and g >= 0.
ComplexMatrix random_nonnegative_block(int two_j, int two_jprime, Rng& rng);

struct PromotionCheck {
  FG original;
  FG promoted;
  double trace_original = 0.0;
  double trace_promoted = 0.0;
  double f_lower_bound = 0.0;  // f_j'(B) + (j - j') g(B)
  bool holds(double tol = 1e-10) const;
};

PromotionCheck check_promotion(const ComplexMatrix& b, int two_j, int two_jprime);

/// One line of a verification report.
struct CheckResult {
  std::string name;
  bool hard = true;  // false: conjecture, reported only
  bool passed = true;
  std::vector<std::pair<std::string, double>> metrics;
};

struct SuiteOptions {
  int n_qubits = 2;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
};

/// Path equivalence, K_tau, completeness, promotion, end-to-end (F, G),
/// zeta independence, plus the conjecture reports. Requires N <= 8.
std::vector<CheckResult> run_suite(const SuiteOptions& opts);

}  // namespace qtradeoff::verify
