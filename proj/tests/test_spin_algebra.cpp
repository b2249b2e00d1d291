#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qtradeoff/spin_algebra.hpp"

using namespace qtradeoff;
using namespace qtradeoff::spin;

namespace {

const Complex I{0.0, 1.0};

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

}  // namespace

TEST_CASE("spin-1/2 operators are half the Pauli matrices") {
  const auto ops = spin_operators(1);
  // basis order (m=-1/2, m=+1/2)
  CHECK(std::abs(ops.jx(0, 1) - 0.5) < 1e-15);
  CHECK(std::abs(ops.jx(1, 0) - 0.5) < 1e-15);
  CHECK(std::abs(ops.jx(0, 0)) < 1e-15);
  CHECK(std::abs(ops.jy(1, 0) + 0.5 * I) < 1e-15);  // <up|Jy|down> = -i/2
  CHECK(std::abs(ops.jy(0, 1) - 0.5 * I) < 1e-15);
  CHECK(std::abs(ops.jz(0, 0) + 0.5) < 1e-15);
  CHECK(std::abs(ops.jz(1, 1) - 0.5) < 1e-15);
}

TEST_CASE("spin-1 Jz is diag(-1, 0, 1)") {
  const auto ops = spin_operators(2);
  const Complex expected[] = {-1.0, 0.0, 1.0};
  CHECK(max_abs_diff(ops.jz, ComplexMatrix::diagonal(expected)) < 1e-15);
}

TEST_CASE("commutation relations hold up to two_j = 20") {
  for (int tj = 0; tj <= 20; ++tj) {
    const auto o = spin_operators(tj);
    CAPTURE(tj);
    CHECK(max_abs_diff(commutator(o.jx, o.jy), I * o.jz) < 1e-11);
    CHECK(max_abs_diff(commutator(o.jy, o.jz), I * o.jx) < 1e-11);
    CHECK(max_abs_diff(commutator(o.jz, o.jx), I * o.jy) < 1e-11);
  }
  const auto o = spin_operators(4);
  CHECK(max_abs_diff(commutator(o.jx, o.jy), I * o.jz) < 1e-12);
}

TEST_CASE("ladder operators annihilate the extreme states") {
  for (int tj = 1; tj <= 9; ++tj) {
    const auto o = spin_operators(tj);
    const std::size_t top = static_cast<std::size_t>(tj);
    for (std::size_t r = 0; r <= top; ++r) {
      CHECK(o.jplus(r, top) == Complex{});
      CHECK(o.jminus(r, 0) == Complex{});
    }
  }
}

TEST_CASE("SpinBasis indexing") {
  SpinBasis b(3);
  CHECK(b.dim() == 4);
  CHECK(b.index(HalfInteger::from_twice(-3)) == 0);
  CHECK(b.index(HalfInteger::from_twice(3)) == 3);
  CHECK(b.label(1) == HalfInteger::from_twice(-1));
  CHECK_THROWS_AS(b.index(HalfInteger::from_twice(2)), std::domain_error);
  CHECK_THROWS_AS(b.index(HalfInteger::from_twice(5)), std::domain_error);
}

TEST_CASE("zero rotation is the identity") {
  for (int tj : {1, 2, 5}) CHECK(max_abs_diff(wigner_rotation(tj, {}), ComplexMatrix::identity(tj + 1)) < 1e-14);
}

TEST_CASE("d^{1/2}(pi) in m-ascending order") {
  const auto d = wigner_rotation(1, {0.0, std::numbers::pi, 0.0});
  SpinBasis b(1);
  const auto up = b.index(HalfInteger::from_twice(1));
  const auto down = b.index(HalfInteger::from_twice(-1));
  // <up|d|down> = -1, <down|d|up> = +1
  CHECK(std::abs(d(up, down) + 1.0) < 1e-14);
  CHECK(std::abs(d(down, up) - 1.0) < 1e-14);
  CHECK(std::abs(d(up, up)) < 1e-14);
  CHECK(std::abs(d(down, down)) < 1e-14);
}

TEST_CASE("rotations are unitary and compose from their Euler factors") {
  Rng rng(11);
  for (int tj : {1, 2, 6, 13}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto w = haar_sample(rng);
      const auto u = wigner_rotation(tj, w);
      CHECK(is_unitary(u, 1e-10));
      const auto composed = wigner_rotation(tj, {w.phi, 0, 0}) * wigner_rotation(tj, {0, w.theta, 0}) *
                            wigner_rotation(tj, {0, 0, w.zeta});
      CHECK(max_abs_diff(u, composed) < 1e-12);
    }
  }
}

TEST_CASE("rotated highest weight is the last column of U") {
  Rng rng(5);
  WignerRotator rot(4);
  const auto w = haar_sample(rng);
  const auto u = rot.rotation(w);
  const auto v = rot.rotated_highest_weight(w);
  for (std::size_t r = 0; r < 5; ++r) CHECK(std::abs(v[r] - u(r, 4)) < 1e-14);
}

TEST_CASE("rotation maps Jz to n.J") {
  Rng rng(17);
  const int tj = 3;
  const auto o = spin_operators(tj);
  for (int t = 0; t < 5; ++t) {
    const auto w = haar_sample(rng);
    const auto u = wigner_rotation(tj, w);
    const auto n = w.direction();
    const auto nj = o.jx * Complex{n[0]} + o.jy * Complex{n[1]} + o.jz * Complex{n[2]};
    CHECK(max_abs_diff(u * o.jz * u.adjoint(), nj) < 1e-12);
  }
}

TEST_CASE("Haar samples have zero mean cos(theta)") {
  Rng rng(2024);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += std::cos(haar_sample(rng).theta);
  CHECK(std::abs(sum / n) < 3.0 / std::sqrt(n / 3.0));
}

TEST_CASE("Haar sampling is deterministic under a fixed seed") {
  Rng a(99);
  Rng b(99);
  for (int i = 0; i < 10; ++i) {
    const auto x = haar_sample(a);
    const auto y = haar_sample(b);
    CHECK(x.phi == y.phi);
    CHECK(x.theta == y.theta);
    CHECK(x.zeta == y.zeta);
  }
}

TEST_CASE("multiplicity examples") {
  CHECK(multiplicity(2, 2) == 1);
  CHECK(multiplicity(2, 0) == 1);
  CHECK(multiplicity(3, 1) == 2);
  CHECK(multiplicity(3, 3) == 1);
  CHECK_THROWS_AS(multiplicity(3, 2), std::domain_error);  // parity mismatch
  CHECK_THROWS_AS(multiplicity(2, 4), std::domain_error);  // j' > j
  CHECK_THROWS_AS(multiplicity(0, 0), std::domain_error);
  CHECK_THROWS_AS(multiplicity(65, 1), std::domain_error);
}

TEST_CASE("multiplicity dimension and block counts are exact") {
  for (int n = 1; n <= 64; ++n) {
    unsigned __int128 dim = 0;
    std::uint64_t blocks = 0;
    for (int tjp = n % 2; tjp <= n; tjp += 2) {
      const auto mu = multiplicity(n, tjp);
      dim += static_cast<unsigned __int128>(mu) * static_cast<unsigned>(tjp + 1);
      blocks += mu;
    }
    CAPTURE(n);
    CHECK(dim == (static_cast<unsigned __int128>(1) << n));
    CHECK(blocks == binomial(n, n / 2));
  }
}

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(5, 7) == 0);
  CHECK(binomial(64, 32) == 1832624140942590534ULL);
  CHECK_THROWS_AS(binomial(70, 35), std::overflow_error);
}
