#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qtradeoff/tradeoff_core.hpp"

using namespace qtradeoff;
using namespace qtradeoff::core;

namespace {

HalfInteger half(int twice) { return HalfInteger::from_twice(twice); }

double jj1(int two_j) { return 0.5 * two_j * (0.5 * two_j + 1.0); }

}  // namespace

TEST_CASE("stripe index ranges") {
  const StripeIndex s(4, 1);
  CHECK(s.lower() == half(-2));
  CHECK(s.upper() == half(4));
  CHECK(s.length() == 4);
  CHECK(s.position(half(0)) == 1);
  CHECK(s.label(3) == half(4));
  CHECK_THROWS_AS(s.position(half(-4)), std::domain_error);

  const StripeIndex neg(4, -1);
  CHECK(neg.lower() == half(-4));
  CHECK(neg.upper() == half(2));
  CHECK(neg.length() == s.length());

  CHECK_THROWS(StripeIndex(4, 5));
}

TEST_CASE("stripe vectors validate length and orientation") {
  CHECK_THROWS(StripeVector(StripeIndex(2, 0), {1.0, 0.0}));
  CHECK_THROWS(StripeVector(StripeIndex(2, 0), {1.0, -0.1, 0.0}));
  CHECK_NOTHROW(StripeVector(StripeIndex(2, 0), {1.0, -0.1, 0.0}, false));
}

TEST_CASE("gamma examples") {
  CHECK(std::abs(gamma(1, 0, half(-1)) - 1.0) < 1e-15);
  CHECK(std::abs(gamma(2, 1, half(0)) - 2.0) < 1e-15);
  CHECK_THROWS_AS(gamma(2, 1, half(2)), std::domain_error);  // m = u_k has no successor
  CHECK_THROWS_AS(gamma(2, 1, half(-2)), std::domain_error);
}

TEST_CASE("gamma is symmetric under m -> k - 1 - m") {
  for (int tj = 1; tj <= 20; ++tj) {
    for (int k = 0; k < tj; ++k) {
      const StripeIndex s(tj, k);
      for (std::size_t p = 0; p + 1 < s.length(); ++p) {
        const auto m = s.label(p);
        const auto mirror = HalfInteger::from_int(k - 1) - m;
        CHECK(std::abs(gamma(tj, k, m) - gamma(tj, k, mirror)) < 1e-12);
      }
    }
  }
}

TEST_CASE("build_matrices examples") {
  const auto a = build_matrices(1, 0);
  CHECK(a.f.diag == std::vector<double>{0.25, 0.25});
  CHECK(a.f.offdiag == std::vector<double>{0.5});
  CHECK(a.g.diag == std::vector<double>{-0.5, 0.5});

  const auto b = build_matrices(2, 2);
  CHECK(b.f.diag == std::vector<double>{-1.0});
  CHECK(b.f.offdiag.empty());
  CHECK(b.g.diag == std::vector<double>{1.0});

  CHECK_THROWS_AS(build_matrices(2, 3), std::domain_error);
  CHECK_THROWS_AS(build_matrices(2, -1), std::domain_error);
}

TEST_CASE("uniform k=0 stripe attains j(j+1)") {
  for (int tj = 1; tj <= 40; ++tj) {
    const std::size_t n = tj + 1;
    const std::vector<double> u(n, 1.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(build_matrices(tj, 0).f.quadratic_form(u) - jj1(tj)) < 1e-11);
    CHECK(std::abs(quadratic_forms(StripeVector(StripeIndex(tj, 0), u)).f - jj1(tj)) < 1e-11);
  }
}

TEST_CASE("quadratic_forms examples") {
  for (int tj : {1, 4, 7}) {
    std::vector<double> e(tj + 1, 0.0);
    e.back() = 1.0;
    const auto r = quadratic_forms(StripeVector(StripeIndex(tj, 0), e));
    const double j = 0.5 * tj;
    CHECK(std::abs(r.f - j * j) < 1e-12);
    CHECK(std::abs(r.g - j) < 1e-12);
    CHECK(std::abs(r.h - 1.0) < 1e-12);

    for (double chi : {0.1, 0.7, 1.3}) {
      std::vector<double> a(tj + 1, 0.0);
      a.front() = std::sin(chi);
      a.back() = std::cos(chi);
      CHECK(std::abs(quadratic_forms(StripeVector(StripeIndex(tj, 0), a)).g - j * std::cos(2 * chi)) < 1e-12);
    }
  }
}

TEST_CASE("matrix build agrees with direct summation on 500 random stripes") {
  Rng rng(500);
  int done = 0;
  for (int tj = 1; done < 500; tj = tj % 20 + 1) {
    for (int k : relevant_k_range(tj)) {
      const auto a = random_unit_stripe(tj, k, rng);
      const auto mats = build_matrices(tj, k);
      const auto forms = quadratic_forms(a);
      CHECK(std::abs(mats.f.quadratic_form(a.values) - forms.f) < 1e-11);
      CHECK(std::abs(mats.g.quadratic_form(a.values) - forms.g) < 1e-11);
      CHECK(std::abs(forms.h - 1.0) < 1e-12);
      ++done;
    }
  }
}

TEST_CASE("f bound and g range for random unit stripes") {
  Rng rng(77);
  for (int tj = 1; tj <= 20; ++tj) {
    for (int k : relevant_k_range(tj)) {
      const StripeIndex idx(tj, k);
      for (int t = 0; t < 200; ++t) {
        const auto a = random_unit_stripe(tj, k, rng, t % 2 == 0);
        const auto r = quadratic_forms(a);
        CHECK(r.f <= fk_upper_bound(tj, k) + 1e-11);
        CHECK(r.g >= -0.5 * tj - 1e-12);
        CHECK(r.g <= idx.upper().value() + 1e-12);
      }
    }
  }
}

TEST_CASE("relevant_k_range") {
  CHECK(relevant_k_range(1) == std::vector<int>{0});
  CHECK(relevant_k_range(4) == std::vector<int>{0, 1});
  CHECK(relevant_k_range(10) == std::vector<int>{0, 1, 2, 3});
  CHECK(relevant_k_range(100) == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK_THROWS(relevant_k_range(0));
}

TEST_CASE("negative k shift") {
  const StripeVector a(StripeIndex(2, -1), {1.0, 0.0});
  const auto r = negative_k_shift(a);
  CHECK(std::abs(r.f.first - r.f.second) < 1e-12);
  CHECK(std::abs(r.g.second - r.g.first - 1.0) < 1e-12);

  Rng rng(3);
  for (int tj = 2; tj <= 16; ++tj) {
    for (int k = -1; k >= -tj; --k) {
      const auto v = random_unit_stripe(tj, k, rng, false);
      const auto m = negative_k_shift(v);
      CHECK(std::abs(m.f.first - m.f.second) < 1e-12);
      CHECK(std::abs(m.g.second - m.g.first + k) < 1e-12);
    }
  }
  CHECK_THROWS(negative_k_shift(StripeVector(StripeIndex(2, 1), {1.0, 0.0})));
}
