#include "qtradeoff/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qtradeoff/curve.hpp"
#include "qtradeoff/eigensolve.hpp"
#include "qtradeoff/spin_algebra.hpp"

namespace qtradeoff::verify {

namespace {

constexpr double kAbsSlack = 1e-12;

double trace_norm_squared(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& z : a.data()) s += std::norm(z);
  return s;
}

// Tr(L B R B^+) for square L (rows of B) and R (cols of B).
double sandwich_trace(const ComplexMatrix& left, const ComplexMatrix& b, const ComplexMatrix& right) {
  return trace_of_product(left * b, right * b.adjoint()).real();
}

// Batched sub-streams; each batch draws from Rng(seed, batch).
template <typename Body>
void for_each_sample(std::size_t samples, std::uint64_t seed, Body&& body) {
  std::size_t done = 0;
  for (std::uint64_t batch = 0; done < samples; ++batch) {
    Rng rng(seed, batch);
    const std::size_t count = std::min(kBatchSize, samples - done);
    for (std::size_t s = 0; s < count; ++s) body(rng);
    done += count;
  }
}

class MatrixAccumulator {
 public:
  MatrixAccumulator(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), re_(rows * cols), im_(rows * cols) {}

  void add(const ComplexMatrix& m) {
    for (std::size_t i = 0; i < rows_ * cols_; ++i) {
      re_[i].add(m.data()[i].real());
      im_[i].add(m.data()[i].imag());
    }
  }

  MatrixCheck finish(ComplexMatrix expected) const {
    MatrixCheck out;
    out.estimate = ComplexMatrix(rows_, cols_);
    out.expected = std::move(expected);
    out.std_error_re.resize(rows_ * cols_);
    out.std_error_im.resize(rows_ * cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) {
        const std::size_t i = r * cols_ + c;
        const auto er = re_[i].estimate(0);
        const auto ei = im_[i].estimate(0);
        out.estimate(r, c) = Complex(er.mean, ei.mean);
        out.std_error_re[i] = er.std_error;
        out.std_error_im[i] = ei.std_error;
        out.samples = er.samples;
        const Complex dev = out.estimate(r, c) - out.expected(r, c);
        out.max_deviation = std::max(out.max_deviation, std::abs(dev));
        out.max_std_error = std::max({out.max_std_error, er.std_error, ei.std_error});
        out.components += (er.std_error > kSigmaFloor) + (ei.std_error > kSigmaFloor);
        if (er.std_error > kSigmaFloor) out.max_sigma_ratio = std::max(out.max_sigma_ratio, std::abs(dev.real()) / er.std_error);
        if (ei.std_error > kSigmaFloor) out.max_sigma_ratio = std::max(out.max_sigma_ratio, std::abs(dev.imag()) / ei.std_error);
      }
    return out;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<MeanAccumulator> re_, im_;
};

}  // namespace

OperationElement::OperationElement(int two_j_, ComplexMatrix a_) : two_j(two_j_), a(std::move(a_)) {
  const auto n = static_cast<std::size_t>(two_j) + 1;
  if (two_j < 0 || a.rows() != n || a.cols() != n)
    throw std::domain_error("OperationElement: matrix must be (2j+1) x (2j+1)");
}

double OperationElement::norm_squared() const { return trace_norm_squared(a); }

OperationElement stripe_to_operator(const core::StripeVector& a) {
  const auto& idx = a.index;
  const spin::SpinBasis basis(idx.two_j());
  ComplexMatrix m(basis.dim(), basis.dim());
  for (std::size_t p = 0; p < a.values.size(); ++p) {
    const HalfInteger col = idx.label(p);
    const HalfInteger row = col - idx.k();
    m(basis.index(row), basis.index(col)) = a.values[p];
  }
  return OperationElement(idx.two_j(), std::move(m));
}

FG analytic_fg_block(const ComplexMatrix& b, int two_jprime, int two_j) {
  const auto out_ops = spin::spin_operators(two_jprime);
  const auto in_ops = spin::spin_operators(two_j);
  if (b.rows() != out_ops.jz.rows() || b.cols() != in_ops.jz.rows())
    throw std::domain_error("analytic_fg: block shape does not match (2j'+1) x (2j+1)");
  const double tr = trace_norm_squared(b);
  if (!(tr > 0.0)) throw std::domain_error("analytic_fg: zero operator");
  FG out;
  out.f = (sandwich_trace(out_ops.jx, b, in_ops.jx) + sandwich_trace(out_ops.jy, b, in_ops.jy) +
           sandwich_trace(out_ops.jz, b, in_ops.jz)) /
          tr;
  out.g = trace_of_product(b.adjoint() * b, in_ops.jz).real() / tr;
  return out;
}

FG analytic_fg(const OperationElement& a) { return analytic_fg_block(a.a, a.two_j, a.two_j); }

double GuessVector::norm() const { return std::sqrt(ax * ax + ay * ay + az * az); }

std::array<double, 3> GuessVector::direction() const {
  if (random_guess) return {0.0, 0.0, 0.0};
  const double n = norm();
  return {ax / n, ay / n, az / n};
}

GuessVector optimal_guess(const OperationElement& a) {
  const auto ops = spin::spin_operators(a.two_j);
  const ComplexMatrix ata = a.a.adjoint() * a.a;
  GuessVector v;
  v.ax = trace_of_product(ata, ops.jx).real();
  v.ay = trace_of_product(ata, ops.jy).real();
  v.az = trace_of_product(ata, ops.jz).real();
  v.random_guess = v.norm() < kGuessZeroTol;
  return v;
}

double unaligned_g(const OperationElement& a) {
  const double tr = a.norm_squared();
  if (!(tr > 0.0)) throw std::domain_error("unaligned_g: zero operator");
  return optimal_guess(a).norm() / tr;
}

bool MonteCarloEstimate::agrees_with(double expected, double sigmas) const {
  return std::abs(mean - expected) <= sigmas * std_error + kAbsSlack;
}

void MeanAccumulator::add(double x) {
  ++n_;
  const double d = x - mean_;
  mean_ += d / static_cast<double>(n_);
  m2_ += d * (x - mean_);
}

MonteCarloEstimate MeanAccumulator::estimate(std::uint64_t seed) const {
  MonteCarloEstimate e;
  e.mean = mean_;
  e.samples = n_;
  e.seed = seed;
  if (n_ > 1) e.std_error = std::sqrt(m2_ / static_cast<double>(n_ - 1) / static_cast<double>(n_));
  return e;
}

FGEstimate estimate_F_G(const OperationElement& a, std::size_t samples, std::uint64_t seed, double zeta_offset) {
  if (samples < 1000) throw std::domain_error("estimate_F_G: need at least 1000 samples");
  const int two_j = a.two_j;
  const double n_qubits = two_j;
  const spin::WignerRotator rot(two_j);
  const auto ops = spin::spin_operators(two_j);
  const double amp = std::sqrt(two_j + 1.0);

  MeanAccumulator f_acc, g_acc;
  for_each_sample(samples, seed, [&](Rng& rng) {
    spin::EulerAngles omega = spin::haar_sample(rng);
    omega.zeta += zeta_offset;
    const spin::EulerAngles xi = spin::haar_sample(rng);

    const ComplexMatrix u = rot.rotation(xi);
    const OperationElement a_xi(two_j, amp * (u * a.a * u.adjoint()));
    const auto psi = rot.rotated_highest_weight(omega);
    const auto phi = a_xi.a.apply(psi);
    const double p = inner_product(phi, phi).real();

    // P(Omega) = 1/2 + (n . J) / N on the post-measurement state.
    const auto n = omega.direction();
    const ComplexMatrix nj = ops.jx * n[0] + ops.jy * n[1] + ops.jz * n[2];
    const double spin_along = inner_product(phi, nj.apply(phi)).real();
    f_acc.add(0.5 * p + spin_along / n_qubits);

    const GuessVector guess = optimal_guess(a_xi);
    const auto guess_dir = guess.random_guess ? spin::haar_sample(rng).direction() : guess.direction();
    const double cos_angle = guess_dir[0] * n[0] + guess_dir[1] * n[1] + guess_dir[2] * n[2];
    g_acc.add(0.5 * p * (1.0 + cos_angle));
  });
  return {f_acc.estimate(seed), g_acc.estimate(seed)};
}

bool MatrixCheck::within(double sigmas) const {
  for (std::size_t r = 0; r < estimate.rows(); ++r)
    for (std::size_t c = 0; c < estimate.cols(); ++c) {
      const std::size_t i = r * estimate.cols() + c;
      const Complex dev = estimate(r, c) - expected(r, c);
      if (std::abs(dev.real()) > sigmas * std_error_re[i] + kAbsSlack) return false;
      if (std::abs(dev.imag()) > sigmas * std_error_im[i] + kAbsSlack) return false;
    }
  return true;
}

MatrixCheck k_tau_check(int n_qubits, int tau, std::size_t samples, std::uint64_t seed) {
  if (n_qubits < 1) throw std::domain_error("k_tau_check: N must be positive");
  if (tau < -1 || tau > 1) throw std::domain_error("k_tau_check: tau must be -1, 0 or 1");
  const int two_j = n_qubits;
  const double j = 0.5 * two_j;
  const spin::WignerRotator rot(two_j);
  const std::size_t dim = static_cast<std::size_t>(two_j) + 1;

  MatrixAccumulator acc(dim, dim);
  ComplexMatrix sample(dim, dim);
  for_each_sample(samples, seed, [&](Rng& rng) {
    const auto omega = spin::haar_sample(rng);
    Complex weight;
    switch (tau) {
      case -1: weight = std::polar(std::sin(omega.theta), omega.phi); break;
      case 0: weight = std::cos(omega.theta); break;
      default: weight = std::polar(std::sin(omega.theta), -omega.phi); break;
    }
    const auto psi = rot.rotated_highest_weight(omega);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) sample(r, c) = weight * psi[r] * std::conj(psi[c]);
    acc.add(sample);
  });

  const auto ops = spin::spin_operators(two_j);
  const double norm = 1.0 / ((j + 1.0) * (2.0 * j + 1.0));
  const ComplexMatrix& target = tau == 1 ? ops.jminus : (tau == -1 ? ops.jplus : ops.jz);
  return acc.finish(target * norm);
}

MatrixCheck completeness_check(const OperationElement& a, std::size_t samples, std::uint64_t seed) {
  if (std::abs(a.norm_squared() - 1.0) > 1e-10) throw std::domain_error("completeness_check: need Tr(A^+ A) = 1");
  const int two_j = a.two_j;
  const spin::WignerRotator rot(two_j);
  const std::size_t dim = static_cast<std::size_t>(two_j) + 1;
  const ComplexMatrix ata = a.a.adjoint() * a.a;

  MatrixAccumulator acc(dim, dim);
  for_each_sample(samples, seed, [&](Rng& rng) {
    const ComplexMatrix u = rot.rotation(spin::haar_sample(rng));
    acc.add((u * ata * u.adjoint()) * Complex(two_j + 1.0, 0.0));
  });
  return acc.finish(ComplexMatrix::identity(dim));
}

OperationElement promote(const ComplexMatrix& b, int two_j, int two_jprime) {
  if (two_jprime < 0 || two_jprime > two_j || (two_j - two_jprime) % 2 != 0)
    throw std::domain_error("promote: need 0 <= j' <= j with j - j' integer");
  const std::size_t dim = static_cast<std::size_t>(two_j) + 1;
  const std::size_t dim_p = static_cast<std::size_t>(two_jprime) + 1;
  if (b.rows() != dim_p || b.cols() != dim) throw std::domain_error("promote: block must be (2j'+1) x (2j+1)");
  for (const auto& z : b.data())
    if (z.real() < 0.0 || z.imag() != 0.0) throw std::domain_error("promote: entries must be real and nonnegative");
  if (analytic_fg_block(b, two_jprime, two_j).g < 0.0) throw std::domain_error("promote: requires g >= 0");

  // Row of label n on H_j reads row (n - j + j') of B: index shift 2(j - j') / 2.
  const std::size_t shift = static_cast<std::size_t>(two_j - two_jprime);
  ComplexMatrix out(dim, dim);
  for (std::size_t r = shift; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) out(r, c) = b(r - shift, c);
  return OperationElement(two_j, std::move(out));
}

ComplexMatrix random_nonnegative_block(int two_j, int two_jprime, Rng& rng) {
  const std::size_t dim = static_cast<std::size_t>(two_j) + 1;
  const std::size_t dim_p = static_cast<std::size_t>(two_jprime) + 1;
  for (;;) {
    ComplexMatrix b(dim_p, dim);
    double tr = 0.0;
    for (std::size_t r = 0; r < dim_p; ++r)
      for (std::size_t c = 0; c < dim; ++c) {
        const double v = rng.uniform();
        b(r, c) = v;
        tr += v * v;
      }
    b *= Complex(1.0 / std::sqrt(tr), 0.0);
    if (analytic_fg_block(b, two_jprime, two_j).g >= 0.0) return b;
  }
}

bool PromotionCheck::holds(double tol) const {
  return std::abs(promoted.g - original.g) <= tol && std::abs(trace_promoted - trace_original) <= tol &&
         promoted.f >= f_lower_bound - tol;
}

PromotionCheck check_promotion(const ComplexMatrix& b, int two_j, int two_jprime) {
  PromotionCheck out;
  out.original = analytic_fg_block(b, two_jprime, two_j);
  out.trace_original = trace_norm_squared(b);
  const OperationElement lifted = promote(b, two_j, two_jprime);
  out.promoted = analytic_fg(lifted);
  out.trace_promoted = lifted.norm_squared();
  out.f_lower_bound = out.original.f + 0.5 * (two_j - two_jprime) * out.original.g;
  return out;
}

double family_sigmas(std::size_t m, double single) {
  if (m <= 1) return single;
  const double alpha = std::erfc(single / std::sqrt(2.0));
  const double per = -std::expm1(std::log1p(-alpha) / static_cast<double>(m));
  double lo = single, hi = 40.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (std::erfc(mid / std::sqrt(2.0)) > per ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// The suite is a pass/fail gate over many matrix entries; each check uses
// family_sigmas so its false-alarm rate matches a single 3-sigma test.
std::vector<CheckResult> run_suite(const SuiteOptions& opts) {
  const int n = opts.n_qubits;
  if (n < 1 || n > 8) throw std::domain_error("verify suite: requires 1 <= N <= 8");
  if (opts.samples < 1000) throw std::domain_error("verify suite: requires samples >= 1000");
  const int two_j = n;
  const auto ks = core::relevant_k_range(n);
  std::vector<CheckResult> out;
  Rng rng(opts.seed, 0xabcdefULL);

  {
    CheckResult r{"path_equivalence", true, true, {}};
    double df = 0.0, dg = 0.0;
    for (int s = 0; s < 200; ++s) {
      const int k = ks[static_cast<std::size_t>(s) % ks.size()];
      const auto a = core::random_unit_stripe(two_j, k, rng);
      const auto direct = core::quadratic_forms(a);
      const auto traced = analytic_fg(stripe_to_operator(a));
      df = std::max(df, std::abs(direct.f - traced.f));
      dg = std::max(dg, std::abs(direct.g - traced.g));
    }
    r.passed = df < 1e-11 && dg < 1e-11;
    r.metrics = {{"max_f_difference", df}, {"max_g_difference", dg}, {"stripes", 200}};
    out.push_back(std::move(r));
  }

  for (int tau : {-1, 0, 1}) {
    const auto chk = k_tau_check(n, tau, opts.samples, opts.seed + 11 + static_cast<std::uint64_t>(tau + 1));
    const double z = family_sigmas(chk.components);
    out.push_back({"k_tau_" + std::to_string(tau), true, chk.within(z),
                   {{"sigma_threshold", z},
                    {"max_deviation", chk.max_deviation},
                    {"max_std_error", chk.max_std_error},
                    {"max_sigma_ratio", chk.max_sigma_ratio},
                    {"samples", static_cast<double>(chk.samples)}}});
  }

  for (int i = 0; i < 3; ++i) {
    const int k = ks[static_cast<std::size_t>(i) % ks.size()];
    const auto op = stripe_to_operator(core::random_unit_stripe(two_j, k, rng));
    const auto chk = completeness_check(op, opts.samples, opts.seed + 21 + static_cast<std::uint64_t>(i));
    const double z = family_sigmas(chk.components);
    out.push_back({"completeness_" + std::to_string(i), true, chk.within(z),
                   {{"k", k},
                    {"sigma_threshold", z},
                    {"max_deviation", chk.max_deviation},
                    {"max_std_error", chk.max_std_error},
                    {"max_sigma_ratio", chk.max_sigma_ratio}}});
  }

  {
    CheckResult r{"promotion", true, true, {}};
    double worst_margin = std::numeric_limits<double>::infinity();
    int instances = 0;
    for (int two_jp = two_j; two_jp >= 0; two_jp -= 2)
      for (int s = 0; s < 10; ++s, ++instances) {
        const auto chk = check_promotion(random_nonnegative_block(two_j, two_jp, rng), two_j, two_jp);
        r.passed = r.passed && chk.holds();
        worst_margin = std::min(worst_margin, chk.promoted.f - chk.f_lower_bound);
      }
    r.metrics = {{"instances", instances}, {"min_f_margin", worst_margin}};
    out.push_back(std::move(r));
  }

  {
    const auto c = curve::sweep(n, 0, {0.0, 0.5, 1.0});
    for (const auto& p : c.points) {
      const auto op = stripe_to_operator(core::StripeVector(core::StripeIndex(two_j, 0), p.stripe));
      const auto est = estimate_F_G(op, opts.samples, opts.seed + 31);
      out.push_back({"end_to_end_x" + std::to_string(p.x).substr(0, 3), true,
                     est.F.agrees_with(p.F, family_sigmas(2)) && est.G.agrees_with(p.G, family_sigmas(2)),
                     {{"x", p.x},
                      {"sigma_threshold", family_sigmas(2)},
                      {"F_curve", p.F},
                      {"F_estimate", est.F.mean},
                      {"F_std_error", est.F.std_error},
                      {"G_curve", p.G},
                      {"G_estimate", est.G.mean},
                      {"G_std_error", est.G.std_error}}});
    }
    const auto op = stripe_to_operator(core::StripeVector(core::StripeIndex(two_j, 0), c.points[1].stripe));
    const auto base = estimate_F_G(op, opts.samples, opts.seed + 41);
    const auto shifted = estimate_F_G(op, opts.samples, opts.seed + 41, 1.2345);
    const double dF = std::abs(base.F.mean - shifted.F.mean);
    const double dG = std::abs(base.G.mean - shifted.G.mean);
    out.push_back({"zeta_independence", true, dF < base.F.std_error + kAbsSlack && dG < base.G.std_error + kAbsSlack,
                   {{"F_shift", dF}, {"G_shift", dG}, {"F_std_error", base.F.std_error}}});
  }

  {
    CheckResult r{"conjecture_fk_spectrum", false, true, {}};
    double worst = 0.0;
    for (int k : ks) worst = std::max(worst, eigen::fk_spectrum_check(two_j, k).max_deviation);
    r.passed = worst < 1e-8;
    r.metrics = {{"max_deviation", worst}};
    out.push_back(std::move(r));
  }
  {
    CheckResult r{"conjecture_g_at_max_f", false, true, {}};
    double worst = 0.0;
    for (const auto& rep : curve::g_at_max_f_report(n)) worst = std::max(worst, rep.deviation);
    r.passed = worst < 1e-8;
    r.metrics = {{"max_deviation", worst}};
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace qtradeoff::verify
