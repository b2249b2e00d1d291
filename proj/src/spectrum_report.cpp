#include <algorithm>
#include <cmath>

#include "qtradeoff/eigensolve.hpp"
#include "qtradeoff/tradeoff_core.hpp"

namespace qtradeoff::eigen {

SpectrumReport fk_spectrum_check(int two_j, int k) {
  const auto mats = core::build_matrices(two_j, k);
  const core::StripeIndex idx(two_j, k);
  const double j = 0.5 * two_j;

  SpectrumReport rep;
  rep.two_j = two_j;
  rep.k = k;
  rep.spectrum = tridiagonal_spectrum(mats.f);
  const int nu_max = (idx.upper() - idx.lower()).twice() / 2;
  for (int nu = 0; nu <= nu_max; ++nu) rep.conjectured.push_back(-0.5 * nu * (nu - 1) + 2.0 * j * nu - j * j);
  std::sort(rep.conjectured.begin(), rep.conjectured.end());
  for (std::size_t i = 0; i < rep.spectrum.size(); ++i)
    rep.max_deviation = std::max(rep.max_deviation, std::abs(rep.spectrum[i] - rep.conjectured[i]));
  rep.top_eigenvalue = rep.spectrum.back();
  rep.top_conjectured = j * (j + 1.0) - 0.5 * k * (k + 1);
  rep.general_bound = core::fk_upper_bound(two_j, k);
  return rep;
}

}  // namespace qtradeoff::eigen
