#include "specgap/analytic.hpp"

#include <cmath>
#include <numbers>

#include "specgap/errors.hpp"

namespace specgap {

namespace {
// C(n, k) in exact integer arithmetic; fine for the level counts used here.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // divides exactly at each step
  }
  return r;
}
}  // namespace

std::uint64_t sphere_multiplicity(int d, int l) {
  require(d >= 1 && l >= 0, ErrorCode::invalid_argument, "sphere_multiplicity: bad d or l");
  const auto n = static_cast<std::uint64_t>(l);
  const auto dd = static_cast<std::uint64_t>(d);
  // dim of harmonic polynomials of degree l in d+1 variables:
  // C(l+d, d) - C(l+d-2, d), second term absent for l < 2.
  std::uint64_t full = binomial(n + dd, dd);
  std::uint64_t lower = l >= 2 ? binomial(n + dd - 2, dd) : 0;
  return full - lower;
}

Spectrum circle_spectrum(double L, double g, int level_cap) {
  require(L > 0.0, ErrorCode::invalid_argument, "circle_spectrum: L must be positive");
  require(level_cap >= 1, ErrorCode::invalid_argument, "circle_spectrum: level cap must be >= 1");
  const double w = 2.0 * std::numbers::pi / L;
  Spectrum s;
  s.source = Spectrum::Source::analytic;
  s.degeneracy_tol = 0.0;
  for (int k = 0; k <= level_cap; ++k) {
    s.eigenvalues.push_back(static_cast<double>(k) * k * w * w + g * w * w);
    s.multiplicities.push_back(k == 0 ? 1 : 2);
    s.modes.push_back(k);
    s.residuals.push_back(0.0);
  }
  s.complete_below = s.eigenvalues.back();
  return s;
}

Spectrum sphere_spectrum(int d, double g, double radius, int level_cap) {
  require(d >= 1, ErrorCode::invalid_argument, "sphere_spectrum: d must be >= 1");
  require(radius > 0.0, ErrorCode::invalid_argument, "sphere_spectrum: radius must be positive");
  require(level_cap >= 1, ErrorCode::invalid_argument, "sphere_spectrum: level cap must be >= 1");
  const double r2 = radius * radius;
  const double shift = g * d * d / r2;  // g*h^2 with h = d/radius
  Spectrum s;
  s.source = Spectrum::Source::analytic;
  s.degeneracy_tol = 0.0;
  for (int l = 0; l <= level_cap; ++l) {
    s.eigenvalues.push_back(static_cast<double>(l) * (l + d - 1) / r2 + shift);
    s.multiplicities.push_back(static_cast<int>(sphere_multiplicity(d, l)));
    s.modes.push_back(l);
    s.residuals.push_back(0.0);
  }
  s.complete_below = s.eigenvalues.back();
  return s;
}

Spectrum interval_spectrum(double L, int level_cap) {
  require(L > 0.0, ErrorCode::invalid_argument, "interval_spectrum: L must be positive");
  require(level_cap >= 1, ErrorCode::invalid_argument, "interval_spectrum: level cap must be >= 1");
  Spectrum s;
  s.source = Spectrum::Source::analytic;
  s.degeneracy_tol = 0.0;
  for (int k = 1; k <= level_cap; ++k) {
    const double kl = k * std::numbers::pi / L;
    s.eigenvalues.push_back(kl * kl);
    s.multiplicities.push_back(1);
    s.modes.push_back(k);
    s.residuals.push_back(0.0);
  }
  s.complete_below = s.eigenvalues.back();
  return s;
}

}  // namespace specgap
