#include "specgap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specgap/errors.hpp"
#include "specgap/report_io.hpp"

namespace specgap {

namespace {
constexpr double kTiny = 1e-300;

double rel_err(double lhs, double rhs, double floor_scale) {
  const double s = std::max({std::fabs(lhs), std::fabs(rhs), floor_scale, kTiny});
  return std::fabs(lhs - rhs) / s;
}

std::vector<double> centered_derivative_closed(std::span<const double> u, double ds) {
  const std::size_t n = u.size();
  std::vector<double> du(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double up = u[(i + 1) % n];
    const double um = u[(i + n - 1) % n];
    du[i] = (up - um) / (2.0 * ds);
  }
  return du;
}

std::vector<double> centered_derivative_zero_ends(std::span<const double> u, double ds) {
  const std::size_t n = u.size();
  std::vector<double> du(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double up = i + 1 < n ? u[i + 1] : 0.0;
    const double um = i > 0 ? u[i - 1] : 0.0;
    du[i] = (up - um) / (2.0 * ds);
  }
  return du;
}

std::vector<double> derivative_one_sided_ends(std::span<const double> u, double ds) {
  const std::size_t n = u.size();
  std::vector<double> du(n);
  for (std::size_t i = 1; i + 1 < n; ++i) du[i] = (u[i + 1] - u[i - 1]) / (2.0 * ds);
  du[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * ds);
  du[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * ds);
  return du;
}

BoundReport make_inequality_report(BoundId id, double lhs, double rhs, ToleranceClass cls,
                                   double tol, BoundParams params) {
  BoundReport r;
  r.id = id;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.tclass = cls;
  r.tolerance = tol;
  r.holds = r.slack >= -tol;
  r.params = std::move(params);
  return r;
}

BoundReport make_identity_report(BoundId id, double lhs, double rhs, ToleranceClass cls,
                                 double tol, BoundParams params) {
  BoundReport r = make_inequality_report(id, lhs, rhs, cls, tol, std::move(params));
  r.two_sided = true;
  r.holds = std::fabs(r.slack) <= tol;
  return r;
}

BoundReport make_skipped(BoundId id, BoundParams params, std::string why) {
  BoundReport r;
  r.id = id;
  r.skipped = true;
  r.holds = true;
  r.params = std::move(params);
  r.notes = std::move(why);
  return r;
}

// Flattened prefix and validity helper shared by the distribution bounds.
bool gap_index_valid(const Spectrum& spec, std::size_t n) {
  const auto valid = spec.valid_gap_indices(n);
  return std::find(valid.begin(), valid.end(), n) != valid.end();
}

ToleranceClass class_for(const Spectrum& spec) {
  return spec.source == Spectrum::Source::analytic ? ToleranceClass::exact
                                                   : ToleranceClass::discretization;
}

double tolerance_for(const Spectrum& spec, std::size_t grid_n, double scale) {
  return spec.source == Spectrum::Source::analytic ? exact_tolerance(scale)
                                                   : discretization_tolerance(grid_n, scale);
}

}  // namespace

const char* to_string(BoundId id) {
  switch (id) {
    case BoundId::commutator_identities: return "commutator-identities";
    case BoundId::lemma_gap: return "lemma-gap";
    case BoundId::gap_curve_energy: return "gap-curve-energy";
    case BoundId::gap_hypersurface_energy: return "gap-hypersurface-energy";
    case BoundId::gap_delta: return "gap-delta";
    case BoundId::gap_sigma: return "gap-sigma";
    case BoundId::ratio_universal: return "ratio-universal";
    case BoundId::sum_rule_unit: return "sum-rule-unit";
    case BoundId::hile_protter_delta: return "hile-protter-delta";
    case BoundId::hile_protter_sigma: return "hile-protter-sigma";
    case BoundId::yang_quadratic: return "yang-quadratic";
    case BoundId::gap_interval_roots: return "gap-interval-roots";
    case BoundId::gap_interval_sigma: return "gap-interval-sigma";
    case BoundId::gap_interval_printed_delta: return "gap-interval-printed-delta";
    case BoundId::heat_trace_delta: return "heat-trace-delta";
    case BoundId::heat_trace_sigma: return "heat-trace-sigma";
    case BoundId::trace_identity: return "trace-identity";
    case BoundId::trace_bound: return "trace-bound";
  }
  return "unknown";
}

const char* to_string(ToleranceClass c) {
  switch (c) {
    case ToleranceClass::exact: return "exact";
    case ToleranceClass::discretization: return "discretization";
    case ToleranceClass::informational: return "informational";
  }
  return "unknown";
}

double exact_tolerance(double rhs) { return 1e-9 * (1.0 + std::fabs(rhs)); }

double discretization_tolerance(std::size_t grid_n, double scale) {
  require(grid_n >= 2, ErrorCode::invalid_argument, "discretization tolerance needs a grid");
  const double refine = 1024.0 / static_cast<double>(grid_n);
  return 2e-3 * refine * refine * (1.0 + std::fabs(scale));
}

double IdentitySuiteResult::max_any() const {
  return std::max({first_commutator, norm_square, cross, double_commutator, lemma_violation,
                   degenerate_momentum});
}

IdentitySuiteResult commutator_identity_suite(const TridiagonalOperator& H,
                                              std::span<const double> g_diag,
                                              const std::vector<EigenPair>& pairs,
                                              double degeneracy_tol) {
  const std::size_t n = H.size();
  require(g_diag.size() == n, ErrorCode::invalid_argument, "identity suite: G size mismatch");
  require(!pairs.empty(), ErrorCode::invalid_argument, "identity suite: no eigenpairs");

  double gmax = 0.0;
  for (double g : g_diag) gmax = std::max(gmax, std::fabs(g));
  gmax = std::max(gmax, 1e-30);

  const VectorOpComponent M = commutator_with_diagonal(H, g_diag);
  const TridiagonalOperator D2 = double_commutator_with_diagonal(H, g_diag);

  const std::size_t k = pairs.size();
  std::vector<std::vector<double>> u(k), gu(k), mu(k), hgu(k);
  std::vector<double> lam(k);
  for (std::size_t j = 0; j < k; ++j) {
    lam[j] = pairs[j].lambda;
    u[j] = to_plain(H.weights, pairs[j].vector);
    gu[j].resize(n);
    for (std::size_t i = 0; i < n; ++i) gu[j][i] = g_diag[i] * u[j][i];
    mu[j] = M.apply(u[j]);
    hgu[j] = H.apply(gu[j]);  // (H - lambda) G u added below
    for (std::size_t i = 0; i < n; ++i) hgu[j][i] -= lam[j] * gu[j][i];
  }

  IdentitySuiteResult r;
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t l = 0; l < k; ++l) {
      const double lscale = 1.0 + std::fabs(lam[j]) + std::fabs(lam[l]);
      // <u_j, [H,G] u_l> = (lambda_j - lambda_l) <u_j, G u_l>
      const double lhs12 = dot(u[j], mu[l]);
      const double rhs12 = (lam[j] - lam[l]) * dot(u[j], gu[l]);
      r.first_commutator = std::max(r.first_commutator, rel_err(lhs12, rhs12, gmax * lscale));
      // <[H,G]u_j, [H,G]u_l> = <(H-l_j)Gu_j, (H-l_l)Gu_l>
      const double lhs14 = dot(mu[j], mu[l]);
      const double rhs14 = dot(hgu[j], hgu[l]);
      const double floor14 = gmax * gmax * lscale * lscale;
      if (j == l)
        r.norm_square = std::max(r.norm_square, rel_err(lhs14, rhs14, floor14));
      else
        r.cross = std::max(r.cross, rel_err(lhs14, rhs14, floor14));
      if (std::fabs(lam[j] - lam[l]) <= degeneracy_tol && j != l) {
        // momentum elements between merged-degenerate eigenvectors vanish
        const double p = 0.5 * std::fabs(lhs12);
        r.degenerate_momentum = std::max(r.degenerate_momentum, p / (gmax * lscale));
      }
    }
    // <u_j, [G,[H,G]] u_j> = 2 <G u_j, (H - lambda_j) G u_j>
    const double lhs15 = dot(u[j], D2.apply(u[j]));
    const double rhs15 = 2.0 * dot(gu[j], hgu[j]);
    r.double_commutator = std::max(
        r.double_commutator,
        rel_err(lhs15, rhs15, gmax * gmax * (1.0 + 2.0 * std::fabs(lam[j]))));
  }

  // Gamma <u_1,[G,[H,G]]u_1> <= 2 ||[H,G]u_1||^2 with Gamma from the merged values
  std::size_t second = 0;
  while (second < k && lam[second] - lam[0] <= degeneracy_tol) ++second;
  if (second < k) {
    const double gamma = lam[second] - lam[0];
    const double lhs = gamma * dot(u[0], D2.apply(u[0]));
    const double rhs = 2.0 * dot(mu[0], mu[0]);
    const double scale = std::max({std::fabs(lhs), std::fabs(rhs), kTiny});
    r.lemma_violation = std::max(r.lemma_violation, std::max(0.0, lhs - rhs) / scale);
  }
  return r;
}

BoundReport identity_suite_report(const IdentitySuiteResult& r, const BoundParams& params) {
  BoundReport rep = make_inequality_report(BoundId::commutator_identities, r.max_any(), 0.0,
                                           ToleranceClass::exact, 1e-9, params);
  rep.rhs = 1e-9;
  rep.slack = rep.rhs - rep.lhs;
  rep.holds = r.max_any() <= 1e-9;
  rep.notes = "max relative deviation over the exact commutator identities";
  return rep;
}

BoundReport gap_bound_lemma11(const TridiagonalOperator& H, std::span<const double> g_diag,
                              const EigenPair& u1, const Spectrum& spec) {
  BoundParams params;
  params.d = 1;
  params.grid_n = H.size();
  if (spec.level_count() < 2) return make_skipped(BoundId::lemma_gap, params, "no gap available");
  if (spec.multiplicities[0] > 1)
    return make_skipped(BoundId::lemma_gap, params, "degenerate ground state");
  const auto u = to_plain(H.weights, u1.vector);
  const VectorOpComponent M = commutator_with_diagonal(H, g_diag);
  const TridiagonalOperator D2 = double_commutator_with_diagonal(H, g_diag);
  const auto mu = M.apply(u);
  const double gamma = spec.gap();
  const double lhs = gamma * dot(u, D2.apply(u));
  const double rhs = 2.0 * dot(mu, mu);
  return make_inequality_report(BoundId::lemma_gap, lhs, rhs, ToleranceClass::exact,
                                exact_tolerance(rhs), params);
}

BoundReport gap_bound_curve(const EigenPair& u1, const CurveGeometry& geom,
                            const Spectrum& spec) {
  require(u1.vector.size() == geom.size(), ErrorCode::invalid_argument,
          "gap_bound_curve: eigenvector does not match the geometry grid");
  BoundParams params;
  params.d = 1;
  params.grid_n = geom.size();
  if (spec.level_count() < 2)
    return make_skipped(BoundId::gap_curve_energy, params, "no gap available");
  const auto du = geom.closed ? centered_derivative_closed(u1.vector, geom.ds)
                              : centered_derivative_zero_ends(u1.vector, geom.ds);
  double rhs = 0.0;
  for (std::size_t i = 0; i < geom.size(); ++i) {
    const double k2 = geom.kappa[i] * geom.kappa[i];
    rhs += geom.ds * (du[i] * du[i] + 0.25 * k2 * u1.vector[i] * u1.vector[i]);
  }
  rhs *= 4.0;
  const double lhs = spec.gap();
  return make_inequality_report(BoundId::gap_curve_energy, lhs, rhs, class_for(spec),
                                tolerance_for(spec, geom.size(), lhs + rhs), params);
}

BoundReport gap_bound_hypersurface(const EigenPair& u1, const RevolutionGeometry& geom,
                                   const Spectrum& merged) {
  require(u1.vector.size() == geom.size(), ErrorCode::invalid_argument,
          "gap_bound_hypersurface: eigenvector does not match the geometry grid");
  BoundParams params;
  params.d = 2;
  params.grid_n = geom.size();
  if (merged.level_count() < 2)
    return make_skipped(BoundId::gap_hypersurface_energy, params, "no gap available");
  require(merged.modes[0] == 0, ErrorCode::internal_consistency,
          "gap_bound_hypersurface: merged ground state is not in angular mode 0");
  std::vector<double> du;
  switch (geom.grid) {
    case RevolutionGrid::periodic: du = centered_derivative_closed(u1.vector, geom.ds); break;
    case RevolutionGrid::interior: du = centered_derivative_zero_ends(u1.vector, geom.ds); break;
    case RevolutionGrid::staggered: du = derivative_one_sided_ends(u1.vector, geom.ds); break;
  }
  double rhs = 0.0;
  for (std::size_t i = 0; i < geom.size(); ++i) {
    const double h2 = geom.h[i] * geom.h[i];
    rhs += geom.weight[i] * (du[i] * du[i] + 0.25 * h2 * u1.vector[i] * u1.vector[i]);
  }
  rhs *= 4.0 / 2.0;  // (4/d), d = 2
  const double lhs = merged.gap();
  return make_inequality_report(BoundId::gap_hypersurface_energy, lhs, rhs, class_for(merged),
                                tolerance_for(merged, geom.size(), lhs + rhs), params);
}

BoundReport gap_bound_sphere_analytic(const SphereGeometry& sphere, const Spectrum& spec) {
  BoundParams params;
  params.d = sphere.dim;
  params.grid_n = 0;
  // constant ground state: (4/d) <u1, (-Lap + h^2/4) u1> = (4/d)(h^2/4) = d/r^2
  const double rhs = sphere.dim / (sphere.radius * sphere.radius);
  const double lhs = spec.gap();
  return make_inequality_report(BoundId::gap_hypersurface_energy, lhs, rhs,
                                ToleranceClass::exact, exact_tolerance(rhs), params);
}

BoundReport gap_delta_bound(const Spectrum& spec, int d, double delta, std::size_t grid_n) {
  BoundParams params;
  params.d = d;
  params.delta = delta;
  params.grid_n = grid_n;
  if (spec.level_count() < 2) return make_skipped(BoundId::gap_delta, params, "no gap available");
  const double lambda1 = spec.eigenvalues[0];
  const double lhs = spec.gap();
  const double rhs = 4.0 / d * (lambda1 + delta);
  return make_inequality_report(BoundId::gap_delta, lhs, rhs, class_for(spec),
                                tolerance_for(spec, grid_n, lhs + rhs), params);
}

BoundReport gap_sigma_bound(const Spectrum& spec, int d, double g, std::size_t grid_n) {
  const double sigma = sigma_of_g(g);
  BoundParams params;
  params.d = d;
  params.g = g;
  params.sigma = sigma;
  params.grid_n = grid_n;
  if (spec.level_count() < 2) return make_skipped(BoundId::gap_sigma, params, "no gap available");
  const double lhs = spec.gap();
  const double rhs = 4.0 * sigma / d * spec.eigenvalues[0];
  return make_inequality_report(BoundId::gap_sigma, lhs, rhs, class_for(spec),
                                tolerance_for(spec, grid_n, lhs + rhs), params);
}

BoundReport ratio_bound(const Spectrum& spec, int d, double g, std::size_t grid_n) {
  BoundParams params;
  params.d = d;
  params.g = g;
  params.sigma = sigma_of_g(g);
  params.grid_n = grid_n;
  if (spec.level_count() < 2)
    return make_skipped(BoundId::ratio_universal, params, "no gap available");
  const double lambda1 = spec.eigenvalues[0];
  if (!(lambda1 > 0.0))
    return make_skipped(BoundId::ratio_universal, params, "lambda_1 <= 0: ratio undefined");
  const double gd = g * d;
  const double rhs = g <= 0.25 ? (1.0 + gd) / gd : (4.0 + d) / static_cast<double>(d);
  const double lhs = spec.eigenvalues[1] / lambda1;
  return make_inequality_report(BoundId::ratio_universal, lhs, rhs, class_for(spec),
                                tolerance_for(spec, grid_n, lhs + rhs), params);
}

SumRuleResult sum_rule_residual(const TridiagonalOperator& H,
                                const std::vector<EigenPair>& basis, const DiscreteVectorOp& P,
                                const DiscreteVectorOp& X, std::size_t j, int d,
                                double degeneracy_tol) {
  const std::size_t n = H.size();
  require(basis.size() == n, ErrorCode::invalid_argument,
          "sum_rule_residual: full discrete eigenbasis required");
  require(j >= 1 && j <= n, ErrorCode::invalid_argument, "sum_rule_residual: j out of range");
  require(P.dim() == X.dim(), ErrorCode::invalid_argument,
          "sum_rule_residual: P and X dimension mismatch");

  const std::size_t ji = j - 1;
  const auto uj = to_plain(H.weights, basis[ji].vector);
  const double lamj = basis[ji].lambda;

  double xmax = 1e-30;
  for (const auto& xm : X.components)
    for (double x : xm.diag) xmax = std::max(xmax, std::fabs(x));

  std::vector<std::vector<double>> pu(P.dim()), xu(X.dim());
  for (std::size_t m = 0; m < P.dim(); ++m) {
    pu[m] = P.components[m].apply(uj);
    xu[m] = X.components[m].apply(uj);
  }

  double sum = 0.0;
  double max_alg = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto uk = to_plain(H.weights, basis[k].vector);
    const double lamk = basis[k].lambda;
    for (std::size_t m = 0; m < P.dim(); ++m) {
      const double pjk = dot(uk, pu[m]);
      const double xjk = dot(uk, xu[m]);
      // exact layer: <u_k, P u_j> = -(1/2)(lambda_k - lambda_j) <u_k, X u_j>
      const double alg = std::fabs(pjk + 0.5 * (lamk - lamj) * xjk) /
                         (xmax * (1.0 + std::fabs(lamk) + std::fabs(lamj)));
      max_alg = std::max(max_alg, alg);
      if (std::fabs(lamk - lamj) > degeneracy_tol) sum += pjk * pjk / (lamk - lamj);
    }
  }
  sum *= 4.0 / d;

  BoundParams params;
  params.d = d;
  params.n = j;
  params.grid_n = n;
  SumRuleResult out;
  out.report = make_identity_report(BoundId::sum_rule_unit, 1.0, sum,
                                    ToleranceClass::discretization,
                                    discretization_tolerance(n, 1.0), params);
  out.max_algebraic_residual = max_alg;
  return out;
}

BoundReport hile_protter_check(const Spectrum& spec, std::size_t n, int d, bool sigma_weights,
                               double delta_or_sigma, std::size_t grid_n) {
  const BoundId id = sigma_weights ? BoundId::hile_protter_sigma : BoundId::hile_protter_delta;
  BoundParams params;
  params.d = d;
  params.n = n;
  params.grid_n = grid_n;
  if (sigma_weights)
    params.sigma = delta_or_sigma;
  else
    params.delta = delta_or_sigma;
  if (!gap_index_valid(spec, n))
    return make_skipped(id, params, "lambda_{n+1} merges with lambda_n at n=" + std::to_string(n));
  const auto lam = spec.flatten(n + 1);
  const double top = lam[n];
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double w = sigma_weights ? delta_or_sigma * lam[j] : lam[j] + delta_or_sigma;
    sum += w / (top - lam[j]);
  }
  sum *= 4.0 / (d * static_cast<double>(n));
  // report: 1 <= sum
  BoundReport r = make_inequality_report(id, 1.0, sum, class_for(spec),
                                         tolerance_for(spec, grid_n, 1.0), params);
  return r;
}

namespace {

struct QuadraticMoments {
  double lambda_bar, lambda_sq_bar, w_bar, lw_bar;
};

QuadraticMoments yang_moments(const Spectrum& spec, std::size_t n, bool sigma_weights,
                              double param) {
  const auto lam = spec.flatten(n);
  QuadraticMoments m{0, 0, 0, 0};
  for (double l : lam) {
    const double w = sigma_weights ? param * l : l + param;
    m.lambda_bar += l;
    m.lambda_sq_bar += l * l;
    m.w_bar += w;
    m.lw_bar += l * w;
  }
  const double inv = 1.0 / static_cast<double>(n);
  m.lambda_bar *= inv;
  m.lambda_sq_bar *= inv;
  m.w_bar *= inv;
  m.lw_bar *= inv;
  return m;
}

GapInterval interval_from_center(GapInterval::Variant variant, std::size_t n, double center,
                                 double discriminant, const QuadraticMoments& m) {
  GapInterval gi;
  gi.variant = variant;
  gi.n = n;
  gi.center = center;
  gi.lambda_bar = m.lambda_bar;
  gi.lambda_sq_bar = m.lambda_sq_bar;
  const double scale = center * center + std::fabs(m.lambda_sq_bar) + kTiny;
  if (discriminant < 0.0 && discriminant >= -1e-12 * scale) discriminant = 0.0;
  if (discriminant < 0.0) {
    gi.vacuous = true;
    gi.half_width = 0.0;
  } else {
    gi.half_width = std::sqrt(discriminant);
  }
  return gi;
}

}  // namespace

GapInterval yang_quadratic(const Spectrum& spec, std::size_t n, int d, bool sigma_weights,
                           double delta_or_sigma) {
  require(n >= 1, ErrorCode::invalid_argument, "yang_quadratic: n must be >= 1");
  const auto m = yang_moments(spec, n, sigma_weights, delta_or_sigma);
  const double center = m.lambda_bar + 2.0 / d * m.w_bar;
  const double c = m.lambda_sq_bar + 4.0 / d * m.lw_bar;
  return interval_from_center(GapInterval::Variant::quadratic_roots, n, center,
                              center * center - c, m);
}

GapInterval gap_interval_sigma(const Spectrum& spec, std::size_t n, int d, double sigma) {
  const auto m = yang_moments(spec, n, true, sigma);
  const double center = (1.0 + 2.0 * sigma / d) * m.lambda_bar;
  const double disc = center * center - (1.0 + 4.0 * sigma / d) * m.lambda_sq_bar;
  return interval_from_center(GapInterval::Variant::sigma_form, n, center, disc, m);
}

GapInterval gap_interval_printed_delta(const Spectrum& spec, std::size_t n, int d, double delta) {
  const auto m = yang_moments(spec, n, false, delta);
  const double center = (1.0 + 2.0 / d) * m.lambda_bar;
  const double dn = static_cast<double>(d) * static_cast<double>(n);
  const double disc =
      4.0 / (d * d) *
      ((dn + 2.0) / 2.0 * ((dn + 2.0) / 2.0) * m.lambda_bar * m.lambda_bar +
       (dn - d + 2.0) * delta * m.lambda_bar -
       d * ((dn + 4.0) / 4.0) * m.lambda_sq_bar + delta * delta);
  return interval_from_center(GapInterval::Variant::printed_delta, n, center, disc, m);
}

BoundReport yang_upper_check(const Spectrum& spec, std::size_t n, int d, bool sigma_weights,
                             double delta_or_sigma, std::size_t grid_n) {
  BoundParams params;
  params.d = d;
  params.n = n;
  params.grid_n = grid_n;
  if (sigma_weights)
    params.sigma = delta_or_sigma;
  else
    params.delta = delta_or_sigma;
  if (!gap_index_valid(spec, n))
    return make_skipped(BoundId::yang_quadratic, params,
                        "lambda_{n+1} merges with lambda_n at n=" + std::to_string(n));
  if (sigma_weights && !(spec.flatten(1)[0] > 0.0))
    return make_skipped(BoundId::yang_quadratic, params, "lambda_1 <= 0: sigma weights need H_g");
  const GapInterval gi = yang_quadratic(spec, n, d, sigma_weights, delta_or_sigma);
  const double top = spec.flatten(n + 1)[n];
  if (gi.vacuous) {
    BoundReport r = make_skipped(BoundId::yang_quadratic, params,
                                 "vacuous: quadratic has no real roots");
    r.inconclusive = true;
    r.holds = false;
    r.skipped = false;
    return r;
  }
  return make_inequality_report(BoundId::yang_quadratic, top, gi.hi(), class_for(spec),
                                tolerance_for(spec, grid_n, gi.hi()), params);
}

BoundReport gap_interval_check(const GapInterval& gi, const Spectrum& spec, std::size_t grid_n) {
  const BoundId id = gi.variant == GapInterval::Variant::quadratic_roots
                         ? BoundId::gap_interval_roots
                     : gi.variant == GapInterval::Variant::sigma_form
                         ? BoundId::gap_interval_sigma
                         : BoundId::gap_interval_printed_delta;
  BoundParams params;
  params.n = gi.n;
  params.grid_n = grid_n;
  const ToleranceClass cls =
      gi.variant == GapInterval::Variant::printed_delta ? ToleranceClass::informational
                                                        : class_for(spec);
  if (gi.vacuous) {
    BoundReport r = make_skipped(id, params, "vacuous: quadratic has no real roots");
    r.tclass = cls;
    r.inconclusive = true;
    r.holds = false;
    r.skipped = false;
    return r;
  }
  const auto lam = spec.flatten(gi.n + 1);
  const double lam_n = lam[gi.n - 1];
  const double lam_next = lam[gi.n];
  const double tol = spec.source == Spectrum::Source::analytic
                         ? exact_tolerance(gi.hi())
                         : discretization_tolerance(grid_n, gi.hi());
  BoundReport r = make_inequality_report(id, lam_next, gi.hi(), cls, tol, params);
  const double lower_slack = lam_n - gi.lo();
  r.holds = r.holds && lower_slack >= -tol;
  r.notes = "lower end slack " + format_csv_double(lower_slack);
  return r;
}

PartitionCheck partition_monotonicity(const Spectrum& spec, int d, bool sigma_variant,
                                      double delta_or_sigma, std::span<const double> t_grid) {
  require(!t_grid.empty(), ErrorCode::invalid_argument, "partition check: empty t grid");
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i)
    require(t_grid[i] > 0.0 && t_grid[i] < t_grid[i + 1], ErrorCode::invalid_argument,
            "partition check: t grid must be positive ascending");

  PartitionCheck pc;
  pc.sigma_variant = sigma_variant;
  if (sigma_variant) {
    pc.sigma_used = delta_or_sigma;
    pc.exponent = d / (2.0 * delta_or_sigma);
  } else {
    pc.delta_used = delta_or_sigma;
    pc.exponent = d / 2.0;
  }

  // truncated spectrum: levels up to complete_below
  std::vector<std::pair<double, int>> levels;
  double cap = spec.complete_below;
  double count_at_cap = 0.0;
  for (std::size_t lv = 0; lv < spec.level_count(); ++lv) {
    if (spec.eigenvalues[lv] <= cap * (1.0 + 1e-12)) {
      levels.emplace_back(spec.eigenvalues[lv], spec.multiplicities[lv]);
      count_at_cap += spec.multiplicities[lv];
    }
  }
  require(!levels.empty(), ErrorCode::invalid_argument, "partition check: empty spectrum");

  pc.t.assign(t_grid.begin(), t_grid.end());
  pc.F.resize(pc.t.size());
  pc.tail_bound.resize(pc.t.size());
  for (std::size_t i = 0; i < pc.t.size(); ++i) {
    const double t = pc.t[i];
    double z = 0.0;
    for (const auto& [lam, mult] : levels) z += mult * std::exp(-t * lam);
    const double pref = sigma_variant ? std::pow(t, pc.exponent)
                                      : std::pow(t, pc.exponent) * std::exp(-pc.delta_used * t);
    pc.F[i] = pref * z;
    // tail of the heat sum above the truncation cap, under the monotone
    // growth model N(lambda) <= N(cap) * (lambda/cap)^{(d+2)/2}
    const double denom = cap * t - 0.5 * d;
    if (denom > 0.0 && cap > 0.0) {
      pc.tail_bound[i] = pref * count_at_cap * (d + 2.0) / 2.0 * std::exp(-t * cap) / denom;
    } else {
      pc.tail_bound[i] = std::numeric_limits<double>::infinity();
    }
  }

  pc.monotone = true;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < pc.t.size(); ++i) {
    const double diff = pc.F[i + 1] - pc.F[i];
    const double tail_tol = pc.tail_bound[i] + pc.tail_bound[i + 1];
    const double float_tol = 64.0 * std::numeric_limits<double>::epsilon() *
                             (std::fabs(pc.F[i]) + std::fabs(pc.F[i + 1]));
    const double tol = tail_tol + float_tol;
    const double fscale = std::max({std::fabs(pc.F[i]), std::fabs(pc.F[i + 1]), kTiny});
    if (!std::isfinite(tol) || tail_tol > 1e-6 * fscale) {
      pc.inconclusive = true;
      continue;
    }
    if (diff > tol) {
      pc.monotone = false;
      worst = std::max(worst, diff - tol);
    }
  }
  if (!pc.monotone) pc.inconclusive = false;
  if (std::isfinite(worst)) pc.notes = "worst forward-difference violation " + format_csv_double(worst);
  return pc;
}

double partition_function_value(const Spectrum& spec, int d, bool sigma_variant,
                                double delta_or_sigma, double t) {
  std::vector<double> one{t};
  const PartitionCheck pc = partition_monotonicity(spec, d, sigma_variant, delta_or_sigma, one);
  return pc.F[0];
}

BoundReport partition_report(const PartitionCheck& pc, const BoundParams& params) {
  const BoundId id = pc.sigma_variant ? BoundId::heat_trace_sigma : BoundId::heat_trace_delta;
  BoundReport r;
  r.id = id;
  r.params = params;
  r.tclass = params.grid_n == 0 ? ToleranceClass::exact : ToleranceClass::discretization;
  r.lhs = 0.0;
  r.rhs = 0.0;
  r.notes = pc.notes;
  if (pc.inconclusive) {
    r.inconclusive = true;
    r.holds = false;
    r.notes = "tail bound dominates on part of the t grid; " + pc.notes;
    return r;
  }
  r.holds = pc.monotone;
  if (!pc.F.empty()) {
    r.lhs = pc.F.back();
    r.rhs = pc.F.front();
    r.slack = r.rhs - r.lhs;
  }
  return r;
}

TraceCheckResult trace_sum_rule_check(const TridiagonalOperator& H,
                                      const std::vector<EigenPair>& basis,
                                      const DiscreteVectorOp& P, int d, double t,
                                      double degeneracy_tol) {
  const std::size_t n = H.size();
  require(basis.size() == n, ErrorCode::invalid_argument,
          "trace_sum_rule_check: full discrete eigenbasis required");
  require(t > 0.0, ErrorCode::invalid_argument, "trace_sum_rule_check: t must be positive");

  std::vector<std::vector<double>> u(n);
  std::vector<double> lam(n);
  for (std::size_t j = 0; j < n; ++j) {
    u[j] = to_plain(H.weights, basis[j].vector);
    lam[j] = basis[j].lambda;
  }

  double z = 0.0;
  for (std::size_t j = 0; j < n; ++j) z += std::exp(-t * lam[j]);

  double rhs_identity = 0.0;
  double rhs_bound = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double pnorm2 = 0.0;
    for (std::size_t m = 0; m < P.dim(); ++m) {
      const auto pu = P.components[m].apply(u[j]);
      pnorm2 += dot(pu, pu);
      for (std::size_t k = 0; k < n; ++k) {
        if (std::fabs(lam[k] - lam[j]) <= degeneracy_tol) continue;
        const double pkj = dot(u[k], pu);
        // (f(l_j) - f(l_k))/(l_j - l_k), f = exp(-t .), evaluated stably
        const double x = t * (lam[k] - lam[j]);
        const double phi = std::fabs(x) < 1e-8 ? 1.0 : -std::expm1(-x) / x;
        rhs_identity += pkj * pkj * (-t * std::exp(-t * lam[j]) * phi);
      }
    }
    rhs_bound += std::exp(-t * lam[j]) * pnorm2;
  }
  rhs_identity *= -2.0 / d;
  rhs_bound *= 2.0 * t / d;

  BoundParams params;
  params.d = d;
  params.grid_n = n;
  TraceCheckResult out;
  out.identity = make_identity_report(BoundId::trace_identity, z, rhs_identity,
                                      ToleranceClass::discretization,
                                      discretization_tolerance(n, z), params);
  out.bound = make_inequality_report(BoundId::trace_bound, z, rhs_bound,
                                     ToleranceClass::discretization,
                                     discretization_tolerance(n, z), params);
  return out;
}

}  // namespace specgap
