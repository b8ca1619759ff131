#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specgap/eigensolve.hpp"
#include "specgap/geometry.hpp"
#include "specgap/operators.hpp"
#include "specgap/spectrum.hpp"

namespace specgap {

enum class BoundId {
  commutator_identities,
  lemma_gap,
  gap_curve_energy,
  gap_hypersurface_energy,
  gap_delta,
  gap_sigma,
  ratio_universal,
  sum_rule_unit,
  hile_protter_delta,
  hile_protter_sigma,
  yang_quadratic,
  gap_interval_roots,
  gap_interval_sigma,
  gap_interval_printed_delta,
  heat_trace_delta,
  heat_trace_sigma,
  trace_identity,
  trace_bound,
};

const char* to_string(BoundId id);

enum class ToleranceClass { exact, discretization, informational };

const char* to_string(ToleranceClass c);

struct BoundParams {
  int d = 1;
  std::optional<double> g;
  std::optional<double> delta;
  std::optional<double> sigma;
  std::optional<std::size_t> n;
  std::size_t grid_n = 0;  // 0 for analytic spectra
};

/// Evaluation of one inequality or identity: lhs (<= or ==) rhs with slack
/// rhs - lhs. Identity-type checks set two_sided and hold iff |slack| <= tol.
struct BoundReport {
  BoundId id = BoundId::commutator_identities;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool holds = false;
  bool skipped = false;
  bool inconclusive = false;
  bool two_sided = false;
  ToleranceClass tclass = ToleranceClass::exact;
  double tolerance = 0.0;
  BoundParams params;
  std::string notes;
};

/// Reporting tolerance for algebraically exact checks.
double exact_tolerance(double rhs);
/// Reporting tolerance for checks limited by the O(ds^2) discretization,
/// pinned to a reference grid of 1024 nodes.
double discretization_tolerance(std::size_t grid_n, double scale);

// --- matrix-exact layer -----------------------------------------------------

/// Worst relative deviations of the commutator identities over the supplied
/// eigenpairs, plus the largest relative violation of the double-commutator
/// gap bound. All quantities are pure matrix algebra and grid independent.
struct IdentitySuiteResult {
  double first_commutator = 0.0;   // <u_j,[H,G]u_k> = (l_j-l_k)<u_j,G u_k>
  double norm_square = 0.0;        // ||[H,G]u_k||^2 = <Gu_k,(H-l_k)^2 Gu_k>
  double cross = 0.0;              // <[H,G]u_j,[H,G]u_k> = <Gu_j,(H-l_j)(H-l_k)Gu_k>
  double double_commutator = 0.0;  // <u_j,[G,[H,G]]u_j> = 2<Gu_j,(H-l_j)Gu_j>
  double lemma_violation = 0.0;    // max(0, lhs-rhs)/scale for the gap bound
  double degenerate_momentum = 0.0;  // P elements between merged-equal levels
  double max_any() const;
};

IdentitySuiteResult commutator_identity_suite(const TridiagonalOperator& H,
                                              std::span<const double> g_diag,
                                              const std::vector<EigenPair>& pairs,
                                              double degeneracy_tol);
BoundReport identity_suite_report(const IdentitySuiteResult& r, const BoundParams& params);

/// Gamma * <u1,[G,[H,G]]u1> <= 2 ||[H,G]u1||^2 for one diagonal G.
BoundReport gap_bound_lemma11(const TridiagonalOperator& H, std::span<const double> g_diag,
                              const EigenPair& u1, const Spectrum& spec);

// --- geometric gap bounds ---------------------------------------------------

/// Gamma <= 4 * Int((u1')^2 + kappa^2 u1^2 / 4) ds on a curve.
BoundReport gap_bound_curve(const EigenPair& u1, const CurveGeometry& geom, const Spectrum& spec);

/// Gamma <= (4/d) Int(|grad u1|^2 + h^2 u1^2 / 4) dVol on a surface of
/// revolution; u1 must be the angular-mode-0 ground state.
BoundReport gap_bound_hypersurface(const EigenPair& u1, const RevolutionGeometry& geom,
                                   const Spectrum& merged);

/// Same bound on the analytic sphere, where the ground state is constant and
/// the right side collapses to d.
BoundReport gap_bound_sphere_analytic(const SphereGeometry& sphere, const Spectrum& spec);

/// Gamma <= (4/d)(lambda_1 + delta).
BoundReport gap_delta_bound(const Spectrum& spec, int d, double delta, std::size_t grid_n);

/// Gamma <= (4 sigma / d) lambda_1 for H_g, g > 0.
BoundReport gap_sigma_bound(const Spectrum& spec, int d, double g, std::size_t grid_n);

/// lambda_2/lambda_1 <= (1+gd)/(gd) for g <= 1/4, (4+d)/d for g >= 1/4.
BoundReport ratio_bound(const Spectrum& spec, int d, double g, std::size_t grid_n);

// --- sum rules and momentum checks -------------------------------------------

struct SumRuleResult {
  BoundReport report;                 // lhs 1, rhs the evaluated sum, two-sided
  double max_algebraic_residual = 0;  // worst |<u_j,P u_k> + (l_j-l_k)/2 <u_j,X u_k>|
};

/// (4/d) sum_k |<u_k, P u_j>|^2 / (lambda_k - lambda_j) against 1, excluding
/// merged-degenerate terms, plus the exact algebraic layer check.
SumRuleResult sum_rule_residual(const TridiagonalOperator& H,
                                const std::vector<EigenPair>& basis, const DiscreteVectorOp& P,
                                const DiscreteVectorOp& X, std::size_t j, int d,
                                double degeneracy_tol);

// --- spectral-distribution bounds -------------------------------------------

/// 1 <= (4/(dn)) sum_{j<=n} (lambda_j + delta)/(lambda_{n+1} - lambda_j), or
/// with sigma*lambda_j weights. Skipped when lambda_{n+1} merges with lambda_n.
BoundReport hile_protter_check(const Spectrum& spec, std::size_t n, int d, bool sigma_weights,
                               double delta_or_sigma, std::size_t grid_n);

struct GapInterval {
  enum class Variant { quadratic_roots, sigma_form, printed_delta };
  Variant variant = Variant::quadratic_roots;
  std::size_t n = 0;
  double center = 0.0;
  double half_width = 0.0;
  double lambda_bar = 0.0;
  double lambda_sq_bar = 0.0;
  bool vacuous = false;  // negative discriminant
  double lo() const { return center - half_width; }
  double hi() const { return center + half_width; }
};

/// Root interval of the Yang quadratic
///   sum_j (z-lambda_j)^2 - (4/d) sum_j (z-lambda_j) w_j <= 0,
/// weights w_j = lambda_j + delta or sigma*lambda_j.
GapInterval yang_quadratic(const Spectrum& spec, std::size_t n, int d, bool sigma_weights,
                           double delta_or_sigma);
/// Printed closed forms; the sigma form coincides with the quadratic roots,
/// the delta form is evaluated verbatim for the side-by-side report.
GapInterval gap_interval_sigma(const Spectrum& spec, std::size_t n, int d, double sigma);
GapInterval gap_interval_printed_delta(const Spectrum& spec, std::size_t n, int d, double delta);

/// lambda_{n+1} <= z_plus from the Yang quadratic roots.
BoundReport yang_upper_check(const Spectrum& spec, std::size_t n, int d, bool sigma_weights,
                             double delta_or_sigma, std::size_t grid_n);
/// Containment [lambda_n, lambda_{n+1}] in the given interval.
BoundReport gap_interval_check(const GapInterval& gi, const Spectrum& spec, std::size_t grid_n);

// --- heat trace ---------------------------------------------------------------

struct PartitionCheck {
  std::vector<double> t;
  std::vector<double> F;
  std::vector<double> tail_bound;  // bound on the truncated-away part of Z(t)
  double delta_used = 0.0;
  double sigma_used = 1.0;
  double exponent = 0.0;  // d/2 (delta variant) or d/(2 sigma)
  bool sigma_variant = false;
  bool monotone = false;
  bool inconclusive = false;
  std::string notes;
};

/// Cor-style monotonicity of t^{d/2} e^{-delta t} Z(t) (general) or
/// t^{d/(2 sigma)} Z(t) (H_g): every forward difference must be below the
/// truncation-tail tolerance; dominated tails give an inconclusive result,
/// never a false pass.
PartitionCheck partition_monotonicity(const Spectrum& spec, int d, bool sigma_variant,
                                      double delta_or_sigma, std::span<const double> t_grid);
BoundReport partition_report(const PartitionCheck& pc, const BoundParams& params);

/// Value F(t) for one t (used by oracles and spot checks).
double partition_function_value(const Spectrum& spec, int d, bool sigma_variant,
                                double delta_or_sigma, double t);

struct TraceCheckResult {
  BoundReport identity;  // sum_j f(lambda_j) vs -(2/d) sum |P_jk|^2 diff quotient
  BoundReport bound;     // Z(t) <= (2t/d) sum_j e^{-t lambda_j} ||P u_j||^2
};

TraceCheckResult trace_sum_rule_check(const TridiagonalOperator& H,
                                      const std::vector<EigenPair>& basis,
                                      const DiscreteVectorOp& P, int d, double t,
                                      double degeneracy_tol);

}  // namespace specgap
