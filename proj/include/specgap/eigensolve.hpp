#pragma once

#include <span>
#include <vector>

#include "specgap/operators.hpp"
#include "specgap/spectrum.hpp"

namespace specgap {

/// One computed eigenpair. `vector` holds function-space values with
/// weighted 2-norm 1 (sum w_i v_i^2 = 1); `residual` is ||T u - lambda u||_2
/// of the plain-symmetric picture, u = sqrt(w) .* vector.
struct EigenPair {
  double lambda = 0.0;
  std::vector<double> vector;
  double residual = 0.0;
};

/// Number of eigenvalues of T strictly below `shift` (negative inertia of
/// T - shift*I), handling the periodic corner when present.
int inertia_below(const TridiagonalOperator& T, double shift);

/// k smallest eigenpairs by Sturm bisection plus inverse iteration with
/// reorthogonalization of near-degenerate clusters. Requires no corner.
std::vector<EigenPair> solve_symmetric_tridiagonal(const TridiagonalOperator& T, std::size_t k);

struct CornerSolveResult {
  std::vector<EigenPair> pairs;
  std::vector<double> all_eigenvalues;  // filled only when requested
};

/// Periodic path: Householder tridiagonalization of the dense symmetric
/// matrix, tridiagonal solve, reflector back-transform, then a one-step
/// inverse-iteration polish against the original corner matrix.
CornerSolveResult solve_with_corner_full(const TridiagonalOperator& T, std::size_t k,
                                         bool want_all_eigenvalues, std::size_t dense_cap = 4096);
std::vector<EigenPair> solve_with_corner(const TridiagonalOperator& T, std::size_t k,
                                         std::size_t dense_cap = 4096);

/// Every eigenvalue, values only. Dispatches on the corner.
std::vector<double> all_eigenvalues(const TridiagonalOperator& T, std::size_t dense_cap = 4096);

/// Default degeneracy tolerance 1e-9 * (1 + |lambda_max_computed|).
double default_degeneracy_tol(std::span<const double> values);

/// Merge a single operator's eigenpairs into a Spectrum (multiplicity by
/// coalescing within tol, residual per level = max over members).
Spectrum merge_eigenpairs(const std::vector<EigenPair>& pairs, double tol);

// Weighted-metric helpers shared with the bound evaluators.
double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b);
std::vector<double> to_plain(std::span<const double> w, std::span<const double> v_func);
std::vector<double> to_function(std::span<const double> w, std::span<const double> v_plain);

}  // namespace specgap
