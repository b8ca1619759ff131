#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specgap/geometry.hpp"
#include "specgap/matrix.hpp"

namespace specgap {

enum class BoundaryKind { dirichlet, periodic, pole };

/// Symmetric tridiagonal operator, optionally with periodic corner entries.
/// Always stored in the plain-symmetric picture: revolution-mode operators are
/// similarity-transformed by sqrt(weights) at assembly, so eigenvectors of
/// this matrix are sqrt(w_i) times the function values. `weights` is the
/// inner-product measure of the underlying function space (ds for curves,
/// r_i*ds for revolution modes).
struct TridiagonalOperator {
  std::vector<double> diag;
  std::vector<double> offdiag;       // size n-1
  std::optional<double> corner;      // wrap entry at (0,n-1) and (n-1,0)
  std::vector<double> weights;
  BoundaryKind boundary = BoundaryKind::dirichlet;
  double ds = 0.0;
  std::string geometry_id;

  std::size_t size() const { return diag.size(); }
  bool has_corner() const { return corner.has_value(); }
  std::vector<double> apply(std::span<const double> x) const;
  /// Gershgorin bound on the spectral radius.
  double norm_bound() const;
  Matrix dense() const;
  std::string debug_json() const;
};

struct PotentialSpec {
  enum class Kind { explicit_samples, mean_curvature_squared };
  Kind kind = Kind::mean_curvature_squared;
  double g = 0.0;                 // used when kind == mean_curvature_squared
  std::vector<double> samples;    // used when kind == explicit_samples

  static PotentialSpec zero() { return curvature_squared(0.0); }
  static PotentialSpec curvature_squared(double g) {
    PotentialSpec p;
    p.kind = Kind::mean_curvature_squared;
    p.g = g;
    return p;
  }
  static PotentialSpec explicit_samples(std::vector<double> v) {
    PotentialSpec p;
    p.kind = Kind::explicit_samples;
    p.samples = std::move(v);
    return p;
  }
  bool is_hg() const { return kind == Kind::mean_curvature_squared; }
  /// Potential samples on a grid with mean-curvature-sum samples `h`.
  std::vector<double> realize(std::span<const double> h) const;
};

/// H = -d^2/ds^2 + V on the curve's arc-length grid; Dirichlet ends for open
/// curves, corner entries for closed ones.
TridiagonalOperator assemble_curve_hamiltonian(const CurveGeometry& geom,
                                               const PotentialSpec& V);

/// Angular-mode Hamiltonian -(1/r)(r u')' + m^2/r^2 + V of a surface of
/// revolution, assembled in flux form with exact face radii and returned in
/// the plain-symmetric picture.
TridiagonalOperator assemble_mode_hamiltonian(const RevolutionGeometry& geom,
                                              const PotentialSpec& V, int m);

/// One ambient component of a vector-valued operator: either diagonal
/// (position) or an antisymmetric matrix with the Hamiltonian's sparsity
/// pattern (momentum, first commutators).
struct VectorOpComponent {
  enum class Form { diagonal, commutator_like };
  Form form = Form::diagonal;
  std::vector<double> diag;        // diagonal form
  std::vector<double> upper;       // (i,i+1); (i+1,i) = -upper[i]
  std::optional<double> corner_upper;  // (0,n-1); (n-1,0) = -corner_upper

  std::size_t size() const { return form == Form::diagonal ? diag.size() : upper.size() + 1; }
  std::vector<double> apply(std::span<const double> x) const;
  Matrix dense() const;
  VectorOpComponent& operator*=(double c);
};

struct DiscreteVectorOp {
  std::vector<VectorOpComponent> components;
  std::size_t dim() const { return components.size(); }
};

/// Diagonal position operators from the reconstructed embedding.
DiscreteVectorOp position_operators(const CurveGeometry& geom);

/// [H, diag(g)]: antisymmetric, same sparsity as H.
VectorOpComponent commutator_with_diagonal(const TridiagonalOperator& H, std::span<const double> g);

/// [diag(g), [H, diag(g)]]: symmetric with zero diagonal; returned with H's
/// weights and metadata.
TridiagonalOperator double_commutator_with_diagonal(const TridiagonalOperator& H,
                                                    std::span<const double> g);

/// P_m = -(1/2) [H, X_m]. The potential commutes with X, so this equals
/// (1/2) [Delta_disc, X_m] exactly.
DiscreteVectorOp momentum_operator(const TridiagonalOperator& H, const DiscreteVectorOp& X);

}  // namespace specgap
