#include "specgap/operators.hpp"

#include <cmath>

#include "specgap/errors.hpp"
#include "specgap/report_io.hpp"

namespace specgap {

std::vector<double> TridiagonalOperator::apply(std::span<const double> x) const {
  const std::size_t n = size();
  require(x.size() == n, ErrorCode::invalid_argument, "operator apply: size mismatch");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += offdiag[i - 1] * x[i - 1];
    if (i + 1 < n) s += offdiag[i] * x[i + 1];
    y[i] = s;
  }
  if (corner && n >= 2) {
    y[0] += *corner * x[n - 1];
    y[n - 1] += *corner * x[0];
  }
  return y;
}

double TridiagonalOperator::norm_bound() const {
  const std::size_t n = size();
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::fabs(diag[i]);
    if (i > 0) row += std::fabs(offdiag[i - 1]);
    if (i + 1 < n) row += std::fabs(offdiag[i]);
    if (corner && (i == 0 || i + 1 == n)) row += std::fabs(*corner);
    m = std::max(m, row);
  }
  return m;
}

Matrix TridiagonalOperator::dense() const {
  const std::size_t n = size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = diag[i];
    if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = offdiag[i];
  }
  if (corner && n >= 2) m(0, n - 1) = m(n - 1, 0) = *corner;
  return m;
}

std::string TridiagonalOperator::debug_json() const {
  JsonWriter w;
  w.begin_object();
  w.kv("n", size());
  w.key("boundary").value(boundary == BoundaryKind::dirichlet  ? "dirichlet"
                          : boundary == BoundaryKind::periodic ? "periodic"
                                                               : "pole");
  w.kv("ds", ds);
  w.kv("geometry", geometry_id);
  w.key("diag").value_array(diag);
  w.key("offdiag").value_array(offdiag);
  w.key("corner");
  if (corner)
    w.value(*corner);
  else
    w.null_value();
  w.key("weights").value_array(weights);
  w.end_object();
  return w.str();
}

std::vector<double> PotentialSpec::realize(std::span<const double> h) const {
  if (kind == Kind::mean_curvature_squared) {
    std::vector<double> v(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) v[i] = g * h[i] * h[i];
    return v;
  }
  require(samples.size() == h.size(), ErrorCode::invalid_argument,
          "explicit potential samples do not match the grid");
  return samples;
}

TridiagonalOperator assemble_curve_hamiltonian(const CurveGeometry& geom,
                                               const PotentialSpec& V) {
  const std::size_t n = geom.size();
  require(n >= 2, ErrorCode::invalid_argument, "assemble_curve_hamiltonian: empty grid");
  const std::vector<double> v = V.realize(geom.kappa);

  TridiagonalOperator T;
  T.ds = geom.ds;
  T.geometry_id = geom.closed ? "closed-curve" : "open-curve";
  T.boundary = geom.closed ? BoundaryKind::periodic : BoundaryKind::dirichlet;
  const double inv2 = 1.0 / (geom.ds * geom.ds);
  T.diag.resize(n);
  T.offdiag.assign(n - 1, -inv2);
  T.weights.assign(n, geom.ds);
  for (std::size_t i = 0; i < n; ++i) T.diag[i] = 2.0 * inv2 + v[i];
  if (geom.closed) T.corner = -inv2;
  return T;
}

TridiagonalOperator assemble_mode_hamiltonian(const RevolutionGeometry& geom,
                                              const PotentialSpec& V, int m) {
  require(m >= 0, ErrorCode::invalid_argument, "assemble_mode_hamiltonian: m must be >= 0");
  const std::size_t n = geom.size();
  require(n >= 2, ErrorCode::invalid_argument, "assemble_mode_hamiltonian: empty grid");
  const std::vector<double> v = V.realize(geom.h);

  TridiagonalOperator T;
  T.ds = geom.ds;
  T.geometry_id = "revolution-mode-" + std::to_string(m);
  T.boundary = geom.periodic()                        ? BoundaryKind::periodic
               : geom.grid == RevolutionGrid::interior ? BoundaryKind::dirichlet
                                                        : BoundaryKind::pole;
  T.weights = geom.weight;
  const double inv2 = 1.0 / (geom.ds * geom.ds);
  const double mm = static_cast<double>(m) * m;

  T.diag.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double flux = (geom.r_face[i] + geom.r_face[i + 1]) / geom.r[i];
    T.diag[i] = flux * inv2 + mm / (geom.r[i] * geom.r[i]) + v[i];
  }
  if (geom.grid == RevolutionGrid::staggered) {
    // Dirichlet closure at a non-pole end of a staggered grid: the boundary
    // sits on the face, handled by odd reflection. Pole faces have r = 0 and
    // need nothing.
    if (geom.left_end == ProfileEnd::boundary)
      T.diag[0] += geom.r_face[0] / geom.r[0] * inv2;
    if (geom.right_end == ProfileEnd::boundary)
      T.diag[n - 1] += geom.r_face[n] / geom.r[n - 1] * inv2;
  }

  T.offdiag.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    T.offdiag[i] = -geom.r_face[i + 1] / std::sqrt(geom.r[i] * geom.r[i + 1]) * inv2;
  if (geom.periodic())
    T.corner = -geom.r_face[0] / std::sqrt(geom.r[0] * geom.r[n - 1]) * inv2;
  return T;
}

std::vector<double> VectorOpComponent::apply(std::span<const double> x) const {
  if (form == Form::diagonal) {
    require(x.size() == diag.size(), ErrorCode::invalid_argument, "vector op apply: size mismatch");
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = diag[i] * x[i];
    return y;
  }
  const std::size_t n = upper.size() + 1;
  require(x.size() == n, ErrorCode::invalid_argument, "vector op apply: size mismatch");
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    y[i] += upper[i] * x[i + 1];
    y[i + 1] -= upper[i] * x[i];
  }
  if (corner_upper) {
    y[0] += *corner_upper * x[n - 1];
    y[n - 1] -= *corner_upper * x[0];
  }
  return y;
}

Matrix VectorOpComponent::dense() const {
  const std::size_t n = size();
  Matrix m(n, n);
  if (form == Form::diagonal) {
    for (std::size_t i = 0; i < n; ++i) m(i, i) = diag[i];
    return m;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = upper[i];
    m(i + 1, i) = -upper[i];
  }
  if (corner_upper) {
    m(0, n - 1) = *corner_upper;
    m(n - 1, 0) = -*corner_upper;
  }
  return m;
}

VectorOpComponent& VectorOpComponent::operator*=(double c) {
  for (auto& x : diag) x *= c;
  for (auto& x : upper) x *= c;
  if (corner_upper) *corner_upper *= c;
  return *this;
}

DiscreteVectorOp position_operators(const CurveGeometry& geom) {
  require(geom.has_embedding(), ErrorCode::needs_embedding,
          "position_operators: geometry has no reconstructed embedding");
  DiscreteVectorOp X;
  for (int m = 0; m < 2; ++m) {
    VectorOpComponent c;
    c.form = VectorOpComponent::Form::diagonal;
    c.diag.resize(geom.size());
    for (std::size_t i = 0; i < geom.size(); ++i)
      c.diag[i] = geom.position[i][static_cast<std::size_t>(m)];
    X.components.push_back(std::move(c));
  }
  return X;
}

VectorOpComponent commutator_with_diagonal(const TridiagonalOperator& H,
                                           std::span<const double> g) {
  const std::size_t n = H.size();
  require(g.size() == n, ErrorCode::invalid_argument, "commutator_with_diagonal: size mismatch");
  VectorOpComponent c;
  c.form = VectorOpComponent::Form::commutator_like;
  c.upper.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) c.upper[i] = H.offdiag[i] * (g[i + 1] - g[i]);
  if (H.corner) c.corner_upper = *H.corner * (g[n - 1] - g[0]);
  return c;
}

TridiagonalOperator double_commutator_with_diagonal(const TridiagonalOperator& H,
                                                    std::span<const double> g) {
  const std::size_t n = H.size();
  require(g.size() == n, ErrorCode::invalid_argument,
          "double_commutator_with_diagonal: size mismatch");
  TridiagonalOperator D;
  D.ds = H.ds;
  D.boundary = H.boundary;
  D.geometry_id = H.geometry_id;
  D.weights = H.weights;
  D.diag.assign(n, 0.0);
  D.offdiag.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dg = g[i + 1] - g[i];
    D.offdiag[i] = -dg * dg * H.offdiag[i];
  }
  if (H.corner) {
    const double dg = g[n - 1] - g[0];
    D.corner = -dg * dg * *H.corner;
  }
  return D;
}

DiscreteVectorOp momentum_operator(const TridiagonalOperator& H, const DiscreteVectorOp& X) {
  DiscreteVectorOp P;
  for (const auto& xm : X.components) {
    require(xm.form == VectorOpComponent::Form::diagonal, ErrorCode::invalid_argument,
            "momentum_operator: position components must be diagonal");
    VectorOpComponent pm = commutator_with_diagonal(H, xm.diag);
    pm *= -0.5;
    P.components.push_back(std::move(pm));
  }
  return P;
}

}  // namespace specgap
