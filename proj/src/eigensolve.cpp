#include "specgap/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specgap/errors.hpp"
#include "specgap/geometry.hpp"  // SplitMix64
#include "specgap/matrix.hpp"

namespace specgap {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// ---------------------------------------------------------------------------
// plain symmetric tridiagonal core
// ---------------------------------------------------------------------------

struct TridiagCore {
  std::vector<double> d, e, e2;
  double norm = 0.0;  // Gershgorin radius bound

  TridiagCore(std::span<const double> diag, std::span<const double> off)
      : d(diag.begin(), diag.end()), e(off.begin(), off.end()) {
    e2.resize(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) e2[i] = e[i] * e[i];
    for (std::size_t i = 0; i < d.size(); ++i) {
      double row = std::fabs(d[i]);
      if (i > 0) row += std::fabs(e[i - 1]);
      if (i < e.size()) row += std::fabs(e[i]);
      norm = std::max(norm, row);
    }
    norm = std::max(norm, 1e-300);
  }

  std::size_t size() const { return d.size(); }

  // Sturm count: number of eigenvalues strictly below x.
  int count_below(double x) const {
    int s = 0;
    double u = 1.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      double v;
      if (u != 0.0) {
        v = i == 0 ? 0.0 : e2[i - 1] / u;
      } else {
        v = i == 0 ? 0.0 : std::fabs(e[i - 1]) / kEps;
      }
      u = d[i] - x - v;
      if (u < 0.0) ++s;
    }
    return s;
  }

  // Bisection for eigenvalues [first, first+count) (0-based ascending).
  std::vector<double> bisect(std::size_t first, std::size_t count) const {
    std::vector<double> out(count);
    double glo = d[0], ghi = d[0];
    for (std::size_t i = 0; i < d.size(); ++i) {
      double r = (i > 0 ? std::fabs(e[i - 1]) : 0.0) + (i < e.size() ? std::fabs(e[i]) : 0.0);
      glo = std::min(glo, d[i] - r);
      ghi = std::max(ghi, d[i] + r);
    }
    double lo_floor = glo;
    for (std::size_t j = 0; j < count; ++j) {
      const int want = static_cast<int>(first + j) + 1;  // count_below >= want above lambda_j
      double lo = lo_floor, hi = ghi;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (count_below(mid) >= want)
          hi = mid;
        else
          lo = mid;
      }
      out[j] = 0.5 * (lo + hi);
      lo_floor = lo;  // eigenvalues are ascending
    }
    return out;
  }
};

// LU factorization of (T - mu I) with partial pivoting, for inverse iteration.
struct TriLU {
  std::size_t n;
  std::vector<double> dl, dd, du, du2;
  std::vector<char> piv;

  TriLU(const TridiagCore& t, double mu) : n(t.size()), dl(n), dd(n), du(n), du2(n), piv(n, 0) {
    const double tiny = kEps * t.norm * 1e-3 + 1e-300;
    for (std::size_t i = 0; i < n; ++i) dd[i] = t.d[i] - mu;
    for (std::size_t i = 0; i + 1 < n; ++i) du[i] = t.e[i];
    for (std::size_t k = 0; k + 1 < n; ++k) {
      double sub = t.e[k];
      if (std::fabs(sub) > std::fabs(dd[k])) {
        piv[k] = 1;
        std::swap(dd[k], sub);
        const double tmp = du[k];
        du[k] = dd[k + 1];
        dd[k + 1] = tmp;
        if (k + 2 < n) {
          du2[k] = du[k + 1];
          du[k + 1] = 0.0;
        }
      }
      if (dd[k] == 0.0) dd[k] = tiny;
      const double m = sub / dd[k];
      dl[k] = m;
      dd[k + 1] -= m * du[k];
      if (k + 2 < n) du[k + 1] -= m * du2[k];
    }
    if (dd[n - 1] == 0.0) dd[n - 1] = tiny;
  }

  void solve(std::vector<double>& b) const {
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (piv[k]) std::swap(b[k], b[k + 1]);
      b[k + 1] -= dl[k] * b[k];
    }
    b[n - 1] /= dd[n - 1];
    if (n >= 2) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / dd[n - 2];
    for (std::size_t k = n; k-- > 2;) {
      const std::size_t i = k - 2;
      b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / dd[i];
    }
  }
};

// ---------------------------------------------------------------------------
// bordered (tridiagonal + periodic corner) LU with partial pivoting
// ---------------------------------------------------------------------------

// Rows touched during elimination have at most four entries: the pivot
// column, the next two columns, and the border column n-1. The last row is
// kept dense.
struct BorderedLU {
  std::size_t n;
  std::vector<double> pd, pu1, pu2, pub;  // stored pivot rows
  std::vector<double> ml, mb;             // multipliers for row k+1 and bottom
  std::vector<char> swapped;
  char swap_last = 0;

  BorderedLU(const TridiagonalOperator& T, double mu) { factor(T, mu); }

  void factor(const TridiagonalOperator& T, double mu) {
    n = T.size();
    require(n >= 3 && T.corner.has_value(), ErrorCode::invalid_argument,
            "BorderedLU: periodic matrix of size >= 3 required");
    const double corner = *T.corner;
    const double tiny = kEps * std::max(T.norm_bound(), 1e-300) * 1e-3 + 1e-300;

    pd.assign(n, 0.0);
    pu1.assign(n, 0.0);
    pu2.assign(n, 0.0);
    pub.assign(n, 0.0);
    ml.assign(n, 0.0);
    mb.assign(n, 0.0);
    swapped.assign(n, 0);

    // current structured row: values at columns k, k+1, k+2, n-1
    double c0 = T.diag[0] - mu, c1 = T.offdiag[0], c2 = 0.0, cb = corner;
    std::vector<double> bot(n, 0.0);
    bot[0] = corner;
    bot[n - 2] = T.offdiag[n - 2];
    bot[n - 1] = T.diag[n - 1] - mu;

    for (std::size_t k = 0; k + 2 < n; ++k) {
      // fresh row k+1: sub, diag, super (super may be the border column)
      double r0 = T.offdiag[k];
      double r1 = T.diag[k + 1] - mu;
      double r2 = 0.0, rb = 0.0;
      if (k + 2 < n - 1)
        r2 = T.offdiag[k + 1];
      else
        rb = T.offdiag[k + 1];  // k+2 == n-1: superdiagonal is the border column
      if (k + 1 == n - 1) {     // unreachable given loop bound, kept for clarity
        r0 = bot[k];
      }
      if (std::fabs(r0) > std::fabs(c0)) {
        swapped[k] = 1;
        std::swap(c0, r0);
        std::swap(c1, r1);
        std::swap(c2, r2);
        std::swap(cb, rb);
      }
      if (c0 == 0.0) c0 = tiny;
      const double m1 = r0 / c0;
      r1 -= m1 * c1;
      r2 -= m1 * c2;
      rb -= m1 * cb;
      const double m2 = bot[k] / c0;
      bot[k + 1] -= m2 * c1;
      if (k + 2 < n - 1)
        bot[k + 2] -= m2 * c2;
      else
        bot[n - 1] -= m2 * c2;  // c2 lives at column k+2 == n-1 only after swaps
      bot[n - 1] -= m2 * cb;
      ml[k] = m1;
      mb[k] = m2;
      pd[k] = c0;
      pu1[k] = c1;
      pu2[k] = c2;
      pub[k] = cb;
      // shift row k+1 into the current slot for the next step
      c0 = r1;
      c1 = r2;
      c2 = 0.0;
      cb = rb;
      if (k + 2 == n - 1) {  // next row's superdiagonal column is n-1
        c1 = 0.0;
        cb += r2;
      }
    }
    // final 2x2 block on columns n-2, n-1: current row vs dense bottom
    double a = c0, b = c1 + cb;  // both refer to column n-1 here
    double cbot = bot[n - 2], dbot = bot[n - 1];
    if (std::fabs(cbot) > std::fabs(a)) {
      swap_last = 1;
      std::swap(a, cbot);
      std::swap(b, dbot);
    }
    if (a == 0.0) a = tiny;
    const double m = cbot / a;
    dbot -= m * b;
    if (dbot == 0.0) dbot = tiny;
    pd[n - 2] = a;
    pu1[n - 2] = b;
    mb[n - 2] = m;
    pd[n - 1] = dbot;
  }

  void solve(std::vector<double>& x) const {
    for (std::size_t k = 0; k + 2 < n; ++k) {
      if (swapped[k]) std::swap(x[k], x[k + 1]);
      x[k + 1] -= ml[k] * x[k];
      x[n - 1] -= mb[k] * x[k];
    }
    if (swap_last) std::swap(x[n - 2], x[n - 1]);
    x[n - 1] -= mb[n - 2] * x[n - 2];

    x[n - 1] /= pd[n - 1];
    x[n - 2] = (x[n - 2] - pu1[n - 2] * x[n - 1]) / pd[n - 2];
    for (std::size_t k = n - 2; k-- > 0;) {
      double s = x[k] - pu1[k] * x[k + 1] - pub[k] * x[n - 1];
      if (k + 2 < n) s -= pu2[k] * x[k + 2];
      x[k] = s / pd[k];
    }
  }
};

// Negative inertia of the bordered matrix via symmetric (no-pivot) LDL^T with
// safeguarded pivots; the standard Sturm-count trade-off.
int corner_inertia_below(const TridiagonalOperator& T, double x) {
  const std::size_t n = T.size();
  const double corner = *T.corner;
  const double tiny = kEps * std::max(T.norm_bound(), 1e-300) + 1e-300;
  int count = 0;
  double q = T.diag[0] - x;
  double col = corner;          // entry (k, n-1) of the reduced matrix
  double last = T.diag[n - 1] - x;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    if (q < 0.0) ++count;
    double piv = q;
    if (std::fabs(piv) < tiny) piv = piv < 0.0 ? -tiny : tiny;
    const double offk = T.offdiag[k];
    last -= col * col / piv;
    double col_next = -offk * col / piv;
    if (k + 2 == n - 1) col_next += T.offdiag[k + 1];
    q = T.diag[k + 1] - x - offk * offk / piv;
    col = col_next;
  }
  if (q < 0.0) ++count;
  double piv = q;
  if (std::fabs(piv) < tiny) piv = piv < 0.0 ? -tiny : tiny;
  last -= col * col / piv;
  if (last < 0.0) ++count;
  return count;
}

// ---------------------------------------------------------------------------
// inverse iteration
// ---------------------------------------------------------------------------

void fill_random_unit(std::vector<double>& v, SplitMix64& rng) {
  double s = 0.0;
  for (auto& x : v) {
    x = 2.0 * rng.uniform() - 1.0;
    s += x * x;
  }
  s = std::sqrt(s);
  for (auto& x : v) x /= s;
}

// Modified Gram-Schmidt against the vectors [begin, end) of `basis`.
// Returns the remaining norm (vector is renormalized unless it collapsed).
double orthogonalize(std::vector<double>& v, const std::vector<std::vector<double>>& basis,
                     std::size_t begin, std::size_t end) {
  for (std::size_t j = begin; j < end; ++j) {
    const double c = dot(v, basis[j]);
    axpy(-c, basis[j], v);
  }
  const double nrm = norm2(v);
  if (nrm > 1e-3) {
    for (auto& x : v) x /= nrm;
  }
  return nrm;
}

struct InvitProblem {
  std::size_t n;
  double norm;
  // apply the operator and solve (A - mu I) x = b
  std::function<std::vector<double>(std::span<const double>)> apply;
  std::function<void(double mu, std::vector<double>&)> shifted_solve;
};

// Inverse iteration for the eigenvalue estimates `lambda` (ascending), with
// shared-shift cluster reorthogonalization. Returns plain-picture vectors.
void inverse_iterate(const InvitProblem& p, std::vector<double>& lambda,
                     std::vector<std::vector<double>>& vecs, std::vector<double>& residuals,
                     double cluster_tol) {
  const std::size_t k = lambda.size();
  vecs.assign(k, {});
  residuals.assign(k, 0.0);
  SplitMix64 rng(0x5eed5eed5eed5eedULL ^ (p.n * 0x9e3779b97f4a7c15ULL));

  const double accept = 64.0 * kEps * p.norm;
  std::size_t cluster_begin = 0;
  for (std::size_t j = 0; j < k; ++j) {
    if (j > 0 && lambda[j] - lambda[j - 1] > cluster_tol) cluster_begin = j;
    std::vector<double> v(p.n);
    double best_res = std::numeric_limits<double>::infinity();
    std::vector<double> best_v;
    double best_rho = lambda[j];
    bool done = false;
    for (int restart = 0; restart < 4 && !done; ++restart) {
      const double shift =
          lambda[j] + (restart > 0 ? restart * 16.0 * kEps * p.norm : 0.0);
      fill_random_unit(v, rng);
      orthogonalize(v, vecs, cluster_begin, j);
      for (int it = 0; it < 6; ++it) {
        p.shifted_solve(shift, v);
        double nrm = norm2(v);
        if (!(nrm > 0.0) || !std::isfinite(nrm)) {
          fill_random_unit(v, rng);
          continue;
        }
        for (auto& x : v) x /= nrm;
        if (orthogonalize(v, vecs, cluster_begin, j) <= 1e-3) {
          fill_random_unit(v, rng);
          orthogonalize(v, vecs, cluster_begin, j);
          continue;
        }
        const auto av = p.apply(v);
        const double rho = dot(v, av);
        double res = 0.0;
        for (std::size_t i = 0; i < p.n; ++i) {
          const double r = av[i] - rho * v[i];
          res += r * r;
        }
        res = std::sqrt(res);
        if (res < best_res) {
          best_res = res;
          best_v = v;
          best_rho = rho;
        }
        if (res <= accept) {
          done = true;
          break;
        }
      }
    }
    require(std::isfinite(best_res) && !best_v.empty(), ErrorCode::solver_failure,
            "inverse iteration failed to produce a vector for eigenvalue index " +
                std::to_string(j));
    require(best_res <= 1e6 * accept, ErrorCode::solver_failure,
            "inverse iteration did not converge: residual " + std::to_string(best_res) +
                " for eigenvalue " + std::to_string(lambda[j]));
    vecs[j] = std::move(best_v);
    lambda[j] = best_rho;
    residuals[j] = best_res;
  }
}

std::vector<EigenPair> finish_pairs(const TridiagonalOperator& T, std::vector<double> lambda,
                                    std::vector<std::vector<double>> vecs,
                                    std::vector<double> residuals) {
  // Rayleigh quotients may reorder inside clusters; restore ascending order.
  const std::size_t k = lambda.size();
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return lambda[a] < lambda[b]; });
  std::vector<EigenPair> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    EigenPair& p = out[i];
    p.lambda = lambda[idx[i]];
    p.residual = residuals[idx[i]];
    p.vector = to_function(T.weights, vecs[idx[i]]);
  }
  return out;
}

}  // namespace

int inertia_below(const TridiagonalOperator& T, double shift) {
  require(T.size() >= 1, ErrorCode::invalid_argument, "inertia_below: empty operator");
  if (T.has_corner()) return corner_inertia_below(T, shift);
  TridiagCore core(T.diag, T.offdiag);
  return core.count_below(shift);
}

std::vector<EigenPair> solve_symmetric_tridiagonal(const TridiagonalOperator& T, std::size_t k) {
  require(!T.has_corner(), ErrorCode::invalid_argument,
          "solve_symmetric_tridiagonal: corner entries present; use solve_with_corner");
  const std::size_t n = T.size();
  require(k >= 1 && k <= n, ErrorCode::invalid_argument,
          "solve_symmetric_tridiagonal: k out of range");
  if (n == 1) {
    EigenPair p;
    p.lambda = T.diag[0];
    p.vector = {1.0 / std::sqrt(T.weights[0])};
    p.residual = 0.0;
    return {p};
  }
  TridiagCore core(T.diag, T.offdiag);
  std::vector<double> lambda = core.bisect(0, k);
  const double cluster_tol = 1e-7 * core.norm;

  InvitProblem prob;
  prob.n = n;
  prob.norm = core.norm;
  prob.apply = [&T](std::span<const double> x) { return T.apply(x); };
  prob.shifted_solve = [&core](double mu, std::vector<double>& b) {
    TriLU lu(core, mu);
    lu.solve(b);
  };
  std::vector<std::vector<double>> vecs;
  std::vector<double> residuals;
  inverse_iterate(prob, lambda, vecs, residuals, cluster_tol);
  return finish_pairs(T, std::move(lambda), std::move(vecs), std::move(residuals));
}

namespace {

// Unblocked symmetric Householder reduction, lower triangle; reflectors are
// left below the subdiagonal, scaled so H_k = I - beta_k u_k u_k^T.
void householder_tridiagonalize(Matrix& a, std::vector<double>& d, std::vector<double>& e,
                                std::vector<double>& beta) {
  const std::size_t n = a.rows();
  d.assign(n, 0.0);
  e.assign(n >= 1 ? n - 1 : 0, 0.0);
  beta.assign(n >= 2 ? n - 2 : 0, 0.0);
  std::vector<double> v(n), w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    double scale = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double x = a(k + 1 + i, k);
      scale += x * x;
    }
    double alpha = std::sqrt(scale);
    if (a(k + 1, k) > 0) alpha = -alpha;
    d[k] = a(k, k);
    e[k] = alpha;
    const double denom = scale - alpha * a(k + 1, k);
    if (!(denom > 0.0)) {
      beta[k] = 0.0;
      continue;
    }
    v[0] = a(k + 1, k) - alpha;
    for (std::size_t i = 1; i < m; ++i) v[i] = a(k + 1 + i, k);
    const double b = 1.0 / denom;
    beta[k] = b;
    for (std::size_t i = 0; i < m; ++i) a(k + 1 + i, k) = v[i];  // store reflector

    // w = b * A22 v, lower triangle only, each element used twice
    for (std::size_t i = 0; i < m; ++i) w[i] = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double* row = &a(k + 1 + i, k + 1);
      const double vi = v[i];
      double s = row[i] * vi;
      for (std::size_t j = 0; j < i; ++j) {
        s += row[j] * v[j];
        w[j] += row[j] * vi;
      }
      w[i] += s;
    }
    double kc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      w[i] *= b;
      kc += v[i] * w[i];
    }
    kc *= 0.5 * b;
    for (std::size_t i = 0; i < m; ++i) w[i] -= kc * v[i];
    for (std::size_t i = 0; i < m; ++i) {
      double* row = &a(k + 1 + i, k + 1);
      const double vi = v[i], wi = w[i];
      for (std::size_t j = 0; j <= i; ++j) row[j] -= vi * w[j] + wi * v[j];
    }
  }
  if (n >= 2) {
    d[n - 2] = a(n - 2, n - 2);
    e[n - 2] = a(n - 1, n - 2);
  }
  d[n - 1] = a(n - 1, n - 1);
}

// v := Q v with Q = H_0 H_1 ... H_{n-3}
void apply_q(const Matrix& a, const std::vector<double>& beta, std::vector<double>& v) {
  const std::size_t n = a.rows();
  for (std::size_t kk = beta.size(); kk-- > 0;) {
    if (beta[kk] == 0.0) continue;
    const std::size_t m = n - kk - 1;
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += a(kk + 1 + i, kk) * v[kk + 1 + i];
    s *= beta[kk];
    for (std::size_t i = 0; i < m; ++i) v[kk + 1 + i] -= s * a(kk + 1 + i, kk);
  }
}

}  // namespace

CornerSolveResult solve_with_corner_full(const TridiagonalOperator& T, std::size_t k,
                                         bool want_all_eigenvalues, std::size_t dense_cap) {
  require(T.has_corner(), ErrorCode::invalid_argument,
          "solve_with_corner: no corner entries; use solve_symmetric_tridiagonal");
  const std::size_t n = T.size();
  require(n <= dense_cap, ErrorCode::size_exceeded,
          "solve_with_corner: dimension " + std::to_string(n) + " exceeds dense cap " +
              std::to_string(dense_cap) + "; reduce N or raise the cap");
  require(k <= n, ErrorCode::invalid_argument, "solve_with_corner: k out of range");
  require(n >= 3, ErrorCode::invalid_argument, "solve_with_corner: need n >= 3");

  Matrix a = T.dense();
  std::vector<double> d, e, beta;
  householder_tridiagonalize(a, d, e, beta);
  TridiagCore core(d, e);

  CornerSolveResult result;
  if (want_all_eigenvalues) result.all_eigenvalues = core.bisect(0, n);

  if (k == 0) return result;
  std::vector<double> lambda;
  if (want_all_eigenvalues) {
    lambda.assign(result.all_eigenvalues.begin(), result.all_eigenvalues.begin() + k);
  } else {
    lambda = core.bisect(0, k);
  }
  const double cluster_tol = 1e-7 * core.norm;

  InvitProblem prob;
  prob.n = n;
  prob.norm = core.norm;
  // reduced-basis operator apply: y = T_tri x
  prob.apply = [&core](std::span<const double> x) {
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      double s = core.d[i] * x[i];
      if (i > 0) s += core.e[i - 1] * x[i - 1];
      if (i + 1 < x.size()) s += core.e[i] * x[i + 1];
      y[i] = s;
    }
    return y;
  };
  prob.shifted_solve = [&core](double mu, std::vector<double>& b) {
    TriLU lu(core, mu);
    lu.solve(b);
  };
  std::vector<std::vector<double>> vecs;
  std::vector<double> residuals;
  inverse_iterate(prob, lambda, vecs, residuals, cluster_tol);

  // back-transform and polish against the original corner matrix
  for (std::size_t j = 0; j < vecs.size(); ++j) {
    apply_q(a, beta, vecs[j]);
    BorderedLU lu(T, lambda[j]);
    lu.solve(vecs[j]);
    const double nrm = norm2(vecs[j]);
    for (auto& x : vecs[j]) x /= nrm;
  }
  // restore orthogonality inside clusters after the independent polish steps
  std::size_t cluster_begin = 0;
  for (std::size_t j = 0; j < vecs.size(); ++j) {
    if (j > 0 && lambda[j] - lambda[j - 1] > cluster_tol) cluster_begin = j;
    orthogonalize(vecs[j], vecs, cluster_begin, j);
    const auto av = T.apply(vecs[j]);
    const double rho = dot(vecs[j], av);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = av[i] - rho * vecs[j][i];
      res += r * r;
    }
    lambda[j] = rho;
    residuals[j] = std::sqrt(res);
  }
  result.pairs = finish_pairs(T, std::move(lambda), std::move(vecs), std::move(residuals));
  return result;
}

std::vector<EigenPair> solve_with_corner(const TridiagonalOperator& T, std::size_t k,
                                         std::size_t dense_cap) {
  return solve_with_corner_full(T, k, false, dense_cap).pairs;
}

std::vector<double> all_eigenvalues(const TridiagonalOperator& T, std::size_t dense_cap) {
  if (T.has_corner()) return solve_with_corner_full(T, 0, true, dense_cap).all_eigenvalues;
  TridiagCore core(T.diag, T.offdiag);
  return core.bisect(0, T.size());
}

double default_degeneracy_tol(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::fabs(v));
  return 1e-9 * (1.0 + m);
}

Spectrum merge_eigenpairs(const std::vector<EigenPair>& pairs, double tol) {
  Spectrum s;
  s.source = Spectrum::Source::numerical;
  s.degeneracy_tol = tol;
  for (const auto& p : pairs) {
    if (!s.eigenvalues.empty() && p.lambda - s.eigenvalues.back() <= tol) {
      ++s.multiplicities.back();
      s.residuals.back() = std::max(s.residuals.back(), p.residual);
    } else {
      s.eigenvalues.push_back(p.lambda);
      s.multiplicities.push_back(1);
      s.modes.push_back(0);
      s.residuals.push_back(p.residual);
    }
  }
  s.complete_below = pairs.empty() ? 0.0 : pairs.back().lambda;
  return s;
}

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * a[i] * b[i];
  return s;
}

std::vector<double> to_plain(std::span<const double> w, std::span<const double> v_func) {
  std::vector<double> u(v_func.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::sqrt(w[i]) * v_func[i];
  return u;
}

std::vector<double> to_function(std::span<const double> w, std::span<const double> v_plain) {
  std::vector<double> u(v_plain.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = v_plain[i] / std::sqrt(w[i]);
  return u;
}

}  // namespace specgap
