#include "specgap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "specgap/errors.hpp"

namespace specgap {

namespace {

constexpr double kPi = std::numbers::pi;

struct FrenetState {
  double theta, x, y;
};

// One RK4 step of (theta, x, y)' = (kappa(s), cos theta, sin theta).
// Integrating the frame angle instead of the frame vectors keeps t and n
// exactly orthonormal at every sample.
FrenetState rk4_step(const FrenetState& u, double s, double hstep,
                     const std::function<double(double)>& kappa) {
  auto deriv = [&](double ss, const FrenetState& v) {
    return FrenetState{kappa(ss), std::cos(v.theta), std::sin(v.theta)};
  };
  auto add = [](const FrenetState& a, double c, const FrenetState& b) {
    return FrenetState{a.theta + c * b.theta, a.x + c * b.x, a.y + c * b.y};
  };
  FrenetState k1 = deriv(s, u);
  FrenetState k2 = deriv(s + 0.5 * hstep, add(u, 0.5 * hstep, k1));
  FrenetState k3 = deriv(s + 0.5 * hstep, add(u, 0.5 * hstep, k2));
  FrenetState k4 = deriv(s + hstep, add(u, hstep, k3));
  FrenetState out = u;
  out.theta += hstep / 6.0 * (k1.theta + 2 * k2.theta + 2 * k3.theta + k4.theta);
  out.x += hstep / 6.0 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
  out.y += hstep / 6.0 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y);
  return out;
}

FrenetState integrate_to(const FrenetState& start, double s0, double s1, int steps,
                         const std::function<double(double)>& kappa) {
  FrenetState u = start;
  const double hstep = (s1 - s0) / steps;
  for (int i = 0; i < steps; ++i) u = rk4_step(u, s0 + i * hstep, hstep, kappa);
  return u;
}

// Endpoint of the curve with curvature kappa over [0, L], fine fixed grid.
std::array<double, 2> closure_defect(const std::function<double(double)>& kappa, double L,
                                     int steps) {
  FrenetState u = integrate_to({0.0, 0.0, 0.0}, 0.0, L, steps, kappa);
  return {u.x, u.y};
}

}  // namespace

CurveGeometry curve_from_curvature(const std::function<double(double)>& kappa, double L,
                                   bool closed, std::size_t N, int substeps) {
  require(L > 0.0, ErrorCode::invalid_argument, "curve_from_curvature: L must be positive");
  require(N >= 16, ErrorCode::invalid_argument, "curve_from_curvature: N must be >= 16");
  require(static_cast<bool>(kappa), ErrorCode::invalid_argument,
          "curve_from_curvature: curvature function required");
  require(substeps >= 1, ErrorCode::invalid_argument, "curve_from_curvature: substeps >= 1");

  CurveGeometry g;
  g.length = L;
  g.closed = closed;
  g.ds = closed ? L / static_cast<double>(N) : L / static_cast<double>(N + 1);
  g.s.reserve(N);
  g.kappa.reserve(N);
  g.tangent.reserve(N);
  g.normal.reserve(N);
  g.position.reserve(N);

  FrenetState u{0.0, 0.0, 0.0};
  double s = 0.0;
  auto record = [&](double snode, const FrenetState& v) {
    g.s.push_back(snode);
    g.kappa.push_back(kappa(snode));
    const double c = std::cos(v.theta), sn = std::sin(v.theta);
    g.tangent.push_back({c, sn});
    g.normal.push_back({-sn, c});
    g.position.push_back({v.x, v.y});
  };

  if (closed) {
    for (std::size_t i = 0; i < N; ++i) {
      record(s, u);
      u = integrate_to(u, s, s + g.ds, substeps, kappa);
      s += g.ds;
    }
  } else {
    for (std::size_t i = 0; i < N; ++i) {
      u = integrate_to(u, s, s + g.ds, substeps, kappa);
      s += g.ds;
      record(s, u);
    }
    // carry on to s = L so the total turning is available for diagnostics
    u = integrate_to(u, s, L, substeps, kappa);
  }

  const double total_turn = u.theta;
  g.winding = static_cast<int>(std::lround(total_turn / (2.0 * kPi)));
  if (closed) {
    g.closure_residual = std::hypot(u.x, u.y);
    require(g.closure_residual <= 10.0 * g.ds, ErrorCode::inconsistent_curvature,
            "closed curve does not close: endpoint misses start by " +
                std::to_string(g.closure_residual));
    require(std::fabs(total_turn - 2.0 * kPi * g.winding) <= 1e-6 * (1.0 + std::fabs(total_turn)),
            ErrorCode::inconsistent_curvature,
            "closed curve frame does not close: total turning is not a multiple of 2*pi");
  }
  return g;
}

double RevolutionGeometry::weighted_measure() const {
  double m = 0.0;
  for (double w : weight) m += w;
  return m;
}

RevolutionGeometry revolution_from_profile(const ProfileFuns& profile, double L, std::size_t N,
                                           bool closed_profile) {
  require(L > 0.0, ErrorCode::invalid_argument, "revolution_from_profile: L must be positive");
  require(N >= 16, ErrorCode::invalid_argument, "revolution_from_profile: N must be >= 16");
  require(static_cast<bool>(profile.r) && static_cast<bool>(profile.z),
          ErrorCode::invalid_argument, "revolution_from_profile: r and z required");

  RevolutionGeometry g;
  g.profile_length = L;

  const double r0 = profile.r(0.0);
  const double rL = profile.r(L);
  double rmax = std::max(std::fabs(r0), std::fabs(rL));
  for (int i = 1; i < 16; ++i) rmax = std::max(rmax, std::fabs(profile.r(L * i / 16.0)));
  const double pole_tol = 1e-9 * std::max(rmax, 1e-300);
  g.left_end = std::fabs(r0) <= pole_tol ? ProfileEnd::pole : ProfileEnd::boundary;
  g.right_end = std::fabs(rL) <= pole_tol ? ProfileEnd::pole : ProfileEnd::boundary;

  if (closed_profile) {
    g.grid = RevolutionGrid::periodic;
    g.ds = L / static_cast<double>(N);
  } else if (g.left_end == ProfileEnd::pole || g.right_end == ProfileEnd::pole) {
    g.grid = RevolutionGrid::staggered;
    g.ds = L / static_cast<double>(N);
  } else {
    g.grid = RevolutionGrid::interior;
    g.ds = L / static_cast<double>(N + 1);
  }

  g.s.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    g.s[i] = g.grid == RevolutionGrid::interior ? static_cast<double>(i + 1) * g.ds
                                                : (static_cast<double>(i) + 0.5) * g.ds;
  }

  g.r.resize(N);
  g.z.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    g.r[i] = profile.r(g.s[i]);
    g.z[i] = profile.z(g.s[i]);
    require(g.r[i] > 0.0, ErrorCode::degenerate_profile,
            "revolution_from_profile: r <= 0 at an interior node");
  }

  g.r_face.resize(N + 1);
  for (std::size_t i = 0; i <= N; ++i) {
    const double sf = g.s[std::min(i, N - 1)] + (i == N ? 0.5 : -0.5) * g.ds;
    double rf = profile.r(std::clamp(sf, 0.0, L));
    if (closed_profile && i == N) rf = g.r_face[0];
    g.r_face[i] = std::max(rf, 0.0);
  }

  // First and second profile derivatives: analytic when supplied, otherwise
  // centered differences (one-sided at open ends).
  std::vector<double> dr(N), dz(N), ddr(N), ddz(N);
  if (profile.has_derivatives()) {
    for (std::size_t i = 0; i < N; ++i) {
      dr[i] = profile.dr(g.s[i]);
      dz[i] = profile.dz(g.s[i]);
      ddr[i] = profile.ddr(g.s[i]);
      ddz[i] = profile.ddz(g.s[i]);
    }
  } else {
    auto sample = [&](const std::function<double(double)>& f, std::size_t i, int off) {
      if (g.grid == RevolutionGrid::periodic) {
        const double ss = g.s[i] + off * g.ds;
        return f(ss < 0 ? ss + L : (ss >= L ? ss - L : ss));
      }
      const long j = static_cast<long>(i) + off;
      if (j < 0 || j >= static_cast<long>(N)) return std::nan("");
      return f(g.s[static_cast<std::size_t>(j)]);
    };
    auto derive = [&](const std::function<double(double)>& f, std::vector<double>& d1,
                      std::vector<double>& d2) {
      for (std::size_t i = 0; i < N; ++i) {
        const double fm = sample(f, i, -1), f0 = f(g.s[i]), fp = sample(f, i, +1);
        if (!std::isnan(fm) && !std::isnan(fp)) {
          d1[i] = (fp - fm) / (2.0 * g.ds);
          d2[i] = (fp - 2.0 * f0 + fm) / (g.ds * g.ds);
        } else if (std::isnan(fm)) {
          const double f1 = sample(f, i, +1), f2 = sample(f, i, +2), f3 = sample(f, i, +3);
          d1[i] = (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * g.ds);
          d2[i] = (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) / (g.ds * g.ds);
        } else {
          const double f1 = sample(f, i, -1), f2 = sample(f, i, -2), f3 = sample(f, i, -3);
          d1[i] = (3.0 * f0 - 4.0 * f1 + f2) / (2.0 * g.ds);
          d2[i] = (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) / (g.ds * g.ds);
        }
      }
    };
    derive(profile.r, dr, ddr);
    derive(profile.z, dz, ddz);
  }

  double max_param_residual = 0.0;
  g.kappa1.resize(N);
  g.kappa2.resize(N);
  g.h.resize(N);
  g.weight.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    max_param_residual =
        std::max(max_param_residual, std::fabs(dr[i] * dr[i] + dz[i] * dz[i] - 1.0));
    g.kappa1[i] = dr[i] * ddz[i] - dz[i] * ddr[i];
    g.kappa2[i] = dz[i] / g.r[i];
    g.h[i] = g.kappa1[i] + g.kappa2[i];
    g.weight[i] = g.r[i] * g.ds;
  }
  require(max_param_residual <= 1e-4, ErrorCode::not_arclength,
          "revolution_from_profile: profile is not arc-length parameterized (residual " +
              std::to_string(max_param_residual) + ")");
  return g;
}

double delta_sup(std::span<const double> h, std::span<const double> V) {
  require(!h.empty() && h.size() == V.size(), ErrorCode::invalid_argument,
          "delta_sup: empty grid or size mismatch");
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < h.size(); ++i) m = std::max(m, h[i] * h[i] / 4.0 - V[i]);
  return m;
}

double sigma_of_g(double g) {
  require(g > 0.0, ErrorCode::invalid_argument, "sigma_of_g: g must be positive");
  return std::max(1.0, 1.0 / (4.0 * g));
}

std::uint64_t SplitMix64::next() {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

namespace {

struct FourierCurvature {
  double base;                      // constant term, fixed to 2*pi/L
  double omega;                     // 2*pi/L
  std::vector<double> cos_c, sin_c;  // coefficients for frequencies 1..modes

  double operator()(double s) const {
    double k = base;
    for (std::size_t j = 0; j < cos_c.size(); ++j) {
      const double a = omega * static_cast<double>(j + 1) * s;
      k += cos_c[j] * std::cos(a) + sin_c[j] * std::sin(a);
    }
    return k;
  }
};

}  // namespace

std::function<double(double)> random_closed_curvature(std::uint64_t seed, int modes,
                                                      double amplitude, double L) {
  require(L > 0.0, ErrorCode::invalid_argument, "random_closed_curvature: L must be positive");
  require(modes >= 1 && modes <= 64, ErrorCode::invalid_argument,
          "random_closed_curvature: modes out of range");
  const double omega = 2.0 * kPi / L;
  const int fine_steps = 4096;

  SplitMix64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
  FourierCurvature kap;
  kap.base = omega;  // total turning 2*pi, independent of the perturbation
  kap.omega = omega;
  kap.cos_c.assign(static_cast<std::size_t>(modes), 0.0);
  kap.sin_c.assign(static_cast<std::size_t>(modes), 0.0);
  for (int j = 0; j < modes; ++j) {
    const double decay = 1.0 / static_cast<double>(j + 1);
    kap.cos_c[static_cast<std::size_t>(j)] =
        amplitude * omega * decay * (2.0 * rng.uniform() - 1.0);
    kap.sin_c[static_cast<std::size_t>(j)] =
        amplitude * omega * decay * (2.0 * rng.uniform() - 1.0);
  }

  // Newton on the two first-harmonic coefficients to land the endpoint on the
  // start point. The turning number is already exact because all harmonics
  // integrate to zero over the full period.
  for (int attempt = 0; attempt < 6; ++attempt) {
    double a = kap.cos_c[0], b = kap.sin_c[0];
    auto defect = [&](double aa, double bb) {
      FourierCurvature k2 = kap;
      k2.cos_c[0] = aa;
      k2.sin_c[0] = bb;
      return closure_defect([&k2](double s) { return k2(s); }, L, fine_steps);
    };
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
      const auto f0 = defect(a, b);
      const double err = std::hypot(f0[0], f0[1]);
      if (err <= 1e-12 * L) {
        converged = true;
        break;
      }
      const double hstep = 1e-6 * omega;
      const auto fa = defect(a + hstep, b);
      const auto fb = defect(a, b + hstep);
      const double j00 = (fa[0] - f0[0]) / hstep, j01 = (fb[0] - f0[0]) / hstep;
      const double j10 = (fa[1] - f0[1]) / hstep, j11 = (fb[1] - f0[1]) / hstep;
      const double det = j00 * j11 - j01 * j10;
      if (std::fabs(det) < 1e-30) break;
      a -= (j11 * f0[0] - j01 * f0[1]) / det;
      b -= (-j10 * f0[0] + j00 * f0[1]) / det;
    }
    if (converged) {
      kap.cos_c[0] = a;
      kap.sin_c[0] = b;
      return [kap](double s) { return kap(s); };
    }
    // retry with a tamer profile
    for (auto& c : kap.cos_c) c *= 0.5;
    for (auto& c : kap.sin_c) c *= 0.5;
  }
  fail(ErrorCode::inconsistent_curvature,
       "random_closed_curvature: closure solve failed for seed " + std::to_string(seed));
}

namespace {

std::function<double(double)> samples_interpolant(std::vector<double> values, double L,
                                                  bool periodic) {
  require(values.size() >= 2, ErrorCode::invalid_argument,
          "samples profile needs at least 2 values");
  return [values = std::move(values), L, periodic](double s) {
    const std::size_t n = values.size();
    double u;
    if (periodic) {
      u = std::fmod(s, L);
      if (u < 0) u += L;
      u = u / L * static_cast<double>(n);
    } else {
      u = std::clamp(s, 0.0, L) / L * static_cast<double>(n - 1);
    }
    const auto i0 = std::min(static_cast<std::size_t>(u), periodic ? n - 1 : n - 2);
    const double t = u - static_cast<double>(i0);
    const std::size_t i1 = periodic ? (i0 + 1) % n : i0 + 1;
    return (1.0 - t) * values[i0] + t * values[i1];
  };
}

double param_or(const nlohmann::json& params, const std::string& key, double fallback) {
  if (params.contains(key)) return params.at(key).get<double>();
  return fallback;
}

}  // namespace

std::function<double(double)> make_curvature_profile(const std::string& expr_id,
                                                     const nlohmann::json& params, double L,
                                                     std::uint64_t default_seed) {
  if (expr_id == "constant") {
    const double v = param_or(params, "value", 2.0 * kPi / L);
    return [v](double) { return v; };
  }
  if (expr_id == "sinusoidal") {
    const double base = param_or(params, "base", 2.0 * kPi / L);
    const double amp = param_or(params, "amp", 0.5);
    const double cycles = param_or(params, "cycles", 2.0);
    const double phase = param_or(params, "phase", 0.0);
    const double w = 2.0 * kPi * cycles / L;
    return [=](double s) { return base + amp * std::sin(w * s + phase); };
  }
  if (expr_id == "random-closed") {
    const auto seed = params.contains("seed")
                          ? params.at("seed").get<std::uint64_t>()
                          : default_seed;
    const int modes = static_cast<int>(param_or(params, "modes", 6.0));
    const double amp = param_or(params, "amp", 0.25);
    return random_closed_curvature(seed, modes, amp, L);
  }
  if (expr_id == "samples") {
    require(params.contains("values"), ErrorCode::scenario_parse,
            "samples curvature profile needs a values array");
    auto vals = params.at("values").get<std::vector<double>>();
    const bool periodic = params.contains("periodic") ? params.at("periodic").get<bool>() : true;
    return samples_interpolant(std::move(vals), L, periodic);
  }
  fail(ErrorCode::scenario_parse, "unknown curvature expr-id: " + expr_id);
}

ProfileFuns make_revolution_profile(const std::string& expr_id, const nlohmann::json& params,
                                    double& L, bool& closed) {
  ProfileFuns p;
  if (expr_id == "sphere") {
    const double rho = param_or(params, "radius", 1.0);
    require(rho > 0.0, ErrorCode::scenario_parse, "sphere profile: radius must be positive");
    L = kPi * rho;
    closed = false;
    p.r = [rho](double s) { return rho * std::sin(s / rho); };
    p.z = [rho](double s) { return -rho * std::cos(s / rho); };
    p.dr = [rho](double s) { return std::cos(s / rho); };
    p.dz = [rho](double s) { return std::sin(s / rho); };
    p.ddr = [rho](double s) { return -std::sin(s / rho) / rho; };
    p.ddz = [rho](double s) { return std::cos(s / rho) / rho; };
    return p;
  }
  if (expr_id == "cylinder") {
    const double rho = param_or(params, "radius", 1.0);
    const double len = param_or(params, "length", kPi);
    require(rho > 0.0 && len > 0.0, ErrorCode::scenario_parse, "cylinder profile: bad parameters");
    L = len;
    closed = false;
    p.r = [rho](double) { return rho; };
    p.z = [](double s) { return s; };
    p.dr = [](double) { return 0.0; };
    p.dz = [](double) { return 1.0; };
    p.ddr = [](double) { return 0.0; };
    p.ddz = [](double) { return 0.0; };
    return p;
  }
  if (expr_id == "torus") {
    const double R = param_or(params, "R", 3.0);
    const double a = param_or(params, "a", 1.0);
    require(R > a && a > 0.0, ErrorCode::scenario_parse, "torus profile: need R > a > 0");
    L = 2.0 * kPi * a;
    closed = true;
    p.r = [R, a](double s) { return R + a * std::cos(s / a); };
    p.z = [a](double s) { return a * std::sin(s / a); };
    p.dr = [a](double s) { return -std::sin(s / a); };
    p.dz = [a](double s) { return std::cos(s / a); };
    p.ddr = [a](double s) { return -std::cos(s / a) / a; };
    p.ddz = [a](double s) { return -std::sin(s / a) / a; };
    return p;
  }
  if (expr_id == "samples") {
    require(params.contains("r") && params.contains("z"), ErrorCode::scenario_parse,
            "samples profile needs r and z arrays");
    auto rv = params.at("r").get<std::vector<double>>();
    auto zv = params.at("z").get<std::vector<double>>();
    require(rv.size() == zv.size(), ErrorCode::scenario_parse,
            "samples profile: r and z must have equal length");
    require(params.contains("L"), ErrorCode::scenario_parse, "samples profile needs L");
    L = params.at("L").get<double>();
    closed = params.contains("closed") ? params.at("closed").get<bool>() : false;
    p.r = samples_interpolant(std::move(rv), L, closed);
    p.z = samples_interpolant(std::move(zv), L, closed);
    return p;
  }
  fail(ErrorCode::scenario_parse, "unknown profile expr-id: " + expr_id);
}

GeometryDescription parse_geometry(const nlohmann::json& j, std::uint64_t default_seed) {
  require(j.is_object() && j.contains("kind"), ErrorCode::scenario_parse,
          "geometry: object with a kind field required");
  GeometryDescription g;
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "sphere") {
    g.kind = GeometryDescription::Kind::sphere;
    g.sphere_d = j.contains("d") ? j.at("d").get<int>() : 2;
    g.sphere_radius = j.contains("radius") ? j.at("radius").get<double>() : 1.0;
    require(g.sphere_d >= 1 && g.sphere_radius > 0.0, ErrorCode::scenario_parse,
            "geometry: bad sphere parameters");
    g.id = "sphere(d=" + std::to_string(g.sphere_d) + ")";
    return g;
  }
  g.N = j.contains("N") ? j.at("N").get<std::size_t>() : 0;
  if (kind == "curve") {
    g.kind = GeometryDescription::Kind::curve;
    require(j.contains("L") && j.contains("kappa"), ErrorCode::scenario_parse,
            "curve geometry needs L and kappa");
    g.L = j.at("L").get<double>();
    g.closed = j.contains("closed") ? j.at("closed").get<bool>() : true;
    const auto& k = j.at("kappa");
    const auto expr = k.at("expr-id").get<std::string>();
    const auto params = k.contains("params") ? k.at("params") : nlohmann::json::object();
    g.kappa = make_curvature_profile(expr, params, g.L, default_seed);
    g.id = "curve[" + expr + "]";
    return g;
  }
  if (kind == "revolution") {
    g.kind = GeometryDescription::Kind::revolution;
    require(j.contains("profile"), ErrorCode::scenario_parse,
            "revolution geometry needs a profile");
    const auto& p = j.at("profile");
    const auto expr = p.at("expr-id").get<std::string>();
    const auto params = p.contains("params") ? p.at("params") : nlohmann::json::object();
    g.profile = make_revolution_profile(expr, params, g.L, g.profile_closed);
    if (j.contains("L")) g.L = j.at("L").get<double>();
    g.id = "revolution[" + expr + "]";
    return g;
  }
  fail(ErrorCode::scenario_parse, "unknown geometry kind: " + kind);
}

CurveGeometry build_curve(const GeometryDescription& g, std::size_t N) {
  require(g.kind == GeometryDescription::Kind::curve, ErrorCode::invalid_argument,
          "build_curve: not a curve description");
  return curve_from_curvature(g.kappa, g.L, g.closed, N);
}

RevolutionGeometry build_revolution(const GeometryDescription& g, std::size_t N) {
  require(g.kind == GeometryDescription::Kind::revolution, ErrorCode::invalid_argument,
          "build_revolution: not a revolution description");
  return revolution_from_profile(g.profile, g.L, N, g.profile_closed);
}

}  // namespace specgap
