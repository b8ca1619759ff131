#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace specgap {

/// Closed or open plane curve sampled on a uniform arc-length grid.
/// Open curves keep interior nodes only (Dirichlet ends), ds = L/(N+1);
/// closed curves use nodes i*ds, ds = L/N.
struct CurveGeometry {
  double length = 0.0;
  bool closed = false;
  double ds = 0.0;
  std::vector<double> s;
  std::vector<double> kappa;
  std::vector<std::array<double, 2>> tangent;   // unit, from the frame angle
  std::vector<std::array<double, 2>> normal;    // +90 degree rotation of tangent
  std::vector<std::array<double, 2>> position;  // reconstructed embedding
  double closure_residual = 0.0;                // |X(L) - X(0)| for closed curves
  int winding = 0;

  std::size_t size() const { return s.size(); }
  bool has_embedding() const { return !position.empty(); }
};

/// Reconstruct a plane curve from its curvature profile by integrating the
/// frame angle and position with a fixed-step 4th-order scheme (`substeps`
/// stages per grid interval). Closure is checked, not enforced, so
/// closure_residual doubles as an accuracy diagnostic.
CurveGeometry curve_from_curvature(const std::function<double(double)>& kappa, double L,
                                   bool closed, std::size_t N, int substeps = 8);

enum class ProfileEnd { pole, boundary };
enum class RevolutionGrid { staggered, interior, periodic };

/// Profile curve (r(s), z(s)) of a surface of revolution, arc-length
/// parameterized. Derivative callables are optional: when absent, curvatures
/// fall back to centered second differences of the samples.
struct ProfileFuns {
  std::function<double(double)> r;
  std::function<double(double)> z;
  std::function<double(double)> dr, dz, ddr, ddz;
  bool has_derivatives() const { return static_cast<bool>(dr); }
};

/// Surface of revolution sampled along the profile. Pole ends use a grid
/// staggered by ds/2 so no node sits at r = 0; profiles with two regular ends
/// use interior nodes (exactly the flat-interval layout); closed profiles
/// (tori) are periodic.
struct RevolutionGeometry {
  double profile_length = 0.0;
  double ds = 0.0;
  RevolutionGrid grid = RevolutionGrid::staggered;
  ProfileEnd left_end = ProfileEnd::pole;
  ProfileEnd right_end = ProfileEnd::pole;
  std::vector<double> s, r, z;
  std::vector<double> kappa1, kappa2, h;  // h = kappa1 + kappa2
  std::vector<double> weight;             // r_i * ds
  std::vector<double> r_face;             // size()+1 face radii, face i left of node i

  std::size_t size() const { return s.size(); }
  bool periodic() const { return grid == RevolutionGrid::periodic; }
  /// Total weighted measure = surface area / (2*pi).
  double weighted_measure() const;
};

RevolutionGeometry revolution_from_profile(const ProfileFuns& profile, double L, std::size_t N,
                                           bool closed_profile = false);

struct SphereGeometry {
  int dim = 2;
  double radius = 1.0;
  double mean_curvature_sum() const { return dim / radius; }
};

/// Grid maximum of h^2/4 - V: a lower estimate of the true sup; callers
/// needing certainty must refine the grid.
double delta_sup(std::span<const double> h, std::span<const double> V);

/// sigma = max(1, 1/(4g)) for H_g problems.
double sigma_of_g(double g);

// --- profile registry and JSON ingestion -----------------------------------

/// Deterministic 64-bit generator used for seeded curvature profiles; fixed
/// algorithm so outputs do not depend on the standard library.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
  double uniform();  // [0, 1)
};

/// Curvature profile with randomly drawn Fourier coefficients, adjusted by a
/// Newton solve on the two first-harmonic coefficients so the reconstructed
/// curve closes to machine accuracy.
std::function<double(double)> random_closed_curvature(std::uint64_t seed, int modes,
                                                      double amplitude, double L);

struct GeometryDescription {
  enum class Kind { curve, revolution, sphere };
  Kind kind = Kind::curve;
  std::string id;
  double L = 0.0;
  bool closed = false;
  std::size_t N = 0;
  std::function<double(double)> kappa;  // curve
  ProfileFuns profile;                  // revolution
  bool profile_closed = false;
  int sphere_d = 2;
  double sphere_radius = 1.0;
};

/// Parse the geometry JSON document:
///   {"kind": "curve"|"revolution"|"sphere", "closed": bool, "L": number,
///    "N": int, "kappa"|"profile": {"expr-id": string, "params": {...}}}
GeometryDescription parse_geometry(const nlohmann::json& j, std::uint64_t default_seed = 0);

std::function<double(double)> make_curvature_profile(const std::string& expr_id,
                                                     const nlohmann::json& params, double L,
                                                     std::uint64_t default_seed = 0);

/// Returns the profile functions and fills L/closed for the named profile.
ProfileFuns make_revolution_profile(const std::string& expr_id, const nlohmann::json& params,
                                    double& L, bool& closed);

CurveGeometry build_curve(const GeometryDescription& g, std::size_t N);
RevolutionGeometry build_revolution(const GeometryDescription& g, std::size_t N);

}  // namespace specgap
