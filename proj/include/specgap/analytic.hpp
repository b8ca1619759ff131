#pragma once

#include <cstdint>

#include "specgap/spectrum.hpp"

namespace specgap {

/// Closed-form spectra for the exactly solvable geometries. These are the
/// sharpness oracles: every equality case in the bound suites is checked
/// against these values, not against a second numerical run.

/// Circle of circumference L with potential g*kappa^2 (kappa = 2*pi/L):
/// lambda_k = (2*pi*k/L)^2 + g*(2*pi/L)^2, k = 0..level_cap,
/// multiplicity 1 for k = 0 and 2 otherwise.
Spectrum circle_spectrum(double L, double g, int level_cap);

/// Unit-speed sphere S^d of given radius with potential g*h^2 (h = d/radius):
/// lambda_l = l*(l+d-1)/radius^2 + g*(d/radius)^2, l = 0..level_cap, with the
/// standard harmonic multiplicity per level.
Spectrum sphere_spectrum(int d, double g, double radius, int level_cap);

/// Dirichlet interval of length L: lambda_k = (k*pi/L)^2, k = 1..level_cap.
Spectrum interval_spectrum(double L, int level_cap);

/// Dimension of the degree-l spherical harmonic space on S^d.
std::uint64_t sphere_multiplicity(int d, int l);

}  // namespace specgap
