#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace specgap {

/// Ordered eigenvalue list after degeneracy merging. `modes` records where a
/// level came from: the angular mode for per-mode solves, the harmonic level
/// for analytic spectra, 0 for plain 1-D solves.
struct Spectrum {
  enum class Source { analytic, numerical };

  std::vector<double> eigenvalues;    // strictly ascending after merge
  std::vector<int> multiplicities;    // >= 1
  std::vector<int> modes;             // representative origin per level
  std::vector<double> residuals;      // max solver residual per level (0 for analytic)
  Source source = Source::numerical;
  double degeneracy_tol = 0.0;
  /// Values above this bound may be missing (per-mode truncation); evaluators
  /// must not consume the spectrum past it.
  double complete_below = 0.0;

  std::size_t level_count() const { return eigenvalues.size(); }
  std::size_t total_count() const;

  /// First `count` eigenvalues with multiplicity expanded, ascending.
  /// Throws incomplete_basis if that prefix is not certainly complete.
  std::vector<double> flatten(std::size_t count) const;

  /// Largest n for which lambda_{n+1} != lambda_n and both are inside the
  /// complete prefix (1-based n over the flattened list).
  std::vector<std::size_t> valid_gap_indices(std::size_t max_n) const;

  double gap() const;  // lambda_2 - lambda_1 over merged levels
};

/// Coalesce ascending eigenvalues within `tol` into levels with multiplicity.
Spectrum merge_sorted_values(const std::vector<double>& ascending, double tol,
                             Spectrum::Source source);

/// Merge per-angular-mode spectra of a surface of revolution: modes m >= 1
/// enter twice (cos/sin pairs). Each per-mode list must be ascending and is
/// assumed complete up to its own last entry.
Spectrum merge_mode_spectra(
    const std::vector<std::pair<int, std::vector<double>>>& per_mode,
    double degeneracy_tol);

/// CSV export: columns index,lambda,multiplicity,mode,residual.
std::string spectrum_to_csv(const Spectrum& s);

}  // namespace specgap
