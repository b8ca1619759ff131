#include "specgap/spectrum.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "specgap/errors.hpp"
#include "specgap/report_io.hpp"

namespace specgap {

std::size_t Spectrum::total_count() const {
  std::size_t n = 0;
  for (int m : multiplicities) n += static_cast<std::size_t>(m);
  return n;
}

std::vector<double> Spectrum::flatten(std::size_t count) const {
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t lv = 0; lv < eigenvalues.size() && out.size() < count; ++lv) {
    require(eigenvalues[lv] <= complete_below, ErrorCode::incomplete_basis,
            "spectrum consumed past its complete prefix");
    for (int r = 0; r < multiplicities[lv] && out.size() < count; ++r)
      out.push_back(eigenvalues[lv]);
  }
  require(out.size() == count, ErrorCode::incomplete_basis,
          "spectrum has fewer eigenvalues than requested");
  return out;
}

std::vector<std::size_t> Spectrum::valid_gap_indices(std::size_t max_n) const {
  std::vector<std::size_t> out;
  std::size_t cum = 0;
  for (std::size_t lv = 0; lv + 1 < eigenvalues.size(); ++lv) {
    cum += static_cast<std::size_t>(multiplicities[lv]);
    if (cum > max_n) break;
    if (eigenvalues[lv + 1] <= complete_below) out.push_back(cum);
  }
  return out;
}

double Spectrum::gap() const {
  require(eigenvalues.size() >= 2, ErrorCode::invalid_argument,
          "gap needs at least two distinct levels");
  return eigenvalues[1] - eigenvalues[0];
}

Spectrum merge_sorted_values(const std::vector<double>& ascending, double tol,
                             Spectrum::Source source) {
  Spectrum s;
  s.source = source;
  s.degeneracy_tol = tol;
  s.complete_below = ascending.empty() ? 0.0 : ascending.back();
  for (double v : ascending) {
    if (!s.eigenvalues.empty() && v - s.eigenvalues.back() <= tol) {
      ++s.multiplicities.back();
    } else {
      s.eigenvalues.push_back(v);
      s.multiplicities.push_back(1);
      s.modes.push_back(0);
      s.residuals.push_back(0.0);
    }
  }
  return s;
}

Spectrum merge_mode_spectra(
    const std::vector<std::pair<int, std::vector<double>>>& per_mode,
    double degeneracy_tol) {
  struct Entry {
    double lambda;
    int mode;
  };
  std::vector<Entry> all;
  double complete = std::numeric_limits<double>::infinity();
  for (const auto& [mode, values] : per_mode) {
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
      require(values[i] <= values[i + 1], ErrorCode::invalid_argument,
              "per-mode eigenvalue list must be ascending");
    const int copies = mode >= 1 ? 2 : 1;
    for (double v : values)
      for (int c = 0; c < copies; ++c) all.push_back({v, mode});
    if (!values.empty()) complete = std::min(complete, values.back());
  }
  std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) {
    return a.lambda < b.lambda || (a.lambda == b.lambda && a.mode < b.mode);
  });

  Spectrum s;
  s.source = Spectrum::Source::numerical;
  s.degeneracy_tol = degeneracy_tol;
  s.complete_below = all.empty() ? 0.0 : complete;
  for (const Entry& e : all) {
    if (!s.eigenvalues.empty() && e.lambda - s.eigenvalues.back() <= degeneracy_tol) {
      ++s.multiplicities.back();
    } else {
      s.eigenvalues.push_back(e.lambda);
      s.multiplicities.push_back(1);
      s.modes.push_back(e.mode);
      s.residuals.push_back(0.0);
    }
  }
  return s;
}

std::string spectrum_to_csv(const Spectrum& s) {
  std::string out = "index,lambda,multiplicity,mode,residual\n";
  std::size_t index = 1;
  for (std::size_t lv = 0; lv < s.eigenvalues.size(); ++lv) {
    out += std::to_string(index);
    out += ',';
    out += format_csv_double(s.eigenvalues[lv]);
    out += ',';
    out += std::to_string(s.multiplicities[lv]);
    out += ',';
    out += std::to_string(s.modes[lv]);
    out += ',';
    out += format_csv_double(s.residuals[lv]);
    out += '\n';
    index += static_cast<std::size_t>(s.multiplicities[lv]);
  }
  return out;
}

}  // namespace specgap
