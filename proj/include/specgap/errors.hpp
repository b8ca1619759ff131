#pragma once

#include <stdexcept>
#include <string>

namespace specgap {

enum class ErrorCode {
  invalid_argument,
  inconsistent_curvature,
  degenerate_profile,
  not_arclength,
  needs_embedding,
  solver_failure,
  size_exceeded,
  incomplete_basis,
  internal_consistency,
  scenario_parse,
};

/// Library error carrying a stable code so callers (and the CLI) can map
/// failures to exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace specgap
