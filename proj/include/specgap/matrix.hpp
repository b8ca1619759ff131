#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace specgap {

/// Minimal dense row-major matrix. Used for small exact-algebra tests and as
/// the workspace of the dense (periodic corner) eigensolver path; the large
/// structured operators never go through here.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double c);

  Matrix transpose() const;
  std::vector<double> apply(std::span<const double> x) const;
  double max_abs() const;
  double max_abs_asymmetry() const;  // max |a_ij - a_ji|

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);

/// [A,B] = AB - BA
Matrix commutator(const Matrix& a, const Matrix& b);
/// [G,[H,G]]
Matrix double_commutator(const Matrix& g, const Matrix& h);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
void axpy(double c, std::span<const double> x, std::span<double> y);

}  // namespace specgap
