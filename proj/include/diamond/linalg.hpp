#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace diamond {

using cplx = std::complex<double>;

/// Dense complex vector. Entries are checked for finiteness on construction.
class ComplexVector {
 public:
  explicit ComplexVector(std::size_t length);
  explicit ComplexVector(std::vector<cplx> entries);

  std::size_t size() const { return entries_.size(); }
  const cplx& operator[](std::size_t i) const { return entries_[i]; }
  std::span<const cplx> entries() const { return entries_; }

  double max_abs() const;

  friend bool operator==(const ComplexVector&, const ComplexVector&) = default;

 private:
  std::vector<cplx> entries_;
};

/// Dense row-major complex matrix, immutable once built.
class ComplexMatrix {
 public:
  /// rows x cols of zeros.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const cplx> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  const cplx& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  std::span<const cplx> entries() const { return entries_; }

  ComplexVector column(std::size_t c) const;
  ComplexMatrix transpose() const;
  /// Largest entry magnitude, the norm used for all relative tolerances here.
  double max_abs() const;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<cplx> entries_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, const ComplexMatrix& a);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& v);

/// Relative pivot threshold below which invert() reports SingularMatrix.
inline constexpr double kSingularTolerance = 1e-14;

/// LU with partial pivoting. Throws SingularMatrix when a pivot falls below
/// kSingularTolerance * max_abs(m).
ComplexMatrix invert(const ComplexMatrix& m);

/// max |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace diamond
