#include "diamond/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "diamond/errors.hpp"

namespace diamond {

namespace {

bool finite(const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite(std::span<const cplx> entries, const char* what) {
  for (const auto& z : entries) {
    if (!finite(z)) throw NonFiniteValue(std::string(what) + " has a non-finite entry");
  }
}

}  // namespace

ComplexVector::ComplexVector(std::size_t length) : entries_(length) {
  if (length == 0) throw DimensionMismatch("vector length must be at least 1");
}

ComplexVector::ComplexVector(std::vector<cplx> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw DimensionMismatch("vector length must be at least 1");
  require_finite(entries_, "vector");
}

double ComplexVector::max_abs() const {
  double m = 0.0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
  if (rows == 0 || cols == 0) throw DimensionMismatch("matrix dimensions must be at least 1");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw DimensionMismatch("matrix dimensions must be at least 1");
  if (entries_.size() != rows * cols) {
    throw DimensionMismatch("expected " + std::to_string(rows * cols) + " entries, got " +
                            std::to_string(entries_.size()));
  }
  require_finite(entries_, "matrix");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  std::vector<cplx> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return {n, n, std::move(e)};
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
  const std::size_t n = diag.size();
  std::vector<cplx> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = diag[i];
  return {n, n, std::move(e)};
}

ComplexVector ComplexMatrix::column(std::size_t c) const {
  std::vector<cplx> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return ComplexVector(std::move(out));
}

ComplexMatrix ComplexMatrix::transpose() const {
  std::vector<cplx> e(rows_ * cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) e[c * rows_ + r] = (*this)(r, c);
  return {cols_, rows_, std::move(e)};
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

namespace {

template <typename Op>
ComplexMatrix elementwise(const ComplexMatrix& a, const ComplexMatrix& b, Op op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("elementwise shape mismatch");
  std::vector<cplx> e(a.entries().size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = op(a.entries()[i], b.entries()[i]);
  return {a.rows(), a.cols(), std::move(e)};
}

}  // namespace

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  return elementwise(a, b, [](cplx x, cplx y) { return x + y; });
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  return elementwise(a, b, [](cplx x, cplx y) { return x - y; });
}

ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
  std::vector<cplx> e(a.entries().begin(), a.entries().end());
  for (auto& z : e) z *= s;
  return {a.rows(), a.cols(), std::move(e)};
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("matmul: " + std::to_string(a.cols()) + " columns vs " +
                            std::to_string(b.rows()) + " rows");
  }
  std::vector<cplx> e(a.rows() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) e[i * b.cols() + j] += aik * b(k, j);
    }
  return {a.rows(), b.cols(), std::move(e)};
}

ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& v) {
  if (a.cols() != v.size()) {
    throw DimensionMismatch("matvec: " + std::to_string(a.cols()) + " columns vs length " +
                            std::to_string(v.size()));
  }
  std::vector<cplx> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * v[j];
    out[i] = acc;
  }
  return ComplexVector(std::move(out));
}

ComplexMatrix invert(const ComplexMatrix& m) {
  if (!m.square()) throw DimensionMismatch("invert: matrix is not square");
  const std::size_t n = m.rows();
  const double scale = m.max_abs();
  const double tol = kSingularTolerance * scale;
  if (scale == 0.0) throw SingularMatrix("invert: zero matrix");

  std::vector<cplx> lu(m.entries().begin(), m.entries().end());
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  auto at = [&](std::size_t r, std::size_t c) -> cplx& { return lu[r * n + c]; };

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(at(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      const double v = std::abs(at(r, k));
      if (v > best) {
        best = v;
        p = r;
      }
    }
    if (best < tol) {
      throw SingularMatrix("invert: pivot " + std::to_string(k) + " has magnitude " + std::to_string(best) +
                           " below tolerance");
    }
    if (p != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(at(k, c), at(p, c));
      std::swap(perm[k], perm[p]);
    }
    const cplx pivot = at(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      const cplx f = at(r, k) / pivot;
      at(r, k) = f;
      for (std::size_t c = k + 1; c < n; ++c) at(r, c) -= f * at(k, c);
    }
  }

  // Solve L U x = P e_j for every column j.
  std::vector<cplx> inv(n * n);
  std::vector<cplx> x(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) x[i] = (perm[i] == j) ? 1.0 : 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < i; ++c) x[i] -= at(i, c) * x[c];
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t c = i + 1; c < n; ++c) x[i] -= at(i, c) * x[c];
      x[i] /= at(i, i);
    }
    for (std::size_t i = 0; i < n; ++i) inv[i * n + j] = x[i];
  }
  return {n, n, std::move(inv)};
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("max_abs_diff shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

}  // namespace diamond
