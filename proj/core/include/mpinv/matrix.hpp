#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

#include "mpinv/error.hpp"

namespace mpinv {

using Complex = std::complex<double>;

/// Dense m x n complex matrix, row-major.
///
/// Entries are checked for finiteness when a matrix is built from external
/// data (the entry-vector and initializer-list constructors). Arithmetic in
/// this library produces new values and never mutates shared operands, so a
/// `const ComplexMatrix&` can be read from several threads at once.
class ComplexMatrix {
 public:
  /// Empty 0 x 0 matrix; only useful as a placeholder.
  ComplexMatrix() = default;

  /// rows x cols matrix of zeros.
  ComplexMatrix(std::size_t rows, std::size_t cols);

  /// Takes ownership of `entries` (row-major, length rows*cols).
  /// Throws ShapeError on a length mismatch and NonFiniteValue on NaN/Inf.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  /// Nested-list literal, e.g. `{{2, 0, I}, {0, I, 1}}`. Rows must agree in length.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix column(std::span<const Complex> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }
  std::span<const Complex> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  ComplexMatrix col(std::size_t c) const;

  /// True when every entry is finite.
  bool all_finite() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Original rectangle recorded next to a square (m+n) x (m+n) embedding.
struct EmbeddingShape {
  std::size_t m = 0;
  std::size_t n = 0;

  std::size_t side() const noexcept { return m + n; }
  friend bool operator==(const EmbeddingShape&, const EmbeddingShape&) = default;
};

struct Embedded {
  ComplexMatrix matrix;
  EmbeddingShape shape;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scalar, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

/// Conjugate transpose. Exact: adjoint(adjoint(A)) == A bit for bit.
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);

/// Throws ShapeError naming both shapes when inner dimensions differ.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_norm(const ComplexMatrix& a);

/// <u, v> = sum conj(u_k) v_k, antilinear in the first slot. Both operands
/// must be column vectors of equal length.
Complex inner_product(const ComplexMatrix& u, const ComplexMatrix& v);

Complex trace(const ComplexMatrix& a);

/// Largest absolute row sum (the induced infinity norm).
double max_row_sum(const ComplexMatrix& a);

/// Frobenius distance between two equally shaped matrices.
double distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||A - A*||_F; zero exactly for Hermitian input.
double hermitian_defect(const ComplexMatrix& a);

/// Block embedding A' = [[A, 0], [0, 0]] of side m+n.
Embedded embed_square(const ComplexMatrix& a);

/// Top-left shape.m x shape.n block of an (m+n) x (m+n) matrix.
ComplexMatrix extract_rect(const ComplexMatrix& m, const EmbeddingShape& shape);

/// Top-left rows x cols block of any matrix large enough to hold it.
ComplexMatrix top_left(const ComplexMatrix& m, std::size_t rows, std::size_t cols);

/// Solves A X = B by Gaussian elimination with partial pivoting.
///
/// The pivot in each column is the entry of largest modulus, lowest row index
/// on ties. SingularMatrix is thrown when that modulus falls below
/// `pivot_tol`; a negative `pivot_tol` selects 1e-12 * max_row_sum(A).
ComplexMatrix solve_linear(const ComplexMatrix& a, const ComplexMatrix& b, double pivot_tol = -1.0);

/// Determinant by the same pivoted elimination; zero pivots give zero.
Complex determinant(const ComplexMatrix& a);

std::ostream& operator<<(std::ostream& os, const ComplexMatrix& m);

}  // namespace mpinv
