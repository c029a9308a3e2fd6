#include "mpinv/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace mpinv {

namespace {

std::string shape_str(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(op) + ": shape mismatch " + shape_str(a) + " vs " + shape_str(b));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw ShapeError("ComplexMatrix: " + std::to_string(data_.size()) + " entries for shape " +
                     std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  if (!all_finite()) throw NonFiniteValue("ComplexMatrix: non-finite entry");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ShapeError("ComplexMatrix: ragged initializer list");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  if (!all_finite()) throw NonFiniteValue("ComplexMatrix: non-finite entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  if (!m.all_finite()) throw NonFiniteValue("diagonal: non-finite entry");
  return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> values) {
  return {values.size(), 1, std::vector<Complex>(values.begin(), values.end())};
}

ComplexMatrix ComplexMatrix::col(std::size_t c) const {
  ComplexMatrix out(rows_, 1);
  for (std::size_t r = 0; r < rows_; ++r) out(r, 0) = (*this)(r, c);
  return out;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), finite);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& z : data_) z *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(Complex scalar, ComplexMatrix m) { return m *= scalar; }
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) { return matmul(lhs, rhs); }

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  }
  return out;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  }
  return out;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: inner dimensions differ, " + shape_str(a) + " times " + shape_str(b));
  }
  ComplexMatrix out(a.rows(), b.cols());
  // i-k-j order keeps the inner loop on contiguous rows of b and out.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex* out_row = &out(i, 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      const Complex* b_row = &b(k, 0);
      for (std::size_t j = 0; j < b.cols(); ++j) out_row[j] += aik * b_row[j];
    }
  }
  return out;
}

double frobenius_norm(const ComplexMatrix& a) {
  // Scaled accumulation avoids overflow for large-magnitude entries.
  double scale = 0.0;
  for (const auto& z : a.entries()) scale = std::max({scale, std::abs(z.real()), std::abs(z.imag())});
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (const auto& z : a.entries()) {
    const double re = z.real() / scale;
    const double im = z.imag() / scale;
    sum += re * re + im * im;
  }
  return scale * std::sqrt(sum);
}

Complex inner_product(const ComplexMatrix& u, const ComplexMatrix& v) {
  if (u.cols() != 1 || v.cols() != 1 || u.rows() != v.rows()) {
    throw ShapeError("inner_product: expected equal-length columns, got " + shape_str(u) + " and " +
                     shape_str(v));
  }
  Complex sum{};
  for (std::size_t k = 0; k < u.rows(); ++k) sum += std::conj(u(k, 0)) * v(k, 0);
  return sum;
}

Complex trace(const ComplexMatrix& a) {
  if (!a.is_square()) throw ShapeError("trace: matrix is " + shape_str(a));
  Complex sum{};
  for (std::size_t i = 0; i < a.rows(); ++i) sum += a(i, i);
  return sum;
}

double max_row_sum(const ComplexMatrix& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (const auto& z : a.row(i)) s += std::abs(z);
    best = std::max(best, s);
  }
  return best;
}

double distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "distance");
  return frobenius_norm(a - b);
}

double hermitian_defect(const ComplexMatrix& a) {
  if (!a.is_square()) throw ShapeError("hermitian_defect: matrix is " + shape_str(a));
  return frobenius_norm(a - adjoint(a));
}

Embedded embed_square(const ComplexMatrix& a) {
  const EmbeddingShape shape{a.rows(), a.cols()};
  ComplexMatrix out(shape.side(), shape.side());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::copy(a.row(i).begin(), a.row(i).end(), &out(i, 0));
  }
  return {std::move(out), shape};
}

ComplexMatrix extract_rect(const ComplexMatrix& m, const EmbeddingShape& shape) {
  if (m.rows() != shape.side() || m.cols() != shape.side()) {
    throw ShapeError("extract_rect: expected side " + std::to_string(shape.side()) + ", got " +
                     shape_str(m));
  }
  return top_left(m, shape.m, shape.n);
}

ComplexMatrix top_left(const ComplexMatrix& m, std::size_t rows, std::size_t cols) {
  if (rows > m.rows() || cols > m.cols()) {
    throw ShapeError("top_left: block " + std::to_string(rows) + "x" + std::to_string(cols) +
                     " exceeds " + shape_str(m));
  }
  ComplexMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    std::copy_n(m.row(i).begin(), cols, &out(i, 0));
  }
  return out;
}

namespace {

// In-place LU with partial pivoting on a working copy; returns the row swaps
// performed, or throws when a pivot is below `pivot_tol`.
struct Elimination {
  ComplexMatrix lu;
  std::vector<std::size_t> perm;
  int swaps = 0;
};

Elimination eliminate(ComplexMatrix a, double pivot_tol, bool throw_on_singular, bool* singular) {
  const std::size_t n = a.rows();
  Elimination e{std::move(a), std::vector<std::size_t>(n), 0};
  for (std::size_t i = 0; i < n; ++i) e.perm[i] = i;
  auto& lu = e.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (!(best >= pivot_tol) || best == 0.0) {
      if (throw_on_singular) {
        throw SingularMatrix("solve_linear: pivot modulus " + std::to_string(best) + " below tolerance " +
                             std::to_string(pivot_tol) + " in column " + std::to_string(k));
      }
      *singular = true;
      return e;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      std::swap(e.perm[k], e.perm[piv]);
      ++e.swaps;
    }
    const Complex inv_pivot = 1.0 / lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex factor = lu(i, k) * inv_pivot;
      lu(i, k) = factor;
      if (factor == Complex{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= factor * lu(k, j);
    }
  }
  return e;
}

}  // namespace

ComplexMatrix solve_linear(const ComplexMatrix& a, const ComplexMatrix& b, double pivot_tol) {
  if (!a.is_square()) throw ShapeError("solve_linear: coefficient matrix is " + shape_str(a));
  if (b.rows() != a.rows()) {
    throw ShapeError("solve_linear: right-hand side " + shape_str(b) + " does not match " + shape_str(a));
  }
  const std::size_t n = a.rows();
  const std::size_t k = b.cols();
  if (pivot_tol < 0.0) pivot_tol = 1e-12 * max_row_sum(a);
  if (n == 0) return ComplexMatrix(0, k);

  const Elimination e = eliminate(a, pivot_tol, true, nullptr);
  const auto& lu = e.lu;

  ComplexMatrix x(n, k);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(b.row(e.perm[i]).begin(), b.row(e.perm[i]).end(), &x(i, 0));
  }
  // Forward substitution with the unit lower factor.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < i; ++p) {
      const Complex l = lu(i, p);
      if (l == Complex{}) continue;
      for (std::size_t j = 0; j < k; ++j) x(i, j) -= l * x(p, j);
    }
  }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t p = ii + 1; p < n; ++p) {
      const Complex u = lu(ii, p);
      if (u == Complex{}) continue;
      for (std::size_t j = 0; j < k; ++j) x(ii, j) -= u * x(p, j);
    }
    const Complex inv = 1.0 / lu(ii, ii);
    for (std::size_t j = 0; j < k; ++j) x(ii, j) *= inv;
  }
  return x;
}

Complex determinant(const ComplexMatrix& a) {
  if (!a.is_square()) throw ShapeError("determinant: matrix is " + shape_str(a));
  bool singular = false;
  const Elimination e = eliminate(a, 0.0, false, &singular);
  if (singular) return {};
  Complex det = (e.swaps % 2 == 0) ? 1.0 : -1.0;
  for (std::size_t i = 0; i < a.rows(); ++i) det *= e.lu(i, i);
  return det;
}

std::ostream& operator<<(std::ostream& os, const ComplexMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",\n [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << m(i, j);
    }
    os << ']';
  }
  return os << ']';
}

}  // namespace mpinv
