#pragma once

// Independent reference computations and comparison helpers for tests.

#include <algorithm>
#include <cmath>

#include "mpinv/matrix.hpp"

namespace mpinv::testing {

/// Plain triple loop, written without any library helper.
inline ComplexMatrix naive_matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Complex acc{};
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  }
  return c;
}

/// Largest entrywise modulus of a - b; infinity on a shape mismatch.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
  return worst;
}

inline double rel_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return distance(a, b) / std::max(1e-300, frobenius_norm(b));
}

inline constexpr Complex I{0.0, 1.0};

/// [[2,0,i],[0,i,1]] and its pseudoinverse (1/9)[[4,-2i],[1,-5i],[-i,4]].
inline ComplexMatrix example1() { return ComplexMatrix{{2, 0, I}, {0, I, 1}}; }
inline ComplexMatrix example1_pinv() {
  return Complex(1.0 / 9.0) * ComplexMatrix{{4, -2.0 * I}, {1, -5.0 * I}, {-I, 4}};
}

/// [[1,2],[0,i],[0,3]] and its pseudoinverse (1/10)[[10,2i,-6],[0,-i,3]].
inline ComplexMatrix example2() { return ComplexMatrix{{1, 2}, {0, I}, {0, 3}}; }
inline ComplexMatrix example2_pinv() {
  return Complex(0.1) * ComplexMatrix{{10, 2.0 * I, -6}, {0, -I, 3}};
}

}  // namespace mpinv::testing
