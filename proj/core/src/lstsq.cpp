#include "mpinv/lstsq.hpp"

#include <algorithm>
#include <string>

namespace mpinv {

namespace {

ComplexMatrix identity_minus(const ComplexMatrix& m) {
  ComplexMatrix out = ComplexMatrix::identity(m.rows()) - m;
  return out;
}

}  // namespace

LeastSquaresSolution least_squares_from(const ComplexMatrix& a, const ComplexMatrix& a_plus, const ComplexMatrix& y) {
  if (y.rows() != a.rows()) {
    throw ShapeError("solve_least_squares: right-hand side has " + std::to_string(y.rows()) + " rows, expected " +
                     std::to_string(a.rows()));
  }
  if (a_plus.rows() != a.cols() || a_plus.cols() != a.rows()) {
    throw ShapeError("least_squares_from: pseudoinverse is " + std::to_string(a_plus.rows()) + "x" +
                     std::to_string(a_plus.cols()) + ", expected " + std::to_string(a.cols()) + "x" +
                     std::to_string(a.rows()));
  }
  const ComplexMatrix x = refine_pinv(a, a_plus);
  LeastSquaresSolution sol;
  sol.x_min = matmul(x, y);
  sol.kernel_projector = identity_minus(matmul(x, a));
  // ||A x_min - y|| = ||(A A^+ - 1) y|| = ||P2 y||.
  const ComplexMatrix p2 = identity_minus(matmul(a, x));
  sol.residual_norm = frobenius_norm(matmul(p2, y));
  sol.exact = sol.residual_norm <= 1e-9 * std::max(1.0, frobenius_norm(y));
  return sol;
}

LeastSquaresSolution solve_least_squares(const ComplexMatrix& a, const ComplexMatrix& y, const PinvOptions& opts) {
  if (y.rows() != a.rows()) {
    throw ShapeError("solve_least_squares: right-hand side has " + std::to_string(y.rows()) + " rows, expected " +
                     std::to_string(a.rows()));
  }
  return least_squares_from(a, pinv(a, opts).matrix, y);
}

ComplexMatrix kernel_projector(const ComplexMatrix& a, const PinvOptions& opts) {
  return identity_minus(matmul(refine_pinv(a, pinv(a, opts).matrix), a));
}

ComplexMatrix range_projector(const ComplexMatrix& a, const PinvOptions& opts) {
  return identity_minus(matmul(a, refine_pinv(a, pinv(a, opts).matrix)));
}

ComplexMatrix minimizing_set_sample(const LeastSquaresSolution& sol, const ComplexMatrix& z) {
  if (z.rows() != sol.kernel_projector.cols() || z.cols() != sol.x_min.cols()) {
    throw ShapeError("minimizing_set_sample: z is " + std::to_string(z.rows()) + "x" + std::to_string(z.cols()) +
                     ", expected " + std::to_string(sol.kernel_projector.cols()) + "x" +
                     std::to_string(sol.x_min.cols()));
  }
  return sol.x_min + matmul(sol.kernel_projector, z);
}

}  // namespace mpinv
