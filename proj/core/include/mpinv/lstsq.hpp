#pragma once

#include "mpinv/matrix.hpp"
#include "mpinv/pinv.hpp"

namespace mpinv {

/// Every minimizer of ||A x - y|| is x_min + kernel_projector * z for some z.
struct LeastSquaresSolution {
  ComplexMatrix x_min;             // A^+ y, the minimum-norm minimizer
  ComplexMatrix kernel_projector;  // 1_n - A^+ A
  double residual_norm = 0.0;      // ||A x_min - y||_F over all columns of y
  bool exact = false;              // residual_norm <= 1e-9 * max(1, ||y||)
};

/// Least-squares solution for one or more right-hand sides stacked as the
/// columns of y (m rows). The pseudoinverse comes from pinv(A, opts) and
/// gets one refine_pinv step.
LeastSquaresSolution solve_least_squares(const ComplexMatrix& a, const ComplexMatrix& y, const PinvOptions& opts = {});

/// Same, with a pseudoinverse that is already at hand. The solution and both
/// projectors use refine_pinv(a, a_plus).
LeastSquaresSolution least_squares_from(const ComplexMatrix& a, const ComplexMatrix& a_plus, const ComplexMatrix& y);

/// P1 = 1_n - A^+ A, the orthogonal projector onto Ker(A).
ComplexMatrix kernel_projector(const ComplexMatrix& a, const PinvOptions& opts = {});

/// P2 = 1_m - A A^+, the orthogonal projector onto Ran(A)^perp.
ComplexMatrix range_projector(const ComplexMatrix& a, const PinvOptions& opts = {});

/// x_min + kernel_projector * z: another member of the minimizing set.
ComplexMatrix minimizing_set_sample(const LeastSquaresSolution& sol, const ComplexMatrix& z);

}  // namespace mpinv
