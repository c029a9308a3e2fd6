#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mpinv/eigen.hpp"
#include "mpinv/matrix.hpp"

namespace mpinv {

enum class Route { kAuto, kSpectral, kPolynomial, kTikhonov, kSvd, kFullRank };

std::string_view to_string(Route route);
/// Parses the lowercase route names used on the command line.
Route parse_route(std::string_view name);

/// Which Gram matrix a route works with: A A^* (m x m) or A^* A (n x n).
enum class GramSide { kSmaller, kRows, kCols };

/// Geometric regularization schedule mu_k = mu0 * factor^k, k < max_steps.
struct MuSchedule {
  /// Non-positive selects 1e-2 * ||A||_F^2.
  double mu0 = 0.0;
  double factor = 0.1;
  int max_steps = 12;
};

struct PinvOptions {
  Route route = Route::kAuto;
  /// Gram eigenvalues <= rank_tol * (largest Gram eigenvalue) count as zero.
  double rank_tol = 1e-10;
  MuSchedule mu{};
  /// Tikhonov acceptance: the smallest relative change between successive
  /// limit estimates must not exceed conv_tol.
  double conv_tol = 1e-8;
  /// Relative merge width for nearly equal Gram eigenvalues.
  double cluster_tol = 1e-8;
  /// Polynomial route: distinct Gram eigenvalues must differ by more than
  /// sep_tol * (largest eigenvalue).
  double sep_tol = 1e-6;
  /// Polynomial route: refuse when lagrange_amplification of the Gram
  /// spectrum exceeds this (rounding grows to about eps times it).
  double max_amplification = 1e4;
  /// Penrose residual bound, relative to PenroseReport::scale.
  double accept_tol = 1e-9;
  JacobiOptions jacobi{};

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// Frobenius residuals of the four Penrose conditions for a candidate B of A.
struct PenroseReport {
  double r1 = 0.0;  // ||A B A - A||
  double r2 = 0.0;  // ||B A B - B||
  double r3 = 0.0;  // ||A B - (A B)^*||
  double r4 = 0.0;  // ||B A - (B A)^*||
  double scale = 1.0;  // max(1, ||A||, ||B||)

  double max_residual() const;
  bool passes(double tol) const { return max_residual() <= tol * scale; }
};

PenroseReport verify_penrose(const ComplexMatrix& a, const ComplexMatrix& b);

/// A^+ = sum_{alpha > cut} alpha^{-1} A^* E_alpha over the spectral
/// projectors of A A^*. For exactly Hermitian A the same sum is evaluated as
/// sum lambda^{-1} E_lambda over the eigenpairs of A itself (likewise in
/// pinv_via_AstarA), which avoids squaring the condition number.
ComplexMatrix pinv_spectral(const ComplexMatrix& a, const PinvOptions& opts = {});

/// Mirror of pinv_spectral on A^* A: A^+ = sum beta^{-1} F_beta A^*.
ComplexMatrix pinv_via_AstarA(const ComplexMatrix& a, const PinvOptions& opts = {});

/// Eigenvalue-only route: Lagrange products of (G - beta_l) replace the
/// projectors. kCols (the default) works on A^* A, kRows on A A^*.
/// Throws DegenerateSeparation when the distinct Gram eigenvalues are too
/// close for the Lagrange weights, see PinvOptions::sep_tol and
/// PinvOptions::max_amplification.
ComplexMatrix pinv_polynomial(const ComplexMatrix& a, const PinvOptions& opts = {},
                              GramSide side = GramSide::kCols);

/// Regularized operator A^* (A A^* + mu)^{-1} = (A^* A + mu)^{-1} A^*, solved
/// on the smaller Gram side unless `side` says otherwise.
ComplexMatrix tikhonov_iterate(const ComplexMatrix& a, double mu, GramSide side = GramSide::kSmaller);

/// Regularized iterates X(mu_k) along the schedule together with the running
/// estimates of lim_{mu -> 0} X(mu).
///
/// limits[k] is the value at mu = 0 of the polynomial in mu interpolating
/// X(mu_0), ..., X(mu_k) (Neville's scheme). X(mu) is a rational function of
/// mu whose poles sit at minus the nonzero Gram eigenvalues, so the
/// extrapolation error is a product of mu_i / (alpha + mu_i) factors and
/// the limit is reached while mu is still large compared to rounding in the
/// Gram solve.
struct TikhonovTrace {
  std::vector<double> mu;
  std::vector<ComplexMatrix> iterates;
  std::vector<ComplexMatrix> limits;
  bool converged = false;
};

/// Walks the schedule until the relative change between successive limit
/// estimates has passed its minimum, then truncates the trace so that
/// limits.back() is the estimate just before that minimum. converged is set
/// when the minimum change is <= conv_tol.
TikhonovTrace tikhonov_trace(const ComplexMatrix& a, const PinvOptions& opts = {});

/// lim_{mu -> 0} A^* (A A^* + mu)^{-1}, read off the converged trace.
/// Throws NoConvergence when the schedule ends before the stop rule holds.
ComplexMatrix pinv_tikhonov(const ComplexMatrix& a, const PinvOptions& opts = {});

/// SVD route. Square input uses W S^+ V^*; rectangular input goes through
/// the (m+n) square embedding and reads the n x m block back out.
ComplexMatrix pinv_svd(const ComplexMatrix& a, const PinvOptions& opts = {});

enum class FullRankSide {
  kRows,  // A^* (A A^*)^{-1}, needs full row rank
  kCols,  // (A^* A)^{-1} A^*, needs full column rank
};

/// Closed forms for full-rank input; SingularMatrix signals rank deficiency.
ComplexMatrix pinv_fullrank(const ComplexMatrix& a, FullRankSide side);

/// One Newton-Schulz step 2X - X A X from a pseudoinverse estimate X. The
/// Penrose residual A - A X A becomes (A - A X A)(1 - X A), so a Gram-route
/// estimate with error near eps * cond(A)^2 comes back near eps * cond(A).
ComplexMatrix refine_pinv(const ComplexMatrix& a, const ComplexMatrix& x);

struct PinvResult {
  ComplexMatrix matrix;
  Route route_used = Route::kAuto;
  PenroseReport report;
  bool passed = false;
};

/// Front door. kAuto tries the full-rank closed form for the smaller Gram
/// side and falls back to the spectral route when that side is singular or
/// fails the Penrose check. Explicit routes run as requested. Always verifies.
PinvResult pinv(const ComplexMatrix& a, const PinvOptions& opts = {});

}  // namespace mpinv
