#pragma once

#include <optional>
#include <vector>

#include "mpinv/eigen.hpp"
#include "mpinv/matrix.hpp"

namespace mpinv {

struct DecompOptions {
  /// Gram eigenvalues d_k <= rank_tol * d_max are treated as zero.
  double rank_tol = 1e-10;
  /// Negative eigenvalues down to -psd_tol * ||H||_F are rounding and get clamped.
  double psd_tol = 1e-10;
  JacobiOptions jacobi{};
};

/// Principal square root P D^{1/2} P^* of a Hermitian positive semidefinite
/// matrix. Throws NotPSD for an eigenvalue below -psd_tol * ||H||_F.
ComplexMatrix sqrt_psd(const ComplexMatrix& h, const DecompOptions& opts = {});

/// A = unitary * psd_factor with psd_factor = sqrt(A^* A).
struct PolarFactors {
  ComplexMatrix unitary;
  ComplexMatrix psd_factor;
};

/// Right polar form A = U |A|. U is always unitary; for singular A the
/// missing directions are completed from the canonical basis. Gram
/// eigenvalues at or below rank_tol * d_max give exact zeros in |A|.
PolarFactors polar(const ComplexMatrix& a, const DecompOptions& opts = {});

/// Left polar form A = sqrt(A A^*) V, returned as {V, sqrt(A A^*)}.
PolarFactors polar_left(const ComplexMatrix& a, const DecompOptions& opts = {});

/// A = V S W^*. For rectangular input the factors belong to the square
/// embedding and `shape` records the original rectangle.
struct SvdFactors {
  ComplexMatrix v;
  std::vector<double> s;  // descending, nonnegative
  ComplexMatrix w;
  std::optional<EmbeddingShape> shape;

  ComplexMatrix s_matrix() const { return ComplexMatrix::diagonal(s); }
  /// V S W^*, cut back to the original rectangle when embedded.
  ComplexMatrix reconstruct() const;
};

/// Square SVD via the polar factors: V = U P, W = P, S = D^{1/2} where
/// A^* A = P D P^*. Singular values whose square is at or below
/// rank_tol * s_max^2 are reported as exact zeros.
SvdFactors svd_square(const ComplexMatrix& a, const DecompOptions& opts = {});

/// Rectangular SVD of the (m+n) x (m+n) block embedding of A.
SvdFactors svd_rect(const ComplexMatrix& a, const DecompOptions& opts = {});

/// min(m, n) singular values, descending, from the smaller Gram matrix.
std::vector<double> singular_values(const ComplexMatrix& a, const JacobiOptions& opts = {});

/// Extends orthonormal columns to a full unitary basis of the same height.
/// Each new column is the canonical basis vector with the largest part
/// outside the span so far, projected and normalized.
ComplexMatrix complete_basis(const ComplexMatrix& orthonormal_columns);

}  // namespace mpinv
