#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mpinv/matrix.hpp"

namespace mpinv {

/// Eigenpairs of a Hermitian matrix: H = vectors * diag(eigenvalues) * vectors^*.
/// Eigenvalues are sorted descending; equal values keep the order the
/// rotations left them in.
struct HermitianEigen {
  std::vector<double> eigenvalues;
  ComplexMatrix vectors;  // columns are orthonormal eigenvectors
};

struct JacobiOptions {
  /// Sweeps stop once the off-diagonal Frobenius mass is <= tol * ||H||_F.
  double tol = 1e-15;
  int max_sweeps = 64;
  /// Relative bound on ||H - H^*||_F accepted as Hermitian.
  double hermitian_tol = 1e-12;
  /// 0 sweeps pairs in row-cyclic order. Any other value shuffles the index
  /// order with this seed, which yields a different but equally valid run.
  std::uint64_t ordering_seed = 0;
  /// When false only eigenvalues are produced and `vectors` is left empty.
  bool compute_vectors = true;
};

/// Cyclic complex Jacobi eigensolver.
/// Throws NotHermitian when the input is not self-adjoint within
/// `hermitian_tol`, and NoConvergence when `max_sweeps` is exhausted.
HermitianEigen hermitian_eig(const ComplexMatrix& h, const JacobiOptions& opts = {});

/// Distinct eigenvalues of a descending list with their multiplicities.
struct DistinctSpectrum {
  std::vector<double> values;
  std::vector<std::size_t> multiplicities;
};

/// Merges neighbours with |l_i - l_{i+1}| <= cluster_tol * max(1, |l_0|) into
/// one value equal to the mean of the merged run.
DistinctSpectrum distinct_spectrum(const std::vector<double>& descending, double cluster_tol = 1e-8);

/// Distinct eigenvalues with their orthogonal spectral projectors.
struct SpectralDecomposition {
  std::vector<double> distinct_values;
  std::vector<ComplexMatrix> projectors;
  std::vector<std::size_t> multiplicities;

  std::size_t dimension() const { return projectors.empty() ? 0 : projectors.front().rows(); }
  /// sum_a alpha_a E_a.
  ComplexMatrix reconstruct() const;
};

/// Groups eigenvectors by cluster and sums their rank-one projectors v v^*.
SpectralDecomposition spectral_projectors(const HermitianEigen& eig, double cluster_tol = 1e-8);

/// Convenience: eigendecompose and group in one call.
SpectralDecomposition spectral_decomposition(const ComplexMatrix& h, double cluster_tol = 1e-8,
                                             const JacobiOptions& opts = {});

/// Worst-case growth of the Lagrange products: max over j of
/// prod_{l != j} spread_l / |a_j - a_l|, where spread_l = max_k |a_k - a_l|
/// bounds ||A - a_l|| for normal A. Rounding in projectors_by_polynomial is
/// roughly eps times this.
double lagrange_amplification(const std::vector<double>& distinct_values);

/// Projectors E_j = prod_{l != j} (A - a_l) / (a_j - a_l) for a diagonalizable
/// A with the given distinct eigenvalues. A single value yields the identity.
/// Throws DegenerateSeparation when two values are within `sep_tol`; a
/// negative `sep_tol` selects 1e-6 * max |a_l|.
std::vector<ComplexMatrix> projectors_by_polynomial(const ComplexMatrix& a,
                                                    const std::vector<double>& distinct_values,
                                                    double sep_tol = -1.0);

/// Monic characteristic polynomial det(z - A), coefficients in ascending
/// order: coefficients[k] multiplies z^k and coefficients[n] == 1.
struct CharPoly {
  std::vector<Complex> coefficients;

  std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
  Complex operator()(Complex z) const;
};

inline constexpr std::size_t kCharPolyMaxDim = 30;

/// Faddeev-LeVerrier recurrence. Throws SizeLimitExceeded above `max_dim`.
CharPoly char_poly(const ComplexMatrix& a, std::size_t max_dim = kCharPolyMaxDim);

/// p(A) = sum_a p(alpha_a) E_a; `coefficients` ascending like CharPoly.
ComplexMatrix apply_poly(const SpectralDecomposition& decomp, const std::vector<Complex>& coefficients);

/// Horner evaluation of p(A) by matrix products; the direct counterpart to apply_poly.
ComplexMatrix horner(const ComplexMatrix& a, const std::vector<Complex>& coefficients);

}  // namespace mpinv
