#include <gtest/gtest.h>

#include <cmath>

#include "mpinv/eigen.hpp"
#include "oracles.hpp"
#include "random_matrices.hpp"

namespace mpinv {
namespace {

using testing::I;
using testing::MatrixGen;
using testing::max_abs_diff;

void expect_projector_algebra(const SpectralDecomposition& d, double tol) {
  const std::size_t n = d.dimension();
  ComplexMatrix sum(n, n);
  for (std::size_t a = 0; a < d.projectors.size(); ++a) {
    sum += d.projectors[a];
    EXPECT_LE(hermitian_defect(d.projectors[a]), tol);
    for (std::size_t b = 0; b < d.projectors.size(); ++b) {
      const ComplexMatrix prod = matmul(d.projectors[a], d.projectors[b]);
      const ComplexMatrix expected = a == b ? d.projectors[a] : ComplexMatrix(n, n);
      EXPECT_LE(distance(prod, expected), tol) << "a=" << a << " b=" << b;
    }
  }
  EXPECT_LE(distance(sum, ComplexMatrix::identity(n)), tol);
}

TEST(HermitianEig, DiagonalInput) {
  const std::vector<double> d{3.0, 1.0};
  const HermitianEigen e = hermitian_eig(ComplexMatrix::diagonal(d));
  EXPECT_EQ(e.eigenvalues, d);
  EXPECT_EQ(e.vectors, ComplexMatrix::identity(2));
}

TEST(HermitianEig, SwapMatrix) {
  const HermitianEigen e = hermitian_eig(ComplexMatrix{{0, 1}, {1, 0}});
  ASSERT_EQ(e.eigenvalues.size(), 2u);
  EXPECT_NEAR(e.eigenvalues[0], 1.0, 1e-15);
  EXPECT_NEAR(e.eigenvalues[1], -1.0, 1e-15);
}

TEST(HermitianEig, GramOfWorkedExample) {
  // A A^* = [[5, i], [-i, 2]]: trace 7, determinant 9.
  const ComplexMatrix a = testing::example1();
  const ComplexMatrix g = matmul(a, adjoint(a));
  EXPECT_EQ(g, (ComplexMatrix{{5, I}, {-I, 2}}));
  const HermitianEigen e = hermitian_eig(g);
  EXPECT_NEAR(e.eigenvalues[0], (7.0 + std::sqrt(13.0)) / 2.0, 1e-14);
  EXPECT_NEAR(e.eigenvalues[1], (7.0 - std::sqrt(13.0)) / 2.0, 1e-14);
}

TEST(HermitianEig, RandomInvariants) {
  MatrixGen gen(21);
  for (std::size_t n : {1u, 2u, 3u, 7u, 20u, 41u, 60u}) {
    const ComplexMatrix h = gen.hermitian(n);
    const HermitianEigen e = hermitian_eig(h);
    const ComplexMatrix& p = e.vectors;
    EXPECT_LE(distance(matmul(adjoint(p), p), ComplexMatrix::identity(n)), 1e-10) << n;
    const ComplexMatrix rebuilt = matmul(matmul(p, ComplexMatrix::diagonal(e.eigenvalues)), adjoint(p));
    EXPECT_LE(distance(rebuilt, h), 1e-10 * frobenius_norm(h)) << n;
    EXPECT_TRUE(std::is_sorted(e.eigenvalues.rbegin(), e.eigenvalues.rend())) << n;
  }
}

TEST(HermitianEig, SubnormalCouplingKeepsVectorsUnitary) {
  const Complex tiny(3e-316, 4e-316);
  const ComplexMatrix h{{2, tiny}, {std::conj(tiny), 2}};
  const HermitianEigen e = hermitian_eig(h);
  EXPECT_LE(distance(matmul(adjoint(e.vectors), e.vectors), ComplexMatrix::identity(2)), 1e-15);
}

TEST(HermitianEig, RepeatedSpectraStayOrthonormal) {
  // Clustered spectra drive couplings into the subnormal range within a few sweeps.
  MatrixGen gen(16646);
  const double levels[] = {-1.5, 0.0, 0.75, 2.0};
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = gen.index(2, 20);
    std::vector<double> values(n);
    for (double& v : values) v = levels[gen.index(0, 3)];
    const ComplexMatrix h = gen.hermitian_with_spectrum(values);
    const HermitianEigen e = hermitian_eig(h);
    EXPECT_LE(distance(matmul(adjoint(e.vectors), e.vectors), ComplexMatrix::identity(n)), 1e-12) << t;
  }
}

TEST(HermitianEig, ValuesOnlyMatchFullRun) {
  MatrixGen gen(22);
  const ComplexMatrix h = gen.hermitian(9);
  JacobiOptions opts;
  opts.compute_vectors = false;
  const HermitianEigen values_only = hermitian_eig(h, opts);
  const HermitianEigen full = hermitian_eig(h);
  EXPECT_TRUE(values_only.vectors.empty());
  for (std::size_t k = 0; k < 9; ++k) EXPECT_NEAR(values_only.eigenvalues[k], full.eigenvalues[k], 1e-12);
}

TEST(HermitianEig, RejectsNonHermitian) {
  EXPECT_THROW((void)hermitian_eig(ComplexMatrix{{1, 2}, {0, 1}}), NotHermitian);
  EXPECT_THROW((void)hermitian_eig(ComplexMatrix{{I}}), NotHermitian);
  EXPECT_THROW((void)hermitian_eig(ComplexMatrix(2, 3)), ShapeError);
}

TEST(HermitianEig, ReportsExhaustedSweeps) {
  MatrixGen gen(23);
  JacobiOptions opts;
  opts.max_sweeps = 1;
  EXPECT_THROW((void)hermitian_eig(gen.hermitian(12), opts), NoConvergence);
}

TEST(HermitianEig, GramOfProductIsPositive) {
  MatrixGen gen(24);
  const ComplexMatrix a = gen.low_rank(9, 7, 3);
  const HermitianEigen e = hermitian_eig(matmul(adjoint(a), a));
  const double top = e.eigenvalues.front();
  for (double v : e.eigenvalues) EXPECT_GE(v, -1e-10 * top);
}

TEST(DistinctSpectrum, ExactRepeats) {
  const DistinctSpectrum s = distinct_spectrum({5, 5, 2}, 1e-8);
  EXPECT_EQ(s.values, (std::vector<double>{5, 2}));
  EXPECT_EQ(s.multiplicities, (std::vector<std::size_t>{2, 1}));
}

TEST(DistinctSpectrum, NearRepeatsMerge) {
  const DistinctSpectrum s = distinct_spectrum({1 + 1e-12, 1, 0}, 1e-8);
  ASSERT_EQ(s.values.size(), 2u);
  EXPECT_NEAR(s.values[0], 1.0, 1e-12);
  EXPECT_EQ(s.values[1], 0.0);
  EXPECT_EQ(s.multiplicities, (std::vector<std::size_t>{2, 1}));
}

TEST(DistinctSpectrum, SeparatedValuesStaySingletons) {
  const DistinctSpectrum s = distinct_spectrum({3, 2, 1}, 1e-8);
  EXPECT_EQ(s.values, (std::vector<double>{3, 2, 1}));
  EXPECT_EQ(s.multiplicities, (std::vector<std::size_t>{1, 1, 1}));
}

TEST(SpectralProjectors, IdentityHasOneProjector) {
  const SpectralDecomposition d = spectral_decomposition(ComplexMatrix::identity(2));
  ASSERT_EQ(d.projectors.size(), 1u);
  EXPECT_EQ(d.distinct_values, (std::vector<double>{1.0}));
  EXPECT_LE(max_abs_diff(d.projectors[0], ComplexMatrix::identity(2)), 1e-15);
}

TEST(SpectralProjectors, DiagonalBlocks) {
  const std::vector<double> diag{2, 2, 5};
  const SpectralDecomposition d = spectral_decomposition(ComplexMatrix::diagonal(diag));
  ASSERT_EQ(d.distinct_values, (std::vector<double>{5, 2}));
  const std::vector<double> e5{0, 0, 1};
  EXPECT_LE(max_abs_diff(d.projectors[0], ComplexMatrix::diagonal(e5)), 1e-15);
  EXPECT_EQ(d.multiplicities, (std::vector<std::size_t>{1, 2}));
}

TEST(SpectralProjectors, RandomAlgebraAndReconstruction) {
  MatrixGen gen(25);
  for (std::size_t n : {6u, 15u, 30u}) {
    const ComplexMatrix h = gen.hermitian(n);
    const SpectralDecomposition d = spectral_decomposition(h);
    expect_projector_algebra(d, 1e-10);
    EXPECT_LE(distance(d.reconstruct(), h), 1e-10 * frobenius_norm(h));
  }
}

TEST(SpectralProjectors, RepeatedEigenvaluesGroup) {
  MatrixGen gen(26);
  const ComplexMatrix h = gen.hermitian_with_spectrum({4, 4, 4, 1, 1, 0});
  const SpectralDecomposition d = spectral_decomposition(h);
  ASSERT_EQ(d.distinct_values.size(), 3u);
  EXPECT_EQ(d.multiplicities, (std::vector<std::size_t>{3, 2, 1}));
  expect_projector_algebra(d, 1e-10);
  for (std::size_t a = 0; a < 3; ++a) {
    EXPECT_NEAR(trace(d.projectors[a]).real(), static_cast<double>(d.multiplicities[a]), 1e-10);
  }
}

TEST(SpectralProjectors, IndependentOfJacobiOrdering) {
  MatrixGen gen(27);
  const ComplexMatrix h = gen.hermitian_with_spectrum({3, 3, -1, 2, 2, 2, 0.5});
  JacobiOptions other;
  other.ordering_seed = 987654321;
  const SpectralDecomposition a = spectral_decomposition(h);
  const SpectralDecomposition b = spectral_decomposition(h, 1e-8, other);
  ASSERT_EQ(a.distinct_values.size(), b.distinct_values.size());
  for (std::size_t k = 0; k < a.distinct_values.size(); ++k) {
    EXPECT_NEAR(a.distinct_values[k], b.distinct_values[k], 1e-10);
    EXPECT_LE(distance(a.projectors[k], b.projectors[k]), 1e-8);
  }
}

TEST(PolynomialProjectors, SingleValueGivesIdentity) {
  const ComplexMatrix a = Complex(2.5) * ComplexMatrix::identity(3);
  const auto e = projectors_by_polynomial(a, {2.5});
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0], ComplexMatrix::identity(3));
}

TEST(PolynomialProjectors, TwoByTwoByHand) {
  const std::vector<double> diag{1, 2};
  const auto e = projectors_by_polynomial(ComplexMatrix::diagonal(diag), {1, 2});
  const std::vector<double> first{1, 0};
  EXPECT_LE(max_abs_diff(e[0], ComplexMatrix::diagonal(first)), 1e-15);
}

TEST(PolynomialProjectors, AgreeWithEigenvectorProjectors) {
  MatrixGen gen(28);
  const ComplexMatrix h = gen.hermitian_with_spectrum({2.0, -1.5, 0.7, 3.1, -0.2});
  const SpectralDecomposition d = spectral_decomposition(h);
  const auto poly = projectors_by_polynomial(h, d.distinct_values);
  double worst = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) worst = std::max(worst, distance(poly[k], d.projectors[k]));
  EXPECT_LE(worst, 1e-8);
}

TEST(PolynomialProjectors, RefuseCloseValues) {
  EXPECT_THROW((void)projectors_by_polynomial(ComplexMatrix::identity(2), {1.0, 1.0 + 1e-9}), DegenerateSeparation);
  EXPECT_THROW((void)projectors_by_polynomial(ComplexMatrix::identity(2), {1.0, 0.5}, 0.6), DegenerateSeparation);
}

TEST(LagrangeAmplification, ByHand) {
  EXPECT_EQ(lagrange_amplification({7.0}), 1.0);
  // Values 0, 1, 2 (spreads 2, 1, 2): j=0 gives (1/1)(2/2) = 1, j=1 gives
  // (2/1)(2/1) = 4, j=2 gives 1.
  EXPECT_DOUBLE_EQ(lagrange_amplification({0.0, 1.0, 2.0}), 4.0);
  EXPECT_GT(lagrange_amplification({0.0, 0.001, 1.0}), 1e3);
}

TEST(CharPoly, Identity) {
  const CharPoly p = char_poly(ComplexMatrix::identity(2));
  ASSERT_EQ(p.coefficients.size(), 3u);
  EXPECT_EQ(p.coefficients[2], Complex(1.0));
  EXPECT_LE(std::abs(p.coefficients[1] + 2.0), 1e-15);
  EXPECT_LE(std::abs(p.coefficients[0] - 1.0), 1e-15);
}

TEST(CharPoly, Nilpotent) {
  const CharPoly p = char_poly(ComplexMatrix{{0, 1}, {0, 0}});
  EXPECT_EQ(p.coefficients, (std::vector<Complex>{0, 0, 1}));
}

TEST(CharPoly, ConstantTermIsSignedDeterminant) {
  MatrixGen gen(29);
  for (std::size_t n = 1; n <= 6; ++n) {
    const ComplexMatrix a = gen.dense(n, n);
    const CharPoly p = char_poly(a);
    const Complex sign = n % 2 ? -1.0 : 1.0;
    EXPECT_LE(std::abs(p.coefficients[0] - sign * determinant(a)), 1e-10 * std::max(1.0, std::abs(determinant(a))));
    EXPECT_EQ(p.coefficients.back(), Complex(1.0));
  }
}

TEST(CharPoly, VanishesOnEigenvalues) {
  MatrixGen gen(30);
  const ComplexMatrix h = gen.hermitian_with_spectrum({2.0, -1.0, 0.5, 3.0});
  const CharPoly p = char_poly(h);
  for (double v : {2.0, -1.0, 0.5, 3.0}) EXPECT_LE(std::abs(p(v)), 1e-10);
}

TEST(CharPoly, ProductsCommuteUpToPowersOfX) {
  // x^n p_{AB}(x) = x^m p_{BA}(x) for A m x n, B n x m.
  MatrixGen gen(31);
  const ComplexMatrix a = gen.dense(3, 2);
  const ComplexMatrix b = gen.dense(2, 3);
  const CharPoly ab = char_poly(matmul(a, b));  // degree 3
  const CharPoly ba = char_poly(matmul(b, a));  // degree 2
  std::vector<Complex> lhs(6), rhs(6);
  for (std::size_t k = 0; k <= 3; ++k) lhs[k + 2] = ab.coefficients[k];
  for (std::size_t k = 0; k <= 2; ++k) rhs[k + 3] = ba.coefficients[k];
  for (std::size_t k = 0; k < 6; ++k) EXPECT_LE(std::abs(lhs[k] - rhs[k]), 1e-9) << k;
}

TEST(CharPoly, SimilarityInvariance) {
  MatrixGen gen(32);
  for (std::size_t n = 2; n <= 8; ++n) {
    const ComplexMatrix a = gen.dense(n, n);
    ComplexMatrix p = gen.dense(n, n);
    for (std::size_t i = 0; i < n; ++i) p(i, i) += 2.0 * std::sqrt(static_cast<double>(n));
    const ComplexMatrix similar = matmul(solve_linear(p, a), p);
    const CharPoly pa = char_poly(a);
    const CharPoly ps = char_poly(similar);
    double scale = 0.0;
    for (const Complex& c : pa.coefficients) scale = std::max(scale, std::abs(c));
    for (std::size_t k = 0; k <= n; ++k) EXPECT_LE(std::abs(pa.coefficients[k] - ps.coefficients[k]), 1e-8 * scale);
  }
}

TEST(CharPoly, SizeLimit) {
  EXPECT_THROW((void)char_poly(ComplexMatrix::identity(kCharPolyMaxDim + 1)), SizeLimitExceeded);
  EXPECT_THROW((void)char_poly(ComplexMatrix::identity(5), 4), SizeLimitExceeded);
}

TEST(FunctionalCalculus, ConstantPolynomialGivesIdentity) {
  MatrixGen gen(33);
  const SpectralDecomposition d = spectral_decomposition(gen.hermitian(5));
  EXPECT_LE(distance(apply_poly(d, {1.0}), ComplexMatrix::identity(5)), 1e-10);
}

TEST(FunctionalCalculus, IdentityPolynomialReconstructs) {
  const std::vector<double> diag{1, 2, 3};
  const ComplexMatrix a = ComplexMatrix::diagonal(diag);
  EXPECT_LE(distance(apply_poly(spectral_decomposition(a), {0.0, 1.0}), a), 1e-14);
}

TEST(FunctionalCalculus, SquareMatchesHorner) {
  MatrixGen gen(34);
  const ComplexMatrix h = gen.hermitian(4);
  const SpectralDecomposition d = spectral_decomposition(h);
  EXPECT_LE(distance(apply_poly(d, {0.0, 0.0, 1.0}), matmul(h, h)), 1e-10 * frobenius_norm(matmul(h, h)));
  const std::vector<Complex> p{1.0, -2.0 * I, 0.5, Complex(0.25, 1.0)};
  EXPECT_LE(distance(apply_poly(d, p), horner(h, p)), 1e-10 * std::max(1.0, frobenius_norm(horner(h, p))));
}

TEST(SingularShift, ShiftedSingularMatrixIsSolvable) {
  // A + mu 1 is invertible for 0 < mu below the smallest nonzero |eigenvalue|.
  MatrixGen gen(35);
  for (std::size_t n = 2; n <= 10; ++n) {
    const ComplexMatrix a = gen.low_rank(n, n, n - 1);
    EXPECT_THROW((void)solve_linear(a, ComplexMatrix::identity(n), 1e-9 * max_row_sum(a)),
                 SingularMatrix);
    const double mu = 1e-6 * frobenius_norm(a);
    const ComplexMatrix shifted = a + Complex(mu) * ComplexMatrix::identity(n);
    EXPECT_NO_THROW((void)solve_linear(shifted, ComplexMatrix::identity(n))) << n;
  }
}

}  // namespace
}  // namespace mpinv
