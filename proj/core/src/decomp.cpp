#include "mpinv/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mpinv {

namespace {

// Eigendecomposition of a PSD matrix with rounding negatives clamped to zero.
HermitianEigen psd_eig(const ComplexMatrix& h, const DecompOptions& opts) {
  HermitianEigen eig = hermitian_eig(h, opts.jacobi);
  const double floor = -opts.psd_tol * frobenius_norm(h);
  for (double& d : eig.eigenvalues) {
    if (d < floor) {
      throw NotPSD("eigenvalue " + std::to_string(d) + " below -psd_tol * ||H||_F");
    }
    d = std::max(d, 0.0);
  }
  return eig;
}

ComplexMatrix scale_columns_and_mult_adjoint(const ComplexMatrix& p, const std::vector<double>& diag) {
  // P diag(d) P^*
  const std::size_t n = p.rows();
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Complex sum{};
      for (std::size_t k = 0; k < diag.size(); ++k) sum += p(i, k) * diag[k] * std::conj(p(j, k));
      out(i, j) = sum;
      out(j, i) = std::conj(sum);
    }
    out(i, i) = out(i, i).real();
  }
  return out;
}

double column_norm(const ComplexMatrix& m, std::size_t c) {
  double s = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) s += std::norm(m(r, c));
  return std::sqrt(s);
}

// Orthonormalizes the columns of `q` in place by modified Gram-Schmidt.
void orthonormalize(ComplexMatrix& q) {
  for (std::size_t c = 0; c < q.cols(); ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      Complex dot{};
      for (std::size_t r = 0; r < q.rows(); ++r) dot += std::conj(q(r, prev)) * q(r, c);
      for (std::size_t r = 0; r < q.rows(); ++r) q(r, c) -= dot * q(r, prev);
    }
    const double nrm = column_norm(q, c);
    for (std::size_t r = 0; r < q.rows(); ++r) q(r, c) /= nrm;
  }
}

// Unitary factor from the right Gram eigendecomposition A^* A = P D P^*:
// w_k = A v_k / sqrt(d_k) for d_k above the rank cut, completed to a basis.
ComplexMatrix unitary_from_gram(const ComplexMatrix& a, const HermitianEigen& eig, const DecompOptions& opts,
                                ComplexMatrix* q_out) {
  const std::size_t n = a.cols();
  const double d_max = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
  std::size_t rank = 0;
  while (rank < n && d_max > 0.0 && eig.eigenvalues[rank] > opts.rank_tol * d_max) ++rank;

  ComplexMatrix w(a.rows(), rank);
  const ComplexMatrix av = matmul(a, eig.vectors);
  for (std::size_t k = 0; k < rank; ++k) {
    const double inv = 1.0 / std::sqrt(eig.eigenvalues[k]);
    for (std::size_t r = 0; r < a.rows(); ++r) w(r, k) = av(r, k) * inv;
  }
  orthonormalize(w);
  ComplexMatrix q = complete_basis(w);
  ComplexMatrix u = matmul(q, adjoint(eig.vectors));
  if (q_out != nullptr) *q_out = std::move(q);
  return u;
}

// sqrt(d_k) for Gram eigenvalues above the rank cut, exact zeros below it.
// Kernel directions come out of the Gram solve near eps * d_max, and their
// square roots would otherwise leak sqrt(eps) * s_max into the factors.
std::vector<double> gram_roots(const std::vector<double>& d, double rank_tol) {
  const double d_max = d.empty() ? 0.0 : d.front();
  std::vector<double> out(d.size());
  std::transform(d.begin(), d.end(), out.begin(),
                 [&](double v) { return v > rank_tol * d_max ? std::sqrt(v) : 0.0; });
  return out;
}

void require_square(const ComplexMatrix& a, const char* op) {
  if (!a.is_square()) {
    throw ShapeError(std::string(op) + ": matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

}  // namespace

ComplexMatrix complete_basis(const ComplexMatrix& cols) {
  const std::size_t n = cols.rows();
  if (cols.cols() > n) throw ShapeError("complete_basis: more columns than rows");
  ComplexMatrix q(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < cols.cols(); ++c) q(r, c) = cols(r, c);
  }
  std::vector<Complex> cand(n);
  for (std::size_t filled = cols.cols(); filled < n; ++filled) {
    // Canonical vector with the largest component outside the current span;
    // that component is at least sqrt((n - filled) / n).
    std::size_t best = 0;
    double best_left = -1.0;
    for (std::size_t e = 0; e < n; ++e) {
      double covered = 0.0;
      for (std::size_t c = 0; c < filled; ++c) covered += std::norm(q(e, c));
      if (1.0 - covered > best_left) {
        best_left = 1.0 - covered;
        best = e;
      }
    }
    std::fill(cand.begin(), cand.end(), Complex{});
    cand[best] = 1.0;
    // Two projection passes keep the completion orthogonal to working precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t c = 0; c < filled; ++c) {
        Complex dot{};
        for (std::size_t r = 0; r < n; ++r) dot += std::conj(q(r, c)) * cand[r];
        for (std::size_t r = 0; r < n; ++r) cand[r] -= dot * q(r, c);
      }
    }
    double nrm = 0.0;
    for (const auto& z : cand) nrm += std::norm(z);
    nrm = std::sqrt(nrm);
    for (std::size_t r = 0; r < n; ++r) q(r, filled) = cand[r] / nrm;
  }
  return q;
}

ComplexMatrix sqrt_psd(const ComplexMatrix& h, const DecompOptions& opts) {
  require_square(h, "sqrt_psd");
  const HermitianEigen eig = psd_eig(h, opts);
  std::vector<double> roots(eig.eigenvalues.size());
  std::transform(eig.eigenvalues.begin(), eig.eigenvalues.end(), roots.begin(),
                 [](double d) { return std::sqrt(d); });
  return scale_columns_and_mult_adjoint(eig.vectors, roots);
}

PolarFactors polar(const ComplexMatrix& a, const DecompOptions& opts) {
  require_square(a, "polar");
  const HermitianEigen eig = psd_eig(matmul(adjoint(a), a), opts);
  PolarFactors out;
  out.unitary = unitary_from_gram(a, eig, opts, nullptr);
  out.psd_factor = scale_columns_and_mult_adjoint(eig.vectors, gram_roots(eig.eigenvalues, opts.rank_tol));
  return out;
}

PolarFactors polar_left(const ComplexMatrix& a, const DecompOptions& opts) {
  require_square(a, "polar_left");
  // A^* = U' |A^*|  gives  A = |A^*| U'^*  with |A^*| = sqrt(A A^*).
  PolarFactors right = polar(adjoint(a), opts);
  return {adjoint(right.unitary), std::move(right.psd_factor)};
}

ComplexMatrix SvdFactors::reconstruct() const {
  ComplexMatrix vs = v;
  for (std::size_t r = 0; r < vs.rows(); ++r) {
    for (std::size_t c = 0; c < s.size(); ++c) vs(r, c) *= s[c];
  }
  ComplexMatrix full = matmul(vs, adjoint(w));
  return shape ? extract_rect(full, *shape) : full;
}

SvdFactors svd_square(const ComplexMatrix& a, const DecompOptions& opts) {
  require_square(a, "svd_square");
  const HermitianEigen eig = psd_eig(matmul(adjoint(a), a), opts);
  SvdFactors out;
  // V = U P = Q P^* P = Q.
  ComplexMatrix q;
  unitary_from_gram(a, eig, opts, &q);
  out.v = std::move(q);
  out.w = eig.vectors;
  out.s = gram_roots(eig.eigenvalues, opts.rank_tol);
  return out;
}

SvdFactors svd_rect(const ComplexMatrix& a, const DecompOptions& opts) {
  Embedded e = embed_square(a);
  SvdFactors out = svd_square(e.matrix, opts);
  out.shape = e.shape;
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& a, const JacobiOptions& opts) {
  const ComplexMatrix gram = a.rows() <= a.cols() ? matmul(a, adjoint(a)) : matmul(adjoint(a), a);
  JacobiOptions values_only = opts;
  values_only.compute_vectors = false;
  HermitianEigen eig = hermitian_eig(gram, values_only);
  std::vector<double> out(eig.eigenvalues.size());
  std::transform(eig.eigenvalues.begin(), eig.eigenvalues.end(), out.begin(),
                 [](double d) { return std::sqrt(std::max(d, 0.0)); });
  return out;
}

}  // namespace mpinv
