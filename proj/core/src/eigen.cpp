#include "mpinv/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace mpinv {

namespace {

double off_diagonal_norm(const ComplexMatrix& h) {
  double sum = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t j = 0; j < h.cols(); ++j) {
      if (i != j) sum += std::norm(h(i, j));
    }
  }
  return std::sqrt(sum);
}

// Zeroes h(p, q) with the unitary U = diag(1, e^{-i phi}) * [[c, s], [-s, c]]
// acting on coordinates p and q, where h(p, q) = |b| e^{i phi}. The update is
// h <- U^* h U, v <- v U; only rows/columns p and q change.
void rotate(ComplexMatrix& h, ComplexMatrix* v, std::size_t p, std::size_t q) {
  const Complex b = h(p, q);
  const double abs_b = std::abs(b);
  // A subnormal b has too few digits for b / |b| to be a unit phase, and a
  // non-unit phase would spoil the orthogonality of v.
  if (abs_b < std::numeric_limits<double>::min()) {
    h(p, q) = 0.0;
    h(q, p) = 0.0;
    return;
  }
  const double a = h(p, p).real();
  const double d = h(q, q).real();
  const Complex phase = std::conj(b) / abs_b;  // e^{-i phi}

  const double theta = (d - a) / (2.0 * abs_b);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const std::size_t n = h.rows();
  for (std::size_t r = 0; r < n; ++r) {
    if (r == p || r == q) continue;
    const Complex hrp = h(r, p);
    const Complex hrq = h(r, q);
    const Complex new_rp = c * hrp - s * phase * hrq;
    const Complex new_rq = s * hrp + c * phase * hrq;
    h(r, p) = new_rp;
    h(r, q) = new_rq;
    h(p, r) = std::conj(new_rp);
    h(q, r) = std::conj(new_rq);
  }
  h(p, p) = a - t * abs_b;
  h(q, q) = d + t * abs_b;
  h(p, q) = 0.0;
  h(q, p) = 0.0;

  if (v != nullptr) {
    for (std::size_t r = 0; r < n; ++r) {
      const Complex vrp = (*v)(r, p);
      const Complex vrq = (*v)(r, q);
      (*v)(r, p) = c * vrp - s * phase * vrq;
      (*v)(r, q) = s * vrp + c * phase * vrq;
    }
  }
}

}  // namespace

HermitianEigen hermitian_eig(const ComplexMatrix& h_in, const JacobiOptions& opts) {
  if (!h_in.is_square()) {
    throw ShapeError("hermitian_eig: matrix is " + std::to_string(h_in.rows()) + "x" +
                     std::to_string(h_in.cols()));
  }
  const std::size_t n = h_in.rows();
  const double norm = frobenius_norm(h_in);
  if (hermitian_defect(h_in) > opts.hermitian_tol * norm) {
    throw NotHermitian("hermitian_eig: ||H - H*||_F exceeds " + std::to_string(opts.hermitian_tol) +
                       " * ||H||_F");
  }

  // Symmetrize so the rotations start from an exactly Hermitian array.
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = h_in(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex z = 0.5 * (h_in(i, j) + std::conj(h_in(j, i)));
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }

  ComplexMatrix vectors;
  if (opts.compute_vectors) vectors = ComplexMatrix::identity(n);
  ComplexMatrix* v = opts.compute_vectors ? &vectors : nullptr;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (opts.ordering_seed != 0) {
    std::mt19937_64 rng(opts.ordering_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }

  const double target = opts.tol * norm;
  int sweep = 0;
  while (off_diagonal_norm(h) > target) {
    if (sweep == opts.max_sweeps) {
      throw NoConvergence("hermitian_eig: off-diagonal mass above tolerance after " +
                          std::to_string(opts.max_sweeps) + " sweeps");
    }
    for (std::size_t a = 0; a + 1 < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) rotate(h, v, order[a], order[b]);
    }
    ++sweep;
  }

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t x, std::size_t y) { return h(x, x).real() > h(y, y).real(); });

  HermitianEigen out;
  out.eigenvalues.reserve(n);
  for (std::size_t k : idx) out.eigenvalues.push_back(h(k, k).real());
  if (opts.compute_vectors) {
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t k = 0; k < n; ++k) out.vectors(r, k) = vectors(r, idx[k]);
    }
  }
  return out;
}

DistinctSpectrum distinct_spectrum(const std::vector<double>& descending, double cluster_tol) {
  DistinctSpectrum out;
  if (descending.empty()) return out;
  const double width = cluster_tol * std::max(1.0, std::abs(descending.front()));
  double run_sum = descending.front();
  std::size_t run_len = 1;
  for (std::size_t i = 1; i < descending.size(); ++i) {
    if (std::abs(descending[i - 1] - descending[i]) <= width) {
      run_sum += descending[i];
      ++run_len;
      continue;
    }
    out.values.push_back(run_sum / static_cast<double>(run_len));
    out.multiplicities.push_back(run_len);
    run_sum = descending[i];
    run_len = 1;
  }
  out.values.push_back(run_sum / static_cast<double>(run_len));
  out.multiplicities.push_back(run_len);
  return out;
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  ComplexMatrix out(dimension(), dimension());
  for (std::size_t a = 0; a < projectors.size(); ++a) out += Complex(distinct_values[a]) * projectors[a];
  return out;
}

SpectralDecomposition spectral_projectors(const HermitianEigen& eig, double cluster_tol) {
  const std::size_t n = eig.eigenvalues.size();
  if (eig.vectors.rows() != n || eig.vectors.cols() != n) {
    throw ShapeError("spectral_projectors: eigenvectors missing or mis-shaped");
  }
  const DistinctSpectrum spectrum = distinct_spectrum(eig.eigenvalues, cluster_tol);

  SpectralDecomposition out;
  out.distinct_values = spectrum.values;
  out.multiplicities = spectrum.multiplicities;
  std::size_t first = 0;
  for (std::size_t mult : spectrum.multiplicities) {
    ComplexMatrix e(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        Complex sum{};
        for (std::size_t k = first; k < first + mult; ++k) sum += eig.vectors(i, k) * std::conj(eig.vectors(j, k));
        e(i, j) = sum;
        e(j, i) = std::conj(sum);
      }
      e(i, i) = e(i, i).real();
    }
    out.projectors.push_back(std::move(e));
    first += mult;
  }
  return out;
}

SpectralDecomposition spectral_decomposition(const ComplexMatrix& h, double cluster_tol,
                                             const JacobiOptions& opts) {
  JacobiOptions with_vectors = opts;
  with_vectors.compute_vectors = true;
  return spectral_projectors(hermitian_eig(h, with_vectors), cluster_tol);
}

double lagrange_amplification(const std::vector<double>& distinct_values) {
  double worst = 1.0;
  for (std::size_t j = 0; j < distinct_values.size(); ++j) {
    double growth = 1.0;
    for (std::size_t l = 0; l < distinct_values.size(); ++l) {
      if (l == j) continue;
      double spread = 0.0;
      for (double v : distinct_values) spread = std::max(spread, std::abs(v - distinct_values[l]));
      growth *= spread / std::abs(distinct_values[j] - distinct_values[l]);
    }
    worst = std::max(worst, growth);
  }
  return worst;
}

std::vector<ComplexMatrix> projectors_by_polynomial(const ComplexMatrix& a,
                                                    const std::vector<double>& distinct_values,
                                                    double sep_tol) {
  if (!a.is_square()) throw ShapeError("projectors_by_polynomial: matrix must be square");
  const std::size_t r = distinct_values.size();
  if (sep_tol < 0.0) {
    double scale = 0.0;
    for (double v : distinct_values) scale = std::max(scale, std::abs(v));
    sep_tol = 1e-6 * scale;
  }
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t l = j + 1; l < r; ++l) {
      if (std::abs(distinct_values[j] - distinct_values[l]) <= sep_tol) {
        throw DegenerateSeparation("projectors_by_polynomial: eigenvalues " + std::to_string(distinct_values[j]) +
                                   " and " + std::to_string(distinct_values[l]) + " are within " +
                                   std::to_string(sep_tol));
      }
    }
  }

  const std::size_t n = a.rows();
  std::vector<ComplexMatrix> out;
  out.reserve(r);
  for (std::size_t j = 0; j < r; ++j) {
    ComplexMatrix e = ComplexMatrix::identity(n);
    for (std::size_t l = 0; l < r; ++l) {
      if (l == j) continue;
      ComplexMatrix factor = a;
      for (std::size_t i = 0; i < n; ++i) factor(i, i) -= distinct_values[l];
      factor *= 1.0 / (distinct_values[j] - distinct_values[l]);
      e = matmul(e, factor);
    }
    out.push_back(std::move(e));
  }
  return out;
}

Complex CharPoly::operator()(Complex z) const {
  Complex acc{};
  for (std::size_t k = coefficients.size(); k-- > 0;) acc = acc * z + coefficients[k];
  return acc;
}

CharPoly char_poly(const ComplexMatrix& a, std::size_t max_dim) {
  if (!a.is_square()) throw ShapeError("char_poly: matrix must be square");
  const std::size_t n = a.rows();
  if (n > max_dim) {
    throw SizeLimitExceeded("char_poly: dimension " + std::to_string(n) + " exceeds limit " +
                            std::to_string(max_dim));
  }
  CharPoly p;
  p.coefficients.assign(n + 1, Complex{});
  p.coefficients[n] = 1.0;
  // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k.
  ComplexMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = matmul(a, m);
    for (std::size_t i = 0; i < n; ++i) m(i, i) += p.coefficients[n - k + 1];
    const ComplexMatrix am = matmul(a, m);
    p.coefficients[n - k] = -trace(am) / static_cast<double>(k);
  }
  return p;
}

ComplexMatrix apply_poly(const SpectralDecomposition& decomp, const std::vector<Complex>& coefficients) {
  const CharPoly p{coefficients};
  ComplexMatrix out(decomp.dimension(), decomp.dimension());
  for (std::size_t a = 0; a < decomp.projectors.size(); ++a) {
    out += p(decomp.distinct_values[a]) * decomp.projectors[a];
  }
  return out;
}

ComplexMatrix horner(const ComplexMatrix& a, const std::vector<Complex>& coefficients) {
  if (!a.is_square()) throw ShapeError("horner: matrix must be square");
  const std::size_t n = a.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = coefficients.size(); k-- > 0;) {
    out = matmul(out, a);
    for (std::size_t i = 0; i < n; ++i) out(i, i) += coefficients[k];
  }
  return out;
}

}  // namespace mpinv
