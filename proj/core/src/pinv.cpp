#include "mpinv/pinv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mpinv/decomp.hpp"

namespace mpinv {

namespace {

bool is_zero(const ComplexMatrix& a) {
  return std::all_of(a.entries().begin(), a.entries().end(), [](const Complex& z) { return z == Complex{}; });
}

bool use_rows(const ComplexMatrix& a, GramSide side) {
  switch (side) {
    case GramSide::kRows:
      return true;
    case GramSide::kCols:
      return false;
    case GramSide::kSmaller:
      break;
  }
  return a.rows() <= a.cols();
}

// Gram matrix of the chosen side divided by its Frobenius norm, so every
// tolerance below is relative and (zA)^+ = A^+ / z holds without retuning.
struct NormalizedGram {
  ComplexMatrix gram;
  double scale = 1.0;
};

NormalizedGram normalized_gram(const ComplexMatrix& a, bool rows) {
  ComplexMatrix g = rows ? matmul(a, adjoint(a)) : matmul(adjoint(a), a);
  const double s = frobenius_norm(g);
  g *= 1.0 / s;
  return {std::move(g), s};
}

// sum_{alpha > cut} alpha^{-1} E_alpha for the normalized Gram matrix.
ComplexMatrix inverse_on_range(const NormalizedGram& g, const PinvOptions& opts) {
  const SpectralDecomposition decomp = spectral_decomposition(g.gram, opts.cluster_tol, opts.jacobi);
  const double alpha_max = decomp.distinct_values.front();
  ComplexMatrix out(g.gram.rows(), g.gram.cols());
  for (std::size_t k = 0; k < decomp.distinct_values.size(); ++k) {
    const double alpha = decomp.distinct_values[k];
    if (alpha <= opts.rank_tol * alpha_max) continue;
    out += Complex(1.0 / (alpha * g.scale)) * decomp.projectors[k];
  }
  return out;
}

bool exactly_hermitian(const ComplexMatrix& a) { return a.is_square() && hermitian_defect(a) == 0.0; }

// Hermitian A: A A^* = A^2 has the projectors of A grouped by |lambda|, and
// sum alpha^{-1} A^* E_alpha collapses to sum lambda^{-1} E_lambda. Reading
// it off A's own eigenpairs keeps cond(A) instead of cond(A)^2. The cut is
// the Gram one, lambda^2 <= rank_tol * lambda_max^2.
ComplexMatrix hermitian_inverse(const ComplexMatrix& a, const PinvOptions& opts) {
  const double scale = frobenius_norm(a);
  const SpectralDecomposition decomp = spectral_decomposition(Complex(1.0 / scale) * a, opts.cluster_tol, opts.jacobi);
  double top = 0.0;
  for (double v : decomp.distinct_values) top = std::max(top, std::abs(v));
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t k = 0; k < decomp.distinct_values.size(); ++k) {
    const double lambda = decomp.distinct_values[k];
    if (lambda * lambda <= opts.rank_tol * top * top) continue;
    out += Complex(1.0 / (lambda * scale)) * decomp.projectors[k];
  }
  return out;
}

// (A^* A + mu)^{-1} A^* from a Householder QR of the stacked matrix
// [A; sqrt(mu) 1_n] = Q R. Since A = Q_top R, the operator is R^{-1} Q_top^*.
// Forming A^* A squares the condition number; near the kernel that costs
// eps ||A||^2 / mu instead of eps ||A|| / sqrt(mu).
ComplexMatrix regularized_solve(const ComplexMatrix& a, double mu) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t h = m + n;
  ComplexMatrix s(h, n);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) s(r, c) = a(r, c);
  }
  const double root = std::sqrt(mu);
  for (std::size_t c = 0; c < n; ++c) s(m + c, c) = root;
  // Q^* applied to [1_m; 0]; its first n rows are Q_top^*.
  ComplexMatrix rhs(h, m);
  for (std::size_t r = 0; r < m; ++r) rhs(r, r) = 1.0;

  // Reflectors I - tau v v^* with v[k] = 1. A column that is zero above its
  // sqrt(mu) entry then gives tau = 1 and v = e_k + e_{m+k} up to rounding in
  // the second entry, an exact row swap; the textbook 2 v v^* / |v|^2 form
  // leaves eps-sized residue there, which the later division by sqrt(mu)
  // inflates.
  std::vector<Complex> v(h);
  auto reflect = [&](ComplexMatrix& target, std::size_t k, std::size_t first_col, double tau) {
    for (std::size_t c = first_col; c < target.cols(); ++c) {
      Complex dot = target(k, c);
      for (std::size_t r = k + 1; r < h; ++r) dot += std::conj(v[r]) * target(r, c);
      const Complex f = tau * dot;
      target(k, c) -= f;
      for (std::size_t r = k + 1; r < h; ++r) target(r, c) -= f * v[r];
    }
  };
  for (std::size_t k = 0; k < n; ++k) {
    double norm2 = 0.0;
    for (std::size_t r = k; r < h; ++r) norm2 += std::norm(s(r, k));
    // norm >= sqrt(mu) > 0 thanks to the regularization row.
    const double norm = std::sqrt(norm2);
    const Complex x0 = s(k, k);
    const double x0_abs = std::abs(x0);
    const Complex phase = x0_abs > 0.0 ? x0 / x0_abs : Complex(1.0);
    const Complex beta = -phase * norm;
    const double tau = (norm + x0_abs) / norm;
    const Complex scale = 1.0 / (x0 - beta);
    for (std::size_t r = k + 1; r < h; ++r) v[r] = s(r, k) * scale;
    reflect(s, k, k + 1, tau);
    reflect(rhs, k, 0, tau);
    s(k, k) = beta;
    for (std::size_t r = k + 1; r < h; ++r) s(r, k) = 0.0;
  }

  // Back substitution R X = Q_top^*.
  ComplexMatrix x(n, m);
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t i = n; i-- > 0;) {
      Complex acc = rhs(i, c);
      for (std::size_t j = i + 1; j < n; ++j) acc -= s(i, j) * x(j, c);
      x(i, c) = acc / s(i, i);
    }
  }
  return x;
}

}  // namespace

std::string_view to_string(Route route) {
  switch (route) {
    case Route::kAuto:
      return "auto";
    case Route::kSpectral:
      return "spectral";
    case Route::kPolynomial:
      return "polynomial";
    case Route::kTikhonov:
      return "tikhonov";
    case Route::kSvd:
      return "svd";
    case Route::kFullRank:
      return "fullrank";
  }
  return "unknown";
}

Route parse_route(std::string_view name) {
  for (Route r : {Route::kAuto, Route::kSpectral, Route::kPolynomial, Route::kTikhonov, Route::kSvd,
                  Route::kFullRank}) {
    if (to_string(r) == name) return r;
  }
  throw std::invalid_argument("unknown route '" + std::string(name) + "'");
}

void PinvOptions::validate() const {
  if (!(rank_tol > 0.0)) throw std::invalid_argument("rank_tol must be positive");
  if (!(mu.factor > 0.0 && mu.factor < 1.0)) throw std::invalid_argument("mu factor must lie in (0, 1)");
  if (mu.max_steps < 2) throw std::invalid_argument("mu schedule needs at least two steps");
  if (!(conv_tol > 0.0)) throw std::invalid_argument("conv_tol must be positive");
  if (!(cluster_tol >= 0.0)) throw std::invalid_argument("cluster_tol must be nonnegative");
  if (!(sep_tol > 0.0)) throw std::invalid_argument("sep_tol must be positive");
  if (!(max_amplification >= 1.0)) throw std::invalid_argument("max_amplification must be at least 1");
  if (!(accept_tol > 0.0)) throw std::invalid_argument("accept_tol must be positive");
}

double PenroseReport::max_residual() const { return std::max({r1, r2, r3, r4}); }

PenroseReport verify_penrose(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (b.rows() != a.cols() || b.cols() != a.rows()) {
    throw ShapeError("verify_penrose: candidate is " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()) +
                     ", expected " + std::to_string(a.cols()) + "x" + std::to_string(a.rows()));
  }
  const ComplexMatrix ab = matmul(a, b);
  const ComplexMatrix ba = matmul(b, a);
  PenroseReport r;
  r.r1 = distance(matmul(ab, a), a);
  r.r2 = distance(matmul(ba, b), b);
  r.r3 = hermitian_defect(ab);
  r.r4 = hermitian_defect(ba);
  r.scale = std::max({1.0, frobenius_norm(a), frobenius_norm(b)});
  return r;
}

ComplexMatrix pinv_spectral(const ComplexMatrix& a, const PinvOptions& opts) {
  if (is_zero(a)) return ComplexMatrix(a.cols(), a.rows());
  if (exactly_hermitian(a)) return hermitian_inverse(a, opts);
  return matmul(adjoint(a), inverse_on_range(normalized_gram(a, true), opts));
}

ComplexMatrix pinv_via_AstarA(const ComplexMatrix& a, const PinvOptions& opts) {
  if (is_zero(a)) return ComplexMatrix(a.cols(), a.rows());
  if (exactly_hermitian(a)) return hermitian_inverse(a, opts);
  return matmul(inverse_on_range(normalized_gram(a, false), opts), adjoint(a));
}

ComplexMatrix pinv_polynomial(const ComplexMatrix& a, const PinvOptions& opts, GramSide side) {
  if (is_zero(a)) return ComplexMatrix(a.cols(), a.rows());
  const bool rows = use_rows(a, side);
  const NormalizedGram g = normalized_gram(a, rows);

  JacobiOptions values_only = opts.jacobi;
  values_only.compute_vectors = false;
  std::vector<double> eigenvalues = hermitian_eig(g.gram, values_only).eigenvalues;
  const double top = eigenvalues.front();
  for (double& v : eigenvalues) {
    if (v <= opts.rank_tol * top) v = 0.0;
  }
  const DistinctSpectrum spectrum = distinct_spectrum(eigenvalues, opts.cluster_tol);
  const double amplification = lagrange_amplification(spectrum.values);
  if (amplification > opts.max_amplification) {
    throw DegenerateSeparation("pinv_polynomial: Lagrange weights amplify rounding by " +
                               std::to_string(amplification) + " across " + std::to_string(spectrum.values.size()) +
                               " distinct Gram eigenvalues");
  }
  const std::vector<ComplexMatrix> lagrange = projectors_by_polynomial(g.gram, spectrum.values, opts.sep_tol * top);

  ComplexMatrix inv(g.gram.rows(), g.gram.cols());
  for (std::size_t b = 0; b < spectrum.values.size(); ++b) {
    if (spectrum.values[b] == 0.0) continue;
    inv += Complex(1.0 / (spectrum.values[b] * g.scale)) * lagrange[b];
  }
  return rows ? matmul(adjoint(a), inv) : matmul(inv, adjoint(a));
}

ComplexMatrix tikhonov_iterate(const ComplexMatrix& a, double mu, GramSide side) {
  if (!(mu > 0.0)) throw std::invalid_argument("tikhonov_iterate: mu must be positive");
  // (A A^* + mu)^{-1} A = ((A^*)^* A^* + mu)^{-1} (A^*)^*, so the rows side is
  // the cols side of A^*, adjoined back.
  if (use_rows(a, side)) return adjoint(regularized_solve(adjoint(a), mu));
  return regularized_solve(a, mu);
}

TikhonovTrace tikhonov_trace(const ComplexMatrix& a, const PinvOptions& opts) {
  opts.validate();
  const double norm = frobenius_norm(a);
  double mu = opts.mu.mu0 > 0.0 ? opts.mu.mu0 : 1e-2 * norm * norm;
  TikhonovTrace trace;
  if (norm == 0.0) {
    // Every iterate of the zero matrix is exactly zero.
    const ComplexMatrix zero(a.cols(), a.rows());
    trace.mu = {1.0, opts.mu.factor};
    trace.iterates = {zero, zero};
    trace.limits = {zero, zero};
    trace.converged = true;
    return trace;
  }

  // neville[j] holds the value at 0 of the interpolant through nodes j..k.
  std::vector<ComplexMatrix> neville;
  double best_change = std::numeric_limits<double>::infinity();
  std::size_t best_k = 0;
  for (int k = 0; k < opts.mu.max_steps; ++k, mu *= opts.mu.factor) {
    trace.mu.push_back(mu);
    trace.iterates.push_back(tikhonov_iterate(a, mu));
    neville.push_back(trace.iterates.back());
    for (std::size_t j = neville.size() - 1; j-- > 0;) {
      const double mu_j = trace.mu[j];
      ComplexMatrix next = Complex(mu_j) * neville[j + 1];
      next -= Complex(mu) * neville[j];
      next *= 1.0 / (mu_j - mu);
      neville[j] = std::move(next);
    }
    trace.limits.push_back(neville.front());
    if (k == 0) continue;

    const std::size_t cur = trace.limits.size() - 1;
    const double change = distance(trace.limits[cur], trace.limits[cur - 1]) / frobenius_norm(trace.limits[cur]);
    if (change <= 4.0 * std::numeric_limits<double>::epsilon()) {
      best_change = change;
      best_k = cur + 1;  // keep the newest estimate
      break;
    }
    if (change < best_change) {
      best_change = change;
      best_k = cur;
    } else if (cur - best_k >= 3 || (cur - best_k >= 2 && best_change <= opts.conv_tol)) {
      // Past the smallest change rounding in the Gram solve grows like 1/mu
      // and later estimates only get worse.
      break;
    }
  }
  // The smallest change separates the last truncation-limited estimate from
  // the first rounding-limited one; keep the former.
  std::size_t keep = best_k == 0 ? trace.limits.size() : best_k;
  if (keep >= trace.limits.size()) keep = trace.limits.size();
  trace.limits.resize(keep);
  trace.iterates.resize(keep);
  trace.mu.resize(keep);
  trace.converged = best_change <= opts.conv_tol;
  if (!trace.converged) {
    // With a badly conditioned range the truncation and rounding regimes
    // can meet within one decade of mu, and no pair of estimates agrees to
    // conv_tol even though the kept one is accurate. The Penrose conditions
    // characterize A^+, so they serve as the fallback certificate.
    trace.converged = verify_penrose(a, trace.limits.back()).passes(opts.accept_tol);
  }
  return trace;
}

ComplexMatrix pinv_tikhonov(const ComplexMatrix& a, const PinvOptions& opts) {
  TikhonovTrace trace = tikhonov_trace(a, opts);
  if (!trace.converged) {
    throw NoConvergence("pinv_tikhonov: limit estimates still moving after " + std::to_string(opts.mu.max_steps) +
                        " regularization steps");
  }
  return std::move(trace.limits.back());
}

ComplexMatrix pinv_svd(const ComplexMatrix& a, const PinvOptions& opts) {
  if (!a.is_square()) {
    const Embedded e = embed_square(a);
    const ComplexMatrix square_pinv = pinv_svd(e.matrix, opts);
    // The pseudoinverse of the embedding holds A^+ in its n x m corner.
    return extract_rect(square_pinv, EmbeddingShape{a.cols(), a.rows()});
  }
  DecompOptions d;
  d.rank_tol = opts.rank_tol;
  d.jacobi = opts.jacobi;
  const SvdFactors f = svd_square(a, d);
  // W S^+ V^*, with the cut applied to s^2 like the Gram routes.
  const double s_max = f.s.empty() ? 0.0 : f.s.front();
  ComplexMatrix ws = f.w;
  for (std::size_t k = 0; k < f.s.size(); ++k) {
    const double s = f.s[k];
    const double inv = (s_max > 0.0 && s * s > opts.rank_tol * s_max * s_max) ? 1.0 / s : 0.0;
    for (std::size_t r = 0; r < ws.rows(); ++r) ws(r, k) *= inv;
  }
  return matmul(ws, adjoint(f.v));
}

ComplexMatrix pinv_fullrank(const ComplexMatrix& a, FullRankSide side) {
  const ComplexMatrix a_star = adjoint(a);
  if (side == FullRankSide::kRows) {
    const ComplexMatrix g = matmul(a, a_star);
    return matmul(a_star, solve_linear(g, ComplexMatrix::identity(g.rows())));
  }
  return solve_linear(matmul(a_star, a), a_star);
}

ComplexMatrix refine_pinv(const ComplexMatrix& a, const ComplexMatrix& x) {
  if (x.rows() != a.cols() || x.cols() != a.rows()) {
    throw ShapeError("refine_pinv: estimate is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                     ", expected " + std::to_string(a.cols()) + "x" + std::to_string(a.rows()));
  }
  return Complex(2.0) * x - matmul(x, matmul(a, x));
}

PinvResult pinv(const ComplexMatrix& a, const PinvOptions& opts) {
  opts.validate();
  PinvResult out;
  auto finish = [&](ComplexMatrix m, Route used) {
    out.matrix = std::move(m);
    out.route_used = used;
    out.report = verify_penrose(a, out.matrix);
    out.passed = out.report.passes(opts.accept_tol);
    return out;
  };

  switch (opts.route) {
    case Route::kSpectral:
      return finish(pinv_spectral(a, opts), Route::kSpectral);
    case Route::kPolynomial:
      return finish(pinv_polynomial(a, opts), Route::kPolynomial);
    case Route::kTikhonov:
      return finish(pinv_tikhonov(a, opts), Route::kTikhonov);
    case Route::kSvd:
      return finish(pinv_svd(a, opts), Route::kSvd);
    case Route::kFullRank:
      return finish(pinv_fullrank(a, a.rows() <= a.cols() ? FullRankSide::kRows : FullRankSide::kCols),
                    Route::kFullRank);
    case Route::kAuto:
      break;
  }

  std::vector<std::string> causes;
  if (is_zero(a)) return finish(pinv_spectral(a, opts), Route::kSpectral);
  try {
    const FullRankSide side = a.rows() <= a.cols() ? FullRankSide::kRows : FullRankSide::kCols;
    PinvResult r = finish(pinv_fullrank(a, side), Route::kFullRank);
    if (r.passed) return r;
    causes.push_back("fullrank: Penrose residual " + std::to_string(r.report.max_residual()) + " above tolerance");
  } catch (const SingularMatrix& e) {
    causes.push_back(std::string("fullrank: ") + e.what());
  }
  try {
    return finish(pinv_spectral(a, opts), Route::kSpectral);
  } catch (const Error& e) {
    causes.push_back(std::string("spectral: ") + e.what());
  }
  throw RouteFailed("pinv: no route produced a pseudoinverse", std::move(causes));
}

}  // namespace mpinv
