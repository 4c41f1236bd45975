#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's solvers.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "pstlab/rational.hpp"

namespace oracle {

using pstlab::Rational;

/// Solves A x = b exactly by Gauss-Jordan elimination.
inline std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw std::runtime_error("singular system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

/// Coefficients (constant first) of the degree <= n-1 polynomial taking the
/// value (-1)^{n+r} at the r-th root, via the Vandermonde system.
inline std::vector<Rational> signed_interpolant(const std::vector<Rational>& roots) {
  const std::size_t n = roots.size();
  std::vector<std::vector<Rational>> v(n, std::vector<Rational>(n));
  std::vector<Rational> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational p = 1;
    for (std::size_t j = 0; j < n; ++j) {
      v[i][j] = p;
      p *= roots[i];
    }
    rhs[i] = ((i + 1 + n) % 2 == 0) ? 1 : -1;
  }
  return solve_exact(v, rhs);
}

/// Number of eigenvalues < x of the symmetric tridiagonal matrix (Sturm count).
inline std::size_t sturm_count(const std::vector<double>& d, const std::vector<double>& e, double x) {
  std::size_t count = 0;
  double p = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double e2 = i == 0 ? 0.0 : e[i - 1] * e[i - 1];
    p = (d[i] - x) - (i == 0 ? 0.0 : e2 / p);
    if (p == 0.0) p = -1e-300;
    if (p < 0) ++count;
  }
  return count;
}

/// All eigenvalues, ascending, by bisection on the Sturm count.
inline std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& d, const std::vector<double>& e) {
  const std::size_t n = d.size();
  double lo = 0, hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double rad = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < n ? std::abs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - rad);
    hi = std::max(hi, d[i] + rad);
  }
  lo -= 1.0;
  hi += 1.0;
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    double a = lo, b = hi;
    for (int it = 0; it < 200; ++it) {
      const double m = 0.5 * (a + b);
      if (sturm_count(d, e, m) > k) {
        b = m;
      } else {
        a = m;
      }
    }
    out[k] = 0.5 * (a + b);
  }
  return out;
}

using CMatrix = std::vector<std::vector<std::complex<double>>>;

inline CMatrix cmul(const CMatrix& a, const CMatrix& b) {
  const std::size_t n = a.size();
  CMatrix c(n, std::vector<std::complex<double>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

/// exp(i t H) by scaling and squaring of a Taylor series.
inline CMatrix expm_i(const std::vector<std::vector<double>>& h, double t) {
  const std::size_t n = h.size();
  double norm = 0;
  for (const auto& row : h)
    for (double x : row) norm = std::max(norm, std::abs(x));
  norm *= static_cast<double>(n) * std::abs(t);
  int squarings = 0;
  while (norm > 0.5) {
    norm /= 2;
    ++squarings;
  }
  const double scale = t / std::ldexp(1.0, squarings);
  CMatrix a(n, std::vector<std::complex<double>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = std::complex<double>(0, scale * h[i][j]);
  CMatrix result(n, std::vector<std::complex<double>>(n));
  CMatrix term(n, std::vector<std::complex<double>>(n));
  for (std::size_t i = 0; i < n; ++i) result[i][i] = term[i][i] = 1;
  for (int k = 1; k < 30; ++k) {
    term = cmul(term, a);
    for (auto& row : term)
      for (auto& x : row) x /= static_cast<double>(k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) result[i][j] += term[i][j];
  }
  for (int s = 0; s < squarings; ++s) result = cmul(result, result);
  return result;
}

}  // namespace oracle
