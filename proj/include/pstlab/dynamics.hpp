#pragma once

// Eigensolvers and unitary evolution e^{itH} = V e^{it Lambda} V^T for real
// symmetric Hamiltonians, with PST checks built on top.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "pstlab/error.hpp"
#include "pstlab/hamiltonian.hpp"
#include "pstlab/matrix.hpp"
#include "pstlab/poly.hpp"

namespace pstlab {

struct EigenSystem {
  std::vector<double> values;  // ascending
  MatrixD vectors;             // column r is the unit eigenvector for values[r]
  std::vector<double> normalizers;  // kappa_r = V(1, r)^2

  std::size_t size() const { return values.size(); }
  std::vector<double> column(std::size_t r) const {
    std::vector<double> v(vectors.rows());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = vectors(i, r);
    return v;
  }
};

namespace detail {

inline void sort_and_fix_signs(std::vector<double>& d, MatrixD& v) {
  const std::size_t n = d.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&d](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  std::vector<double> ds(n);
  MatrixD vs(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    ds[c] = d[order[c]];
    // first non-negligible component positive
    double sign = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(v(i, order[c])) > 1e-12) {
        sign = v(i, order[c]) < 0 ? -1.0 : 1.0;
        break;
      }
    }
    for (std::size_t i = 0; i < n; ++i) vs(i, c) = sign * v(i, order[c]);
  }
  d = std::move(ds);
  v = std::move(vs);
}

inline EigenSystem finish(std::vector<double> d, MatrixD v) {
  sort_and_fix_signs(d, v);
  EigenSystem es;
  es.values = std::move(d);
  es.vectors = std::move(v);
  es.normalizers.resize(es.values.size());
  for (std::size_t r = 0; r < es.values.size(); ++r) es.normalizers[r] = es.vectors(0, r) * es.vectors(0, r);
  return es;
}

}  // namespace detail

/// Implicit QL with Wilkinson-type shifts on a symmetric tridiagonal matrix
/// given by its diagonal and off-diagonal.
inline EigenSystem tridiagonal_eigensystem(std::vector<double> d, std::vector<double> off) {
  const std::size_t n = d.size();
  if (n == 0 || off.size() + 1 != n) throw Error(ErrorCode::InvalidArgument, "bad tridiagonal shape");
  std::vector<double> e(n, 0.0);
  std::copy(off.begin(), off.end(), e.begin());
  MatrixD v = MatrixD::identity(n);
  const std::size_t max_iter = 50 * n;
  std::size_t total_iter = 0;
  double f = 0.0;
  double tst1 = 0.0;
  constexpr double eps = 0x1.0p-52;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;
    if (m > l) {
      do {
        if (++total_iter > max_iter) {
          throw Error(ErrorCode::ConvergenceFailure, "tridiagonal QL did not converge");
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          for (std::size_t k = 0; k < n; ++k) {
            h = v(k, ii + 1);
            v(k, ii + 1) = s * v(k, ii) + c * h;
            v(k, ii) = c * v(k, ii) - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
  return detail::finish(std::move(d), std::move(v));
}

/// Cyclic Jacobi rotations for a dense symmetric matrix.
inline EigenSystem jacobi_eigensystem(const MatrixD& h) {
  const std::size_t n = h.rows();
  MatrixD a = h;
  MatrixD v = MatrixD::identity(n);
  const std::size_t max_sweeps = 50 * n;
  auto off_norm = [&a, n] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale += h(i, j) * h(i, j);
  scale = std::sqrt(scale);
  std::size_t sweep = 0;
  while (off_norm() > 1e-15 * scale) {
    if (++sweep > max_sweeps) throw Error(ErrorCode::ConvergenceFailure, "Jacobi sweeps did not converge");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i);
  return detail::finish(std::move(d), std::move(v));
}

inline EigenSystem eigensystem(const PathHamiltonian& h) {
  std::vector<double> off = h.r();
  if (h.kind() == HamiltonianKind::Laplacian) {
    for (auto& x : off) x = -x;
  }
  return tridiagonal_eigensystem(h.q(), std::move(off));
}

/// Dense symmetric input; tridiagonal matrices are routed to the QL solver.
inline EigenSystem eigensystem(const MatrixD& h) {
  const std::size_t n = h.rows();
  if (h.cols() != n || n == 0) throw Error(ErrorCode::InvalidArgument, "matrix must be square");
  bool tridiagonal = true;
  const double tol = 1e-14 * std::max(1.0, max_abs(h));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(h(i, j) - h(j, i)) > tol) throw Error(ErrorCode::InvalidArgument, "matrix must be symmetric");
      if ((i > j + 1 || j > i + 1) && h(i, j) != 0.0) tridiagonal = false;
    }
  }
  if (!tridiagonal) return jacobi_eigensystem(h);
  std::vector<double> d(n), off(n - 1);
  for (std::size_t i = 0; i < n; ++i) d[i] = h(i, i);
  for (std::size_t i = 0; i + 1 < n; ++i) off[i] = h(i, i + 1);
  return tridiagonal_eigensystem(std::move(d), std::move(off));
}

/// (d_1 p_0(a), ..., d_n p_{n-1}(a)) for an eigenvalue a of the chain.
/// With v this vector, H v - a v = -d_n p_n(a) e_n, so a is accepted when
/// that residual is within 1e-9 of |v| (1 + |H|).
inline std::vector<double> eigenvector_from_polys(const OrthoPolySeq<double>& seq, double alpha) {
  const std::size_t n = seq.size();
  const auto p = seq.values(alpha);
  auto v = seq.scaled_values(alpha);
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  double bound = 0.0;
  for (double x : seq.q) bound = std::max(bound, std::abs(x));
  double rmax = 0.0;
  for (double x : seq.r_sq) rmax = std::max(rmax, std::sqrt(x));
  bound += 2.0 * rmax;
  const double residual = std::abs(seq.scalings[n - 1] * p[n]);
  if (!(residual <= 1e-9 * norm * (1.0 + bound))) {
    throw Error(ErrorCode::NotAnEigenvalue, "value is not a root of p_n");
  }
  return v;
}

struct FidelityResult {
  std::size_t j = 1;  // 1-based
  std::size_t k = 1;
  double time = 0.0;
  double fidelity = 0.0;
  std::optional<std::complex<double>> phase;
};

/// Caches the eigensystem so many (pair, time) queries are cheap.
class Propagator {
 public:
  explicit Propagator(EigenSystem es) : es_(std::move(es)) {}
  explicit Propagator(const PathHamiltonian& h) : es_(eigensystem(h)) {}
  explicit Propagator(const MatrixD& h) : es_(eigensystem(h)) {}

  std::size_t size() const { return es_.size(); }
  const EigenSystem& eigen() const { return es_; }

  /// e_j^T e^{itH} e_k with 1-based j, k.
  std::complex<double> amplitude(std::size_t j, std::size_t k, double t) const {
    check_vertex(j);
    check_vertex(k);
    double re = 0.0, im = 0.0;
    for (std::size_t r = 0; r < es_.size(); ++r) {
      const double w = es_.vectors(j - 1, r) * es_.vectors(k - 1, r);
      re += w * std::cos(t * es_.values[r]);
      im += w * std::sin(t * es_.values[r]);
    }
    return {re, im};
  }

  FidelityResult fidelity(std::size_t j, std::size_t k, double t) const {
    const auto a = amplitude(j, k, t);
    FidelityResult out;
    out.j = j;
    out.k = k;
    out.time = t;
    out.fidelity = std::norm(a);
    if (out.fidelity > 1.0 - 1e-6) out.phase = a / std::abs(a);
    return out;
  }

 private:
  void check_vertex(std::size_t j) const {
    if (j < 1 || j > es_.size()) throw Error(ErrorCode::InvalidArgument, "vertex index out of range");
  }

  EigenSystem es_;
};

inline FidelityResult evolve_fidelity(const PathHamiltonian& h, std::size_t j, std::size_t k, double t) {
  return Propagator(h).fidelity(j, k, t);
}

struct PstVerdict {
  bool pst = false;
  FidelityResult result;
};

inline PstVerdict verify_pst(const Propagator& prop, std::size_t j, std::size_t k, double t, double tol = 1e-9) {
  PstVerdict v;
  v.result = prop.fidelity(j, k, t);
  v.pst = v.result.fidelity >= 1.0 - tol;
  return v;
}

inline PstVerdict verify_pst(const PathHamiltonian& h, std::size_t j, std::size_t k, double t, double tol = 1e-9) {
  return verify_pst(Propagator(h), j, k, t, tol);
}

struct InternalPairsReport {
  FidelityResult endpoints;
  std::vector<PstVerdict> pairs;  // (j, n+1-j) for j = 2..ceil(n/2)
  /// Vertices j at which some eigenvector has a (numerically) zero entry;
  /// there the converse direction is not covered.
  std::vector<std::size_t> zero_entry_vertices;
};

/// Endpoint PST forces PST between every mirror pair (j, n+1-j).
inline InternalPairsReport verify_internal_pairs(const PathHamiltonian& h, double t, double tol = 1e-9) {
  const Propagator prop(h);
  const std::size_t n = h.size();
  InternalPairsReport rep;
  const auto ends = verify_pst(prop, 1, n, t, tol);
  rep.endpoints = ends.result;
  if (!ends.pst) throw Error(ErrorCode::EndpointPSTAbsent, "no PST between the end vertices at this time");
  for (std::size_t j = 2; j <= (n + 1) / 2; ++j) rep.pairs.push_back(verify_pst(prop, j, n + 1 - j, t, tol));
  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t r = 0; r < n; ++r) {
      if (std::abs(prop.eigen().vectors(j - 1, r)) < 1e-10) {
        rep.zero_entry_vertices.push_back(j);
        break;
      }
    }
  }
  return rep;
}

struct TraceSample {
  double t = 0.0;
  double fidelity = 0.0;
};

/// Uniform samples t_i = i * t_max / (steps - 1), i = 0..steps-1.
inline std::vector<TraceSample> fidelity_trace(const Propagator& prop, std::size_t j, std::size_t k, double t_max,
                                               std::size_t steps) {
  if (steps < 2) throw Error(ErrorCode::InvalidArgument, "trace needs at least 2 steps");
  if (!(t_max >= 0)) throw Error(ErrorCode::InvalidArgument, "t_max must be nonnegative");
  std::vector<TraceSample> out(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = t_max * static_cast<double>(i) / static_cast<double>(steps - 1);
    out[i] = {t, std::norm(prop.amplitude(j, k, t))};
  }
  return out;
}

inline std::vector<TraceSample> fidelity_trace(const PathHamiltonian& h, std::size_t j, std::size_t k, double t_max,
                                               std::size_t steps) {
  return fidelity_trace(Propagator(h), j, k, t_max, steps);
}

inline std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// CSV with header "t,fidelity", 17 significant digits.
inline void write_trace_csv(std::ostream& os, const std::vector<TraceSample>& trace) {
  os << "t,fidelity\n";
  for (const auto& s : trace) os << format_g17(s.t) << ',' << format_g17(s.fidelity) << '\n';
}

inline double max_fidelity(const std::vector<TraceSample>& trace) {
  double m = 0.0;
  for (const auto& s : trace) m = std::max(m, s.fidelity);
  return m;
}

// ---------------------------------------------------------------------------
// Mirror-pair Laplacian dynamics on symmetric trees

struct TreeScan {
  std::size_t vertices = 0;
  double max_mirror_fidelity = 0.0;
  std::vector<double> pair_max;  // index j-1 for the pair (j, n+1-j)
  /// Computed eigenbases of B1 and B2 have no zero entries (first row of B2
  /// excepted for odd n). When false the no-go argument does not apply.
  bool hypothesis_holds = true;
};

inline bool eigenbasis_has_no_zeros(const MatrixD& b, std::size_t skip_rows, double tol = 1e-9) {
  if (b.rows() == 0) return true;
  const EigenSystem es = eigensystem(b);
  for (std::size_t i = skip_rows; i < es.vectors.rows(); ++i)
    for (std::size_t c = 0; c < es.vectors.cols(); ++c)
      if (std::abs(es.vectors(i, c)) < tol) return false;
  return true;
}

/// Grid search of |e_j^T e^{itL} e_{n+1-j}|^2 over t in [0, t_max] for every
/// mirror pair. Only ever corroborates the no-go result numerically.
inline TreeScan scan_tree_mirror_pairs(const TreeLaplacian& tree, double t_max, std::size_t samples) {
  const MatrixD L = to_double(tree.laplacian);
  const std::size_t n = L.rows();
  const Propagator prop(L);
  TreeScan scan;
  scan.vertices = n;
  for (std::size_t j = 1; j <= n / 2; ++j) {
    const double m = max_fidelity(fidelity_trace(prop, j, n + 1 - j, t_max, samples));
    scan.pair_max.push_back(m);
    scan.max_mirror_fidelity = std::max(scan.max_mirror_fidelity, m);
  }
  const BlockSplit split = tree_block_split(L, tree.mirror);
  scan.hypothesis_holds = eigenbasis_has_no_zeros(split.b1, 0) && eigenbasis_has_no_zeros(split.b2, split.odd ? 1 : 0);
  return scan;
}

}  // namespace pstlab
