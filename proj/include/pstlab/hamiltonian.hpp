#pragma once

// Weighted-path Hamiltonians (adjacency with potentials, or Laplacian), the
// persymmetric block split, the multiplication operator in the monic
// orthogonal-polynomial basis, and mirror-symmetric weighted trees.

#include <cmath>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "pstlab/error.hpp"
#include "pstlab/kind.hpp"
#include "pstlab/matrix.hpp"
#include "pstlab/poly.hpp"
#include "pstlab/rational.hpp"

namespace pstlab {

inline constexpr std::size_t kMaxVertices = 500;

namespace detail {

inline void check_size(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidHamiltonian, "empty Hamiltonian");
  if (n > kMaxVertices) {
    throw Error(ErrorCode::SizeLimit, "at most " + std::to_string(kMaxVertices) + " vertices supported");
  }
}

// a = sqrt(A) + sqrt(B) with A, B > 0, decided exactly.
inline bool equals_sum_of_roots(const Rational& a, const Rational& A, const Rational& B) {
  if (a < 0) return false;
  const Rational t = a * a - A - B;
  return t >= 0 && t * t == 4 * A * B;
}

}  // namespace detail

/// True iff q_1 = r_1, q_j = r_{j-1} + r_j, q_n = r_{n-1}, decided exactly
/// from q and r^2.
inline bool laplacian_structure_holds(const std::vector<Rational>& q, const std::vector<Rational>& r_sq) {
  const std::size_t n = q.size();
  if (n == 1) return q[0] == 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == 0 || j == n - 1) {
      const Rational& w = r_sq[j == 0 ? 0 : n - 2];
      if (q[j] < 0 || q[j] * q[j] != w) return false;
    } else if (!detail::equals_sum_of_roots(q[j], r_sq[j - 1], r_sq[j])) {
      return false;
    }
  }
  return true;
}

/// Index (1-based) of the first vertex whose diagonal breaks the Laplacian
/// row-sum pattern, or 0 if none does.
inline int first_laplacian_violation(const std::vector<Rational>& q, const std::vector<Rational>& r_sq) {
  const std::size_t n = q.size();
  for (std::size_t j = 0; j < n; ++j) {
    bool ok;
    if (n == 1) {
      ok = q[0] == 0;
    } else if (j == 0 || j == n - 1) {
      const Rational& w = r_sq[j == 0 ? 0 : n - 2];
      ok = q[j] >= 0 && q[j] * q[j] == w;
    } else {
      ok = detail::equals_sum_of_roots(q[j], r_sq[j - 1], r_sq[j]);
    }
    if (!ok) return static_cast<int>(j + 1);
  }
  return 0;
}

/// Symmetric tridiagonal Hamiltonian of a weighted path. Adjacency stores +r
/// off the diagonal, the Laplacian stores -r and has q fixed by the weights.
class PathHamiltonian {
 public:
  static PathHamiltonian adjacency(std::vector<double> q, std::vector<double> r) {
    PathHamiltonian h;
    h.kind_ = HamiltonianKind::Adjacency;
    h.q_ = std::move(q);
    h.r_ = std::move(r);
    h.check();
    return h;
  }

  static PathHamiltonian laplacian(std::vector<double> r) {
    PathHamiltonian h;
    h.kind_ = HamiltonianKind::Laplacian;
    h.r_ = std::move(r);
    const std::size_t n = h.r_.size() + 1;
    h.q_.assign(n, 0.0);
    for (std::size_t j = 0; j + 1 < n; ++j) {
      h.q_[j] += h.r_[j];
      h.q_[j + 1] += h.r_[j];
    }
    h.check();
    return h;
  }

  /// Builds from exact q and r^2; r is materialized as sqrt(r^2). For the
  /// Laplacian the row pattern is verified exactly.
  static PathHamiltonian from_exact(HamiltonianKind kind, std::vector<Rational> q, std::vector<Rational> r_sq) {
    PathHamiltonian h;
    h.kind_ = kind;
    if (r_sq.size() + 1 != q.size()) {
      throw Error(ErrorCode::InvalidHamiltonian, "need n diagonal and n-1 off-diagonal entries");
    }
    for (std::size_t j = 0; j < r_sq.size(); ++j) {
      if (r_sq[j] <= 0) {
        throw Error(ErrorCode::NonPositiveOffdiag, "off-diagonal weight must be positive", static_cast<int>(j + 1));
      }
    }
    if (kind == HamiltonianKind::Laplacian) {
      if (int bad = first_laplacian_violation(q, r_sq)) {
        throw Error(ErrorCode::LaplacianStructureViolated,
                    "diagonal entry " + std::to_string(bad) + " breaks the Laplacian row-sum pattern", bad);
      }
    }
    for (const auto& v : q) h.q_.push_back(v.get_d());
    for (const auto& v : r_sq) h.r_.push_back(std::sqrt(v.get_d()));
    h.q_exact_ = std::move(q);
    h.r_sq_exact_ = std::move(r_sq);
    h.check();
    return h;
  }

  HamiltonianKind kind() const { return kind_; }
  std::size_t size() const { return q_.size(); }
  const std::vector<double>& q() const { return q_; }
  const std::vector<double>& r() const { return r_; }
  const std::optional<std::vector<Rational>>& q_exact() const { return q_exact_; }
  const std::optional<std::vector<Rational>>& r_sq_exact() const { return r_sq_exact_; }
  bool is_exact() const { return q_exact_.has_value() && r_sq_exact_.has_value(); }

  /// Attaches exact r^2 data (e.g. parsed alongside float weights). The
  /// values must agree with r to 1e-9 relative.
  PathHamiltonian with_exact_r_sq(std::vector<Rational> r_sq) const {
    if (r_sq.size() != r_.size()) throw Error(ErrorCode::InvalidHamiltonian, "r_squared_exact length mismatch");
    for (std::size_t j = 0; j < r_.size(); ++j) {
      const double want = r_[j] * r_[j];
      if (std::abs(r_sq[j].get_d() - want) > 1e-9 * std::max(1.0, want)) {
        throw Error(ErrorCode::InvalidHamiltonian, "r_squared_exact disagrees with r", static_cast<int>(j + 1));
      }
    }
    PathHamiltonian h = *this;
    h.r_sq_exact_ = std::move(r_sq);
    return h;
  }

  PathHamiltonian with_exact_q(std::vector<Rational> q) const {
    if (q.size() != q_.size()) throw Error(ErrorCode::InvalidHamiltonian, "q length mismatch");
    PathHamiltonian h = *this;
    h.q_exact_ = std::move(q);
    return h;
  }

 private:
  PathHamiltonian() = default;

  void check() const {
    detail::check_size(q_.size());
    if (r_.size() + 1 != q_.size()) {
      throw Error(ErrorCode::InvalidHamiltonian, "need n diagonal and n-1 off-diagonal entries");
    }
    for (std::size_t j = 0; j < r_.size(); ++j) {
      if (!(r_[j] > 0) || !std::isfinite(r_[j])) {
        throw Error(ErrorCode::NonPositiveOffdiag, "off-diagonal weight must be positive", static_cast<int>(j + 1));
      }
    }
    for (double v : q_) {
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidHamiltonian, "non-finite diagonal entry");
    }
  }

  HamiltonianKind kind_ = HamiltonianKind::Adjacency;
  std::vector<double> q_;
  std::vector<double> r_;
  std::optional<std::vector<Rational>> q_exact_;
  std::optional<std::vector<Rational>> r_sq_exact_;
};

inline MatrixD build_matrix(const PathHamiltonian& h) {
  const std::size_t n = h.size();
  const double sign = h.kind() == HamiltonianKind::Adjacency ? 1.0 : -1.0;
  MatrixD m(n, n);
  for (std::size_t j = 0; j < n; ++j) m(j, j) = h.q()[j];
  for (std::size_t j = 0; j + 1 < n; ++j) {
    m(j, j + 1) = sign * h.r()[j];
    m(j + 1, j) = sign * h.r()[j];
  }
  return m;
}

/// Mirror symmetry q_j = q_{n+1-j}, r_j = r_{n-j}. Decided exactly when exact
/// data is attached, else within tol.
inline bool is_persymmetric(const PathHamiltonian& h, double tol = 1e-12) {
  const std::size_t n = h.size();
  if (h.is_exact()) {
    const auto& q = *h.q_exact();
    const auto& r2 = *h.r_sq_exact();
    for (std::size_t j = 0; j < n; ++j)
      if (q[j] != q[n - 1 - j]) return false;
    for (std::size_t j = 0; j + 1 < n; ++j)
      if (r2[j] != r2[n - 2 - j]) return false;
    return true;
  }
  for (std::size_t j = 0; j < n; ++j)
    if (std::abs(h.q()[j] - h.q()[n - 1 - j]) > tol) return false;
  for (std::size_t j = 0; j + 1 < n; ++j)
    if (std::abs(h.r()[j] - h.r()[n - 2 - j]) > tol) return false;
  return true;
}

/// The two diagonal blocks of the orthogonal similarity of a persymmetric
/// matrix [[E, RCR], [C, RER]] (plus a middle row/column when n is odd).
struct BlockSplit {
  MatrixD b1;  // E - RC, size floor(n/2)
  MatrixD b2;  // E + RC, or bordered [[q, sqrt2 x^T], [sqrt2 x, E + RC]] when n is odd
  bool odd = false;
};

/// Cantoni-Butler split of a dense persymmetric symmetric matrix.
inline BlockSplit cantoni_butler_split(const MatrixD& h, double tol = 1e-12) {
  const std::size_t n = h.rows();
  if (!is_persymmetric(h, tol * std::max(1.0, max_abs(h)))) {
    throw Error(ErrorCode::NotPersymmetric, "matrix is not symmetric about the anti-diagonal");
  }
  const std::size_t m = n / 2;
  const bool odd = n % 2 == 1;
  const std::size_t lower = odd ? m + 1 : m;
  BlockSplit out;
  out.odd = odd;
  const MatrixD e = h.block(0, 0, m, m);
  const MatrixD c = h.block(lower, 0, m, m);
  const MatrixD rc = reversal<double>(m) * c;
  out.b1 = e - rc;
  const MatrixD e_plus = e + rc;
  if (!odd) {
    out.b2 = e_plus;
    return out;
  }
  out.b2 = MatrixD(m + 1, m + 1);
  out.b2(0, 0) = h(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = std::sqrt(2.0) * h(i, m);
    out.b2(0, i + 1) = x;
    out.b2(i + 1, 0) = x;
    for (std::size_t j = 0; j < m; ++j) out.b2(i + 1, j + 1) = e_plus(i, j);
  }
  return out;
}

inline BlockSplit block_split(const PathHamiltonian& h) {
  if (!is_persymmetric(h, 1e-12)) {
    throw Error(ErrorCode::NotPersymmetric, "path Hamiltonian is not persymmetric");
  }
  return cantoni_butler_split(build_matrix(h));
}

/// Antisymmetric eigenvector of the full matrix from an eigenvector v of
/// B1: [v; -Rv], or [v; 0; -Rv] for odd n. Normalized when v is.
inline std::vector<double> lift_from_b1(const std::vector<double>& v, bool odd) {
  const std::size_t m = v.size();
  std::vector<double> out(odd ? 2 * m + 1 : 2 * m, 0.0);
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < m; ++i) {
    out[i] = s * v[i];
    out[out.size() - 1 - i] = -s * v[i];
  }
  return out;
}

/// Symmetric eigenvector from an eigenvector u of B2: [u; Ru]/sqrt2 for
/// even n, [u~/sqrt2; a; Ru~/sqrt2] for odd n where u = [a; u~]. Normalized
/// when u is.
inline std::vector<double> lift_from_b2(const std::vector<double>& u, bool odd) {
  const double s = 1.0 / std::sqrt(2.0);
  if (!odd) {
    const std::size_t m = u.size();
    std::vector<double> out(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
      out[i] = s * u[i];
      out[2 * m - 1 - i] = s * u[i];
    }
    return out;
  }
  const std::size_t m = u.size() - 1;
  std::vector<double> out(2 * m + 1);
  out[m] = u[0];
  for (std::size_t i = 0; i < m; ++i) {
    out[i] = s * u[i + 1];
    out[2 * m - i] = s * u[i + 1];
  }
  return out;
}

/// The diagonal similarity Q (adjacency) or T (Laplacian) with
/// diag(d) M = H diag(d).
inline std::vector<double> similarity_diagonal(const PathHamiltonian& h) {
  return similarity_scalings(h.r(), h.kind());
}

/// Multiplication by x in the monic basis p_0..p_{n-1}: superdiagonal 1,
/// diagonal q, subdiagonal r^2.
inline MatrixD multiplication_operator(const PathHamiltonian& h) {
  const std::size_t n = h.size();
  MatrixD m(n, n);
  for (std::size_t j = 0; j < n; ++j) m(j, j) = h.q()[j];
  for (std::size_t j = 0; j + 1 < n; ++j) {
    m(j, j + 1) = 1.0;
    m(j + 1, j) = h.r_sq_exact() ? (*h.r_sq_exact())[j].get_d() : h.r()[j] * h.r()[j];
  }
  return m;
}

// ---------------------------------------------------------------------------
// Mirror-symmetric weighted trees

struct WeightedEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  Rational weight;
};

/// G joined to its mirror image by one bridge edge (even type), or through a
/// centre vertex by two bridge edges (odd type).
struct SymmetricTree {
  std::size_t half_size = 1;
  std::vector<WeightedEdge> edges;  // edges of G on vertices 0..half_size-1
  Rational bridge_weight{1};
  bool center = false;
  std::size_t attach = 0;
};

struct TreeLaplacian {
  Matrix<Rational> laplacian;
  std::vector<std::size_t> mirror;    // position j -> n-1-j
  std::vector<std::size_t> position;  // half-tree vertex -> position in the ordering
};

/// Orders G breadth-first from the attach vertex, placed so that the attach
/// vertex sits next to the middle; then the centre (odd type); then the
/// mirror copy in reverse. The Laplacian is persymmetric by construction.
inline TreeLaplacian build_symmetric_tree(const SymmetricTree& t) {
  const std::size_t k = t.half_size;
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "half tree needs at least one vertex");
  if (t.attach >= k) throw Error(ErrorCode::InvalidArgument, "attach vertex out of range");
  if (t.bridge_weight <= 0) throw Error(ErrorCode::NonPositiveWeight, "bridge weight must be positive");
  std::vector<std::vector<std::pair<std::size_t, Rational>>> adj(k);
  for (const auto& e : t.edges) {
    if (e.u >= k || e.v >= k || e.u == e.v) throw Error(ErrorCode::InvalidArgument, "bad edge endpoint");
    if (e.weight <= 0) throw Error(ErrorCode::NonPositiveWeight, "edge weights must be positive");
    adj[e.u].emplace_back(e.v, e.weight);
    adj[e.v].emplace_back(e.u, e.weight);
  }
  std::vector<std::size_t> bfs;
  std::vector<bool> seen(k, false);
  std::deque<std::size_t> queue{t.attach};
  seen[t.attach] = true;
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    bfs.push_back(x);
    for (const auto& [y, w] : adj[x]) {
      if (!seen[y]) {
        seen[y] = true;
        queue.push_back(y);
      }
    }
  }
  if (bfs.size() != k) throw Error(ErrorCode::DisconnectedHalf, "half tree is disconnected");
  if (t.edges.size() != k - 1) throw Error(ErrorCode::InvalidArgument, "half graph is not a tree");

  const std::size_t n = t.center ? 2 * k + 1 : 2 * k;
  TreeLaplacian out;
  out.position.assign(k, 0);
  for (std::size_t i = 0; i < k; ++i) out.position[bfs[i]] = k - 1 - i;
  out.mirror.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.mirror[j] = n - 1 - j;

  Matrix<Rational> L(n, n);
  auto add_edge = [&L](std::size_t a, std::size_t b, const Rational& w) {
    L(a, b) -= w;
    L(b, a) -= w;
    L(a, a) += w;
    L(b, b) += w;
  };
  for (const auto& e : t.edges) {
    const std::size_t a = out.position[e.u];
    const std::size_t b = out.position[e.v];
    add_edge(a, b, e.weight);
    add_edge(n - 1 - a, n - 1 - b, e.weight);
  }
  const std::size_t hub = out.position[t.attach];  // == k-1
  if (t.center) {
    add_edge(hub, k, t.bridge_weight);
    add_edge(k, n - 1 - hub, t.bridge_weight);
  } else {
    add_edge(hub, n - 1 - hub, t.bridge_weight);
  }
  out.laplacian = std::move(L);
  return out;
}

/// Block split of a tree Laplacian that is persymmetric under `mirror`
/// (which must be the reversal j -> n-1-j of the chosen ordering).
inline BlockSplit tree_block_split(const MatrixD& laplacian, const std::vector<std::size_t>& mirror) {
  const std::size_t n = laplacian.rows();
  if (mirror.size() != n) throw Error(ErrorCode::InvalidArgument, "mirror map size mismatch");
  for (std::size_t j = 0; j < n; ++j) {
    if (mirror[j] != n - 1 - j) {
      throw Error(ErrorCode::InvalidArgument, "mirror map must be the reversal of the vertex ordering");
    }
  }
  return cantoni_butler_split(laplacian);
}

}  // namespace pstlab
