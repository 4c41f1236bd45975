#pragma once

// Dense univariate polynomials over exact rationals or doubles, and the
// orthogonal-polynomial machinery of a symmetric tridiagonal matrix:
// forward three-term recurrence, signed interpolation of p_{n-1} from a
// target spectrum, and the Euclidean step that peels off one (q, r^2) pair.

#include <cmath>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pstlab/error.hpp"
#include "pstlab/kind.hpp"
#include "pstlab/rational.hpp"

namespace pstlab {

template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(const T& c) { return Poly(std::vector<T>{c}); }
  static Poly x() { return Poly(std::vector<T>{T(0), T(1)}); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  /// Coefficient of x^i; zero beyond the degree.
  T coeff(int i) const { return (i >= 0 && i <= degree()) ? c_[i] : T(0); }
  const std::vector<T>& coeffs() const { return c_; }
  T leading() const { return c_.empty() ? T(0) : c_.back(); }

  T operator()(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = T(acc * x + *it);
    return acc;
  }

  Poly monic() const {
    if (c_.empty()) throw Error(ErrorCode::InvalidArgument, "zero polynomial has no monic form");
    return *this / leading();
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> out(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
    return Poly(std::move(out));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + b * T(-1); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> out(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(out));
  }
  friend Poly operator*(const Poly& a, const T& s) {
    std::vector<T> out = a.c_;
    for (auto& c : out) c *= s;
    return Poly(std::move(out));
  }
  friend Poly operator/(const Poly& a, const T& s) {
    std::vector<T> out = a.c_;
    for (auto& c : out) c /= s;
    return Poly(std::move(out));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Quotient of division by the monic linear factor (x - root); the
  /// remainder is discarded.
  Poly deflate(const T& root) const {
    if (degree() < 1) return Poly();
    std::vector<T> q(c_.size() - 1, T(0));
    T carry(0);
    for (int i = degree(); i >= 1; --i) {
      carry = T(c_[i] + carry * root);
      q[i - 1] = carry;
    }
    return Poly(std::move(q));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<T> c_;
};

/// Coefficients as rational strings, constant term first.
inline std::vector<std::string> coefficient_strings(const Poly<Rational>& p) {
  std::vector<std::string> out;
  for (const auto& c : p.coeffs()) out.push_back(to_string(c));
  return out;
}

/// Monic p_0..p_n of a tridiagonal matrix and the diagonal similarity
/// d_1..d_n relating it to the multiplication operator.
template <class T>
struct OrthoPolySeq {
  std::vector<Poly<T>> monic;    // p_0 .. p_n
  std::vector<double> scalings;  // d_1 .. d_n
  std::vector<double> q;         // recurrence data, kept for stable evaluation
  std::vector<double> r_sq;
  HamiltonianKind kind = HamiltonianKind::Adjacency;

  std::size_t size() const { return scalings.size(); }

  /// p_0(x) .. p_n(x) by running the recurrence at x; stabler than
  /// evaluating the monomial coefficients.
  std::vector<double> values(double x) const {
    const std::size_t n = size();
    std::vector<double> p(n + 1);
    p[0] = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
      p[k] = (x - q[k - 1]) * p[k - 1];
      if (k >= 2) p[k] -= r_sq[k - 2] * p[k - 2];
    }
    return p;
  }

  /// (d_1 p_0(x), ..., d_n p_{n-1}(x)), the eigenvector of the Hamiltonian
  /// when x is an eigenvalue.
  std::vector<double> scaled_values(double x) const {
    const auto p = values(x);
    std::vector<double> out(size());
    for (std::size_t j = 0; j < size(); ++j) out[j] = scalings[j] * p[j];
    return out;
  }
};

/// d_1 = 1, d_j = 1/prod_{l<j} r_l, with an extra (-1)^{j-1} for the
/// Laplacian sign convention.
inline std::vector<double> similarity_scalings(std::span<const double> r, HamiltonianKind kind) {
  std::vector<double> d(r.size() + 1);
  d[0] = 1.0;
  for (std::size_t j = 1; j < d.size(); ++j) {
    d[j] = d[j - 1] / r[j - 1];
    if (kind == HamiltonianKind::Laplacian) d[j] = -d[j];
  }
  return d;
}

/// p_k = (x - q_k) p_{k-1} - r_{k-1}^2 p_{k-2}, with p_{-1} = 0 and p_0 = 1.
/// Takes squared off-diagonals so exact inputs stay exact.
template <class T>
OrthoPolySeq<T> recurrence_forward(std::span<const T> q, std::span<const T> r_sq,
                                   HamiltonianKind kind = HamiltonianKind::Adjacency) {
  const std::size_t n = q.size();
  if (n == 0 || r_sq.size() + 1 != n) {
    throw Error(ErrorCode::InvalidArgument, "need n diagonal and n-1 off-diagonal entries");
  }
  std::vector<double> r(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    if (!(r_sq[j] > 0)) {
      throw Error(ErrorCode::NonPositiveOffdiag, "off-diagonal weight must be positive", static_cast<int>(j + 1));
    }
    r[j] = std::sqrt(to_double(r_sq[j]));
  }
  OrthoPolySeq<T> seq;
  seq.kind = kind;
  seq.monic.reserve(n + 1);
  seq.monic.push_back(Poly<T>::constant(T(1)));
  const Poly<T> x = Poly<T>::x();
  for (std::size_t k = 1; k <= n; ++k) {
    Poly<T> next = seq.monic[k - 1] * (x - Poly<T>::constant(q[k - 1]));
    if (k >= 2) next = next - seq.monic[k - 2] * r_sq[k - 2];
    seq.monic.push_back(std::move(next));
  }
  seq.scalings = similarity_scalings(r, kind);
  for (std::size_t j = 0; j < n; ++j) seq.q.push_back(to_double(q[j]));
  for (std::size_t j = 0; j + 1 < n; ++j) seq.r_sq.push_back(to_double(r_sq[j]));
  return seq;
}

/// Float convenience taking the off-diagonal magnitudes themselves.
inline OrthoPolySeq<double> recurrence_forward_r(std::span<const double> q, std::span<const double> r,
                                                 HamiltonianKind kind = HamiltonianKind::Adjacency) {
  std::vector<double> r_sq(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (!(r[j] > 0)) {
      throw Error(ErrorCode::NonPositiveOffdiag, "off-diagonal weight must be positive", static_cast<int>(j + 1));
    }
    r_sq[j] = r[j] * r[j];
  }
  auto seq = recurrence_forward<double>(q, r_sq, kind);
  seq.scalings = similarity_scalings(r, kind);
  return seq;
}

/// prod_r (x - roots[r]).
template <class T>
Poly<T> from_roots(std::span<const T> roots) {
  Poly<T> p = Poly<T>::constant(T(1));
  const Poly<T> x = Poly<T>::x();
  for (const auto& a : roots) p = p * (x - Poly<T>::constant(a));
  return p;
}

/// The unique polynomial of degree <= n-1 taking the value (-1)^{n+r} at the
/// r-th (1-based, ascending) root. Built from the Lagrange basis
/// p_n(x)/((x - a_r) p_n'(a_r)); in floating point this is the first
/// barycentric form. For an endpoint-PST chain this is d_n p_{n-1}, so a
/// non-positive leading coefficient or a short degree means no positive
/// persymmetric Jacobi matrix has this spectrum.
template <class T>
Poly<T> interpolate_signed(std::span<const T> roots) {
  const std::size_t n = roots.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "no roots");
  const Poly<T> full = from_roots(roots);
  Poly<T> out;
  for (std::size_t r = 0; r < n; ++r) {
    T denom(1);
    for (std::size_t s = 0; s < n; ++s) {
      if (s == r) continue;
      const T diff = T(roots[r] - roots[s]);
      if (diff == 0) throw Error(ErrorCode::DegenerateInterpolation, "roots not distinct");
      denom *= diff;
    }
    // r is 0-based here, so (-1)^{n + (r+1)}
    const T sign = ((n + r + 1) % 2 == 0) ? T(1) : T(-1);
    out = out + full.deflate(roots[r]) * T(sign / denom);
  }
  if (out.degree() != static_cast<int>(n) - 1 || !(out.leading() > 0)) {
    throw Error(ErrorCode::DegenerateInterpolation,
                "signed interpolant lacks a positive leading coefficient of degree n-1");
  }
  return out;
}

template <class T>
struct EuclideanStep {
  T q;          // q_k
  T r_sq;       // r_{k-1}^2
  Poly<T> next;  // monic p_{k-2}
};

/// Given monic p_k and p_{k-1}, recovers q_k = [x^{k-1}](x p_{k-1} - p_k),
/// then (x - q_k) p_{k-1} - p_k = r_{k-1}^2 p_{k-2}.
template <class T>
EuclideanStep<T> euclidean_step(const Poly<T>& pk, const Poly<T>& pkm1) {
  const int k = pk.degree();
  if (k < 1 || pkm1.degree() != k - 1 || pk.leading() != 1 || pkm1.leading() != 1) {
    throw Error(ErrorCode::InvalidArgument, "euclidean_step needs monic p_k and p_{k-1}");
  }
  EuclideanStep<T> step;
  step.q = T(pkm1.coeff(k - 2) - pk.coeff(k - 1));
  if (k == 1) {
    // p_1 = x - q_1; nothing left to divide
    step.r_sq = T(0);
    return step;
  }
  std::vector<T> rem(static_cast<std::size_t>(k - 1), T(0));
  for (int i = 0; i <= k - 2; ++i) {
    rem[i] = T(pkm1.coeff(i - 1) - step.q * pkm1.coeff(i) - pk.coeff(i));
  }
  step.r_sq = rem.back();
  if (step.r_sq == 0) {
    throw Error(ErrorCode::DegreeDrop, "remainder dropped below degree k-2", k - 1);
  }
  if (step.r_sq < 0) {
    throw Error(ErrorCode::NegativeWeightSquared, "remainder has negative leading coefficient", k - 1);
  }
  step.next = Poly<T>(std::move(rem)) / step.r_sq;
  return step;
}

/// Runs euclidean_step from (p_n, p_{n-1}) down to p_0, returning q_1..q_n
/// and r_1^2..r_{n-1}^2.
template <class T>
std::pair<std::vector<T>, std::vector<T>> reconstruct_from_pair(const Poly<T>& pn, const Poly<T>& pnm1) {
  const int n = pn.degree();
  std::vector<T> q(static_cast<std::size_t>(n), T(0));
  std::vector<T> r_sq(static_cast<std::size_t>(n > 0 ? n - 1 : 0), T(0));
  Poly<T> hi = pn;
  Poly<T> lo = pnm1;
  for (int k = n; k >= 1; --k) {
    auto step = euclidean_step(hi, lo);
    q[k - 1] = step.q;
    if (k >= 2) {
      r_sq[k - 2] = step.r_sq;
      hi = std::move(lo);
      lo = std::move(step.next);
    }
  }
  return {std::move(q), std::move(r_sq)};
}

}  // namespace pstlab
