#pragma once

// Inverse eigenvalue reconstruction of endpoint-PST chains from a target
// spectrum, closed forms for small chains, and exact certificates for the
// Laplacian no-go and weight-irrationality results.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "pstlab/dynamics.hpp"
#include "pstlab/error.hpp"
#include "pstlab/hamiltonian.hpp"
#include "pstlab/poly.hpp"
#include "pstlab/random.hpp"
#include "pstlab/rational.hpp"
#include "pstlab/spectra.hpp"

namespace pstlab {

// ---------------------------------------------------------------------------
// Middle entries from alternating sums

struct AlternatingSums {
  Rational s1;  // sum (-1)^{r+n} alpha_r
  Rational s2;  // sum (-1)^{r+n} alpha_r^2
};

inline AlternatingSums alternating_sums(const std::vector<Rational>& alpha) {
  const std::size_t n = alpha.size();
  AlternatingSums s;
  for (std::size_t i = 0; i < n; ++i) {
    // r = i + 1
    const bool plus = (i + 1 + n) % 2 == 0;
    if (plus) {
      s.s1 += alpha[i];
      s.s2 += alpha[i] * alpha[i];
    } else {
      s.s1 -= alpha[i];
      s.s2 -= alpha[i] * alpha[i];
    }
  }
  return s;
}

struct MiddleEntries {
  Rational s1;
  Rational s2;
  std::size_t r_index = 0;  // 1-based index of the middle edge
  Rational middle_r_sq;
  std::size_t q_index = 0;  // 1-based index of the middle vertex
  std::optional<Rational> middle_q;
  /// Laplacian, even n >= 4: r_{n/2-1} forced by the row-sum pattern.
  std::optional<Rational> laplacian_neighbor_r;
};

namespace detail {

inline MiddleEntries generic_middle(const std::vector<Rational>& alpha) {
  const std::size_t n = alpha.size();
  const auto sums = alternating_sums(alpha);
  MiddleEntries m;
  m.s1 = sums.s1;
  m.s2 = sums.s2;
  if (n % 2 == 0) {
    if (m.s1 <= 0) throw Error(ErrorCode::S1NonPositive, "S1 <= 0: middle weight would not be positive");
    m.r_index = n / 2;
    m.middle_r_sq = (m.s1 / 2) * (m.s1 / 2);
    m.q_index = n / 2;
    m.middle_q = m.s2 / (2 * m.s1);
  } else {
    m.r_index = (n - 1) / 2;
    m.middle_r_sq = (m.s2 - m.s1 * m.s1) / 4;
    m.q_index = (n + 1) / 2;
    m.middle_q = m.s1;
  }
  return m;
}

}  // namespace detail

/// Middle edge weight and middle potential of the persymmetric chain with
/// this spectrum, read off the trace and trace-of-square of the two blocks.
inline MiddleEntries middle_entries(const Spectrum& s) {
  const auto& alpha = s.exact_values();
  const std::size_t n = alpha.size();
  MiddleEntries m = detail::generic_middle(alpha);
  if (s.kind() == SpectrumKind::Laplacian) {
    if (n % 2 == 1) {
      if (m.s2 != 2 * m.s1 * m.s1) {
        throw Error(ErrorCode::LaplacianOddConstraintViolated,
                    "odd Laplacian chain needs S2 = 2 S1^2, got S1=" + to_string(m.s1) + ", S2=" + to_string(m.s2));
      }
    } else if (n >= 4) {
      m.laplacian_neighbor_r = (m.s2 - m.s1 * m.s1) / (2 * m.s1);
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Reconstruction

/// Smallest readout time (as a multiple of pi) at which the spectrum meets
/// the odd-gap condition: with G the rational gcd of the gaps, PST time is
/// pi/G iff every gap/G is odd.
inline std::optional<Rational> kay_time_pi_multiple(const std::vector<Rational>& alpha) {
  Integer num_gcd = 0;
  Integer den_lcm = 1;
  for (std::size_t i = 1; i < alpha.size(); ++i) {
    const Rational g = alpha[i] - alpha[i - 1];
    if (g <= 0) return std::nullopt;
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), g.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), g.get_den_mpz_t());
  }
  Rational G(num_gcd, den_lcm);
  G.canonicalize();
  for (std::size_t i = 1; i < alpha.size(); ++i) {
    const Rational ratio = (alpha[i] - alpha[i - 1]) / G;
    if (!is_integer(ratio) || !is_odd(ratio.get_num())) return std::nullopt;
  }
  return Rational(1) / G;
}

struct MiddleCheck {
  MiddleEntries expected;
  Rational reconstructed_r_sq;
  Rational reconstructed_q;
  bool matches = false;
};

struct SynthesisReport {
  PathHamiltonian hamiltonian;
  SpectrumKind spectrum_kind = SpectrumKind::Adjacency;
  std::vector<Rational> eigenvalues;
  std::vector<Rational> q_exact;
  std::vector<Rational> r_sq_exact;
  Poly<Rational> p_n;
  Poly<Rational> p_n_minus_1;
  Rational pst_time_pi_multiple;  // endpoint PST at pi * this
  MiddleCheck middle_check;
  double spectrum_residual = 0.0;
};

/// Rebuilds the persymmetric Jacobi matrix with the given exact spectrum:
/// p_n from the roots, p_{n-1} from the signed interpolant, then Euclidean
/// steps down to p_0. Kind-specific structure is checked afterwards.
inline SynthesisReport reconstruct(const Spectrum& s) {
  if (!s.is_exact()) throw Error(ErrorCode::InexactInput, "reconstruction needs an exact spectrum");
  const auto& alpha = s.exact_values();
  const std::size_t n = alpha.size();
  if (n > kMaxVertices) throw Error(ErrorCode::SizeLimit, "spectrum too long");
  const auto pst_time = kay_time_pi_multiple(alpha);
  if (!pst_time) {
    // re-run the check at the stated readout time for a precise diagnostic
    validate_kay(s);
    throw Error(ErrorCode::GapNotOddInteger, "gaps are not odd multiples of a common unit");
  }

  const Poly<Rational> pn = from_roots<Rational>(alpha);
  const Poly<Rational> pnm1 = interpolate_signed<Rational>(alpha).monic();
  auto [q, r_sq] = reconstruct_from_pair(pn, pnm1);

  for (std::size_t j = 0; j < n; ++j) {
    if (q[j] != q[n - 1 - j]) throw Error(ErrorCode::NotPersymmetricResult, "reconstructed q not mirror symmetric");
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    if (r_sq[j] != r_sq[n - 2 - j]) {
      throw Error(ErrorCode::NotPersymmetricResult, "reconstructed r not mirror symmetric");
    }
  }
  if (s.kind() == SpectrumKind::AdjacencyNoPotentials) {
    for (std::size_t j = 0; j < n; ++j) {
      if (q[j] != 0) {
        throw Error(ErrorCode::PotentialRequired, "chain needs a potential at vertex " + std::to_string(j + 1),
                    static_cast<int>(j + 1));
      }
    }
  }
  const HamiltonianKind hkind =
      s.kind() == SpectrumKind::Laplacian ? HamiltonianKind::Laplacian : HamiltonianKind::Adjacency;
  if (hkind == HamiltonianKind::Laplacian) {
    if (int bad = first_laplacian_violation(q, r_sq)) {
      throw Error(ErrorCode::LaplacianStructureViolated,
                  "reconstructed chain breaks the Laplacian row-sum pattern at vertex " + std::to_string(bad), bad);
    }
  }

  SynthesisReport rep{PathHamiltonian::from_exact(hkind, q, r_sq), s.kind(), {}, {}, {}, {}, {}, {}, {}, 0.0};
  rep.spectrum_kind = s.kind();
  rep.eigenvalues = alpha;
  rep.q_exact = std::move(q);
  rep.r_sq_exact = std::move(r_sq);
  rep.p_n = pn;
  rep.p_n_minus_1 = pnm1;
  rep.pst_time_pi_multiple = *pst_time;

  if (n >= 2) {
    MiddleCheck& mc = rep.middle_check;
    mc.expected = detail::generic_middle(alpha);
    mc.reconstructed_r_sq = rep.r_sq_exact[mc.expected.r_index - 1];
    mc.reconstructed_q = rep.q_exact[mc.expected.q_index - 1];
    mc.matches = mc.reconstructed_r_sq == mc.expected.middle_r_sq && mc.expected.middle_q &&
                 mc.reconstructed_q == *mc.expected.middle_q;
  }

  const EigenSystem es = eigensystem(rep.hamiltonian);
  for (std::size_t r = 0; r < n; ++r) {
    rep.spectrum_residual = std::max(rep.spectrum_residual, std::abs(es.values[r] - alpha[r].get_d()));
  }
  return rep;
}

/// The closed forms for n = 2..5 (loop-free only for n = 5; n = 4 with
/// potentials uses the trace/determinant solution).
inline PathHamiltonian closed_form_small_n(const Spectrum& s) {
  if (!s.is_exact()) throw Error(ErrorCode::InexactInput, "closed forms need an exact spectrum");
  const auto& a = s.exact_values();
  const std::size_t n = a.size();
  const HamiltonianKind hkind =
      s.kind() == SpectrumKind::Laplacian ? HamiltonianKind::Laplacian : HamiltonianKind::Adjacency;
  const bool loop_free = s.kind() == SpectrumKind::AdjacencyNoPotentials;
  switch (n) {
    case 2: {
      const Rational r1 = (a[1] - a[0]) / 2;
      const Rational q1 = (a[1] + a[0]) / 2;
      return PathHamiltonian::from_exact(hkind, {q1, q1}, {r1 * r1});
    }
    case 3: {
      const Rational r1_sq = (-2 * a[1] * a[1] + 2 * a[0] * a[1] - 2 * a[0] * a[2] + 2 * a[1] * a[2]) / 4;
      const Rational q2 = a[0] - a[1] + a[2];
      return PathHamiltonian::from_exact(hkind, {a[1], q2, a[1]}, {r1_sq, r1_sq});
    }
    case 4: {
      if (loop_free) {
        const Rational& b1 = a[2];
        const Rational& b2 = a[3];
        const Rational r2 = b2 - b1;
        return PathHamiltonian::from_exact(hkind, {0, 0, 0, 0}, {b1 * b2, r2 * r2, b1 * b2});
      }
      const auto sums = alternating_sums(a);
      if (sums.s1 <= 0) throw Error(ErrorCode::S1NonPositive, "S1 <= 0");
      const Rational even_prod = a[1] * a[3];
      const Rational odd_prod = a[0] * a[2];
      const Rational r2 = sums.s1 / 2;
      const Rational q2 = sums.s2 / (2 * sums.s1);
      const Rational q1 = (even_prod - odd_prod) / sums.s1;
      const Rational r1_sq =
          ((even_prod - odd_prod) * sums.s2 - (even_prod + odd_prod) * sums.s1 * sums.s1) / (2 * sums.s1 * sums.s1);
      return PathHamiltonian::from_exact(hkind, {q1, q2, q2, q1}, {r1_sq, r2 * r2, r1_sq});
    }
    case 5: {
      if (!loop_free) throw Error(ErrorCode::UnsupportedN, "n = 5 closed form covers loop-free chains only");
      const Rational& b1 = a[3];
      const Rational& b2 = a[4];
      const Rational r2_sq = (b2 * b2 - b1 * b1) / 2;
      return PathHamiltonian::from_exact(hkind, {0, 0, 0, 0, 0}, {b1 * b1, r2_sq, r2_sq, b1 * b1});
    }
    default:
      throw Error(ErrorCode::UnsupportedN, "closed forms exist for n = 2..5 only");
  }
}

/// True iff every r_k^2 is the square of a rational.
inline bool all_rational_check(const PathHamiltonian& h) {
  if (!h.r_sq_exact()) throw Error(ErrorCode::MissingExactData, "no exact r^2 data attached");
  return std::all_of(h.r_sq_exact()->begin(), h.r_sq_exact()->end(),
                     [](const Rational& w) { return is_rational_square(w); });
}

// ---------------------------------------------------------------------------
// Certificates

enum class CertificateClaim { LaplacianPathInfeasible, WeightIrrational };
enum class CertificateReason { EvenDivisibility, FourModFour, OddParity, Mod8Residue, Mod4Residue };

inline std::string_view claim_name(CertificateClaim c) {
  return c == CertificateClaim::LaplacianPathInfeasible ? "laplacian_infeasible" : "weight_irrational";
}

inline std::string_view reason_name(CertificateReason r) {
  switch (r) {
    case CertificateReason::EvenDivisibility: return "even_divisibility";
    case CertificateReason::FourModFour: return "four_mod_four";
    case CertificateReason::OddParity: return "odd_parity";
    case CertificateReason::Mod8Residue: return "mod8_residue";
    case CertificateReason::Mod4Residue: return "mod4_residue";
  }
  return "unknown";
}

/// Witness layouts:
///   even_divisibility: [2^{n/2-1}, n/2]
///   four_mod_four:     [lhs mod 4, rhs mod 4] of 2 a2 a4 = a3 (a2 + a4) - a3^2
///   odd_parity:        [lhs parity, rhs parity, number of even factors]
///   mod8_residue:      [a1, a2, a3, a4, S1, S2, N, N mod 8]
///   mod4_residue:      [a1..an, S1, S2, S2 - S1^2, (S2 - S1^2) mod 4]
struct Certificate {
  CertificateClaim claim = CertificateClaim::LaplacianPathInfeasible;
  std::size_t n = 0;
  CertificateReason reason = CertificateReason::OddParity;
  std::vector<Rational> witness;
};

/// Why a Laplacian PST chain on n >= 3 vertices cannot exist, as a residue
/// fact about its integer spectrum.
inline Certificate laplacian_infeasibility(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::PreconditionViolated, "Laplacian no-go applies for n >= 3");
  Certificate c;
  c.claim = CertificateClaim::LaplacianPathInfeasible;
  c.n = n;
  if (n % 2 == 0 && n >= 6) {
    c.reason = CertificateReason::EvenDivisibility;
    c.witness = {Rational(pow2(n / 2 - 1)), Rational(static_cast<long>(n / 2))};
  } else if (n == 4) {
    // a2, a4 odd and a3 even: lhs = 2 a2 a4 is 2 mod 4, rhs = a3 (a2 + a4) - a3^2 is 0 mod 4
    c.reason = CertificateReason::FourModFour;
    c.witness = {Rational(2), Rational(0)};
  } else {
    // n * (odd eigenvalues) = (even eigenvalues)
    c.reason = CertificateReason::OddParity;
    c.witness = {Rational(1), Rational(0), Rational(static_cast<long>((n - 1) / 2))};
  }
  return c;
}

/// Re-derives each certificate's residue facts from scratch.
inline bool check_certificate(const Certificate& c) {
  const auto& w = c.witness;
  const long n = static_cast<long>(c.n);
  switch (c.reason) {
    case CertificateReason::EvenDivisibility: {
      if (n % 2 != 0 || n < 6 || w.size() != 2) return false;
      Integer p = 1;
      for (long i = 0; i < n / 2 - 1; ++i) p *= 2;
      if (w[0] != Rational(p) || w[1] != Rational(n / 2)) return false;
      return mpz_divisible_p(w[1].get_num_mpz_t(), w[0].get_num_mpz_t()) == 0;
    }
    case CertificateReason::FourModFour: {
      if (n != 4 || w.size() != 2 || w[0] == w[1]) return false;
      for (long a2 : {1L, 3L})
        for (long a4 : {1L, 3L})
          for (long a3 : {0L, 2L}) {
            const long lhs = ((2 * a2 * a4) % 4 + 4) % 4;
            const long rhs = ((a3 * (a2 + a4) - a3 * a3) % 4 + 4) % 4;
            if (Rational(lhs) != w[0] || Rational(rhs) != w[1]) return false;
          }
      return true;
    }
    case CertificateReason::OddParity: {
      if (n % 2 == 0 || n < 3 || w.size() != 3) return false;
      const long factors = (n - 1) / 2;
      // n times a product of odd numbers is odd; a nonempty product of even numbers is even
      const long lhs = n % 2;
      const long rhs = factors >= 1 ? 0 : 1;
      return w[0] == lhs && w[1] == rhs && w[2] == factors && lhs != rhs;
    }
    case CertificateReason::Mod8Residue: {
      if (n != 4 || w.size() != 8) return false;
      const Rational& a1 = w[0];
      const Rational& a2 = w[1];
      const Rational& a3 = w[2];
      const Rational& a4 = w[3];
      const Rational s1 = -a1 + a2 - a3 + a4;
      const Rational s2 = -a1 * a1 + a2 * a2 - a3 * a3 + a4 * a4;
      const Rational big = ((a2 * a4 - a1 * a3) * s2 - (a2 * a4 + a1 * a3) * s1 * s1) / 2;
      if (s1 != w[4] || s2 != w[5] || big != w[6] || !is_integer(big)) return false;
      const Integer r = mod(big.get_num(), 8);
      if (Rational(r) != w[7] || (r != 3 && r != 7)) return false;
      // 3, 7 mod 8 are never squares, so r_1^2 = N / S1^2 is not a rational square
      return !is_perfect_square(big.get_num()) && !is_rational_square(big / (s1 * s1));
    }
    case CertificateReason::Mod4Residue: {
      if (n < 5 || (n % 8 != 3 && n % 8 != 5) || w.size() != static_cast<std::size_t>(n) + 4) return false;
      Rational s1, s2;
      for (long i = 0; i < n; ++i) {
        const Rational& a = w[i];
        if ((i + 1 + n) % 2 == 0) {
          s1 += a;
          s2 += a * a;
        } else {
          s1 -= a;
          s2 -= a * a;
        }
      }
      const Rational d = s2 - s1 * s1;
      if (s1 != w[n] || s2 != w[n + 1] || d != w[n + 2] || !is_integer(d)) return false;
      const Integer r = mod(d.get_num(), 4);
      return Rational(r) == w[n + 3] && r == 2 && !is_rational_square(d / 4);
    }
  }
  return false;
}

enum class RationalityStatus { Certified, NotCovered, Counterexample };

inline std::string_view status_name(RationalityStatus s) {
  switch (s) {
    case RationalityStatus::Certified: return "certified";
    case RationalityStatus::NotCovered: return "not_covered";
    case RationalityStatus::Counterexample: return "counterexample";
  }
  return "unknown";
}

struct RationalityOutcome {
  RationalityStatus status = RationalityStatus::NotCovered;
  std::optional<Certificate> certificate;
  /// N mod 8 for n = 4, (S2 - S1^2) mod 4 for covered odd n.
  std::optional<long> residue;
};

/// Certifies that a PST chain at readout time pi with this (normalized,
/// integer) spectrum has an irrational weight, for n = 4 and n = 3, 5 mod 8
/// (n >= 5). Other n are reported as not covered.
inline RationalityOutcome rationality_certificate(const Spectrum& s) {
  if (!s.is_exact()) throw Error(ErrorCode::PreconditionViolated, "rationality certificates need exact input");
  if (s.kind() == SpectrumKind::Laplacian) {
    throw Error(ErrorCode::PreconditionViolated, "rationality certificates concern adjacency chains");
  }
  const Spectrum scaled = rescale_to_pi(s);
  const auto& a = scaled.exact_values();
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_integer(a[i])) throw Error(ErrorCode::PreconditionViolated, "eigenvalues must be integers");
    if (is_odd(a[i].get_num()) != (i % 2 == 0)) {
      throw Error(ErrorCode::PreconditionViolated, "spectrum is not parity-normalized", static_cast<int>(i + 1));
    }
  }
  try {
    validate_kay(scaled);
  } catch (const Error& e) {
    throw Error(ErrorCode::PreconditionViolated, e.what(), e.index());
  }

  RationalityOutcome out;
  const auto sums = alternating_sums(a);
  Certificate c;
  c.claim = CertificateClaim::WeightIrrational;
  c.n = n;
  if (n == 4) {
    const Rational big = ((a[1] * a[3] - a[0] * a[2]) * sums.s2 - (a[1] * a[3] + a[0] * a[2]) * sums.s1 * sums.s1) / 2;
    c.reason = CertificateReason::Mod8Residue;
    c.witness = {a[0], a[1], a[2], a[3], sums.s1, sums.s2, big};
    if (is_integer(big)) {
      const Integer r = mod(big.get_num(), 8);
      out.residue = r.get_si();
      c.witness.emplace_back(r);
    }
  } else if (n >= 5 && (n % 8 == 3 || n % 8 == 5)) {
    const Rational d = sums.s2 - sums.s1 * sums.s1;
    c.reason = CertificateReason::Mod4Residue;
    c.witness = a;
    c.witness.push_back(sums.s1);
    c.witness.push_back(sums.s2);
    c.witness.push_back(d);
    const Integer r = mod(d.get_num(), 4);
    out.residue = r.get_si();
    c.witness.emplace_back(r);
  } else {
    out.status = RationalityStatus::NotCovered;
    return out;
  }
  out.status = check_certificate(c) ? RationalityStatus::Certified : RationalityStatus::Counterexample;
  out.certificate = std::move(c);
  return out;
}

// ---------------------------------------------------------------------------
// Random spectra and scans

/// Kay spectrum with gaps 2u+1, u uniform in {0..4}. Adjacency spectra start
/// at a random odd integer (parity-normalized); Laplacian spectra start at 0;
/// adjacency_np spectra are mirrored about 0 (halves for even n).
inline Spectrum random_kay_spectrum(std::size_t n, SpectrumKind kind, CounterRng& rng) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "n >= 2 required");
  auto gap = [&rng] { return 2 * rng.uniform(0, 4) + 1; };
  std::vector<Rational> v;
  if (kind == SpectrumKind::AdjacencyNoPotentials) {
    std::vector<Rational> half;
    Rational b = (n % 2 == 0) ? ratio(gap(), 2) : Rational(0);
    half.push_back(b);
    while (half.size() < (n + 1) / 2) {
      b += gap();
      half.push_back(b);
    }
    for (auto it = half.rbegin(); it != half.rend(); ++it) {
      if (*it != 0) v.push_back(-*it);
    }
    for (const auto& x : half) v.push_back(x);
  } else {
    Rational x = kind == SpectrumKind::Laplacian ? Rational(0) : Rational(2 * rng.uniform(-5, 5) + 1);
    v.push_back(x);
    while (v.size() < n) {
      x += gap();
      v.push_back(x);
    }
  }
  return Spectrum::exact(std::move(v), kind);
}

/// Evaluates f(0..count-1) on up to `workers` threads; results keep index
/// order, so the output never depends on the worker count.
template <class R>
std::vector<R> parallel_map(std::size_t count, std::size_t workers, const std::function<R(std::size_t)>& f) {
  std::vector<R> out(count);
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) out[i] = f(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

struct RationalityScan {
  std::size_t n = 0;
  std::size_t count = 0;
  std::size_t certified = 0;
  std::size_t not_covered = 0;
  std::size_t counterexamples = 0;
  std::size_t all_rational = 0;  // reconstructions whose weights were all rational
  std::map<long, std::size_t> residue_histogram;
};

/// Draws `count` seeded normalized spectra of size n and certifies each; the
/// n = 4 case also reconstructs the chain and tests its weights.
inline RationalityScan scan_rationality(std::size_t n, std::size_t count, std::uint64_t seed, std::size_t workers = 1) {
  struct Item {
    RationalityStatus status = RationalityStatus::NotCovered;
    std::optional<long> residue;
    bool all_rational = false;
  };
  const auto items = parallel_map<Item>(count, workers, [n, seed](std::size_t i) {
    CounterRng rng(seed, i);
    const Spectrum s = random_kay_spectrum(n, SpectrumKind::Adjacency, rng);
    const auto outcome = rationality_certificate(s);
    Item it{outcome.status, outcome.residue, false};
    if (n == 4) it.all_rational = all_rational_check(reconstruct(s).hamiltonian);
    return it;
  });
  RationalityScan scan;
  scan.n = n;
  scan.count = count;
  for (const auto& it : items) {
    switch (it.status) {
      case RationalityStatus::Certified: ++scan.certified; break;
      case RationalityStatus::NotCovered: ++scan.not_covered; break;
      case RationalityStatus::Counterexample: ++scan.counterexamples; break;
    }
    if (it.residue) ++scan.residue_histogram[*it.residue];
    if (it.all_rational) ++scan.all_rational;
  }
  return scan;
}

struct FalsifierReport {
  std::size_t n = 0;
  long max_eig = 0;
  std::size_t spectra_tested = 0;
  std::size_t successes = 0;
  std::map<std::string, std::size_t> failures;  // error name -> count
};

/// Number of sequences 0 = a_1 < ... < a_n <= max_eig with odd gaps.
inline Integer count_laplacian_candidates(std::size_t n, long max_eig) {
  if (max_eig < 0) return 0;
  // ways[v] = sequences of the current length ending at v
  std::vector<Integer> ways(static_cast<std::size_t>(max_eig) + 1, 0);
  ways[0] = 1;
  for (std::size_t len = 1; len < n; ++len) {
    std::vector<Integer> next(ways.size(), 0);
    for (std::size_t v = 0; v < ways.size(); ++v) {
      if (ways[v] == 0) continue;
      for (std::size_t w = v + 1; w < ways.size(); w += 2) next[w] += ways[v];
    }
    ways = std::move(next);
  }
  Integer total = 0;
  for (const auto& x : ways) total += x;
  return total;
}

/// Tries to reconstruct a Laplacian PST chain for every candidate integer
/// spectrum up to max_eig and tallies how each attempt fails.
inline FalsifierReport laplacian_search_falsifier(std::size_t n, long max_eig, std::size_t budget = 10'000'000) {
  if (n < 3 || n > 8) throw Error(ErrorCode::PreconditionViolated, "falsifier covers 3 <= n <= 8");
  if (count_laplacian_candidates(n, max_eig) > Integer(static_cast<unsigned long>(budget))) {
    throw Error(ErrorCode::BudgetExceeded, "candidate count exceeds the enumeration budget");
  }
  FalsifierReport rep;
  rep.n = n;
  rep.max_eig = max_eig;
  std::vector<long> seq{0};
  std::function<void()> walk = [&] {
    if (seq.size() == n) {
      ++rep.spectra_tested;
      try {
        reconstruct(Spectrum::exact(seq, SpectrumKind::Laplacian));
        ++rep.successes;
      } catch (const Error& e) {
        ++rep.failures[std::string(e.name())];
      }
      return;
    }
    for (long next = seq.back() + 1; next <= max_eig; next += 2) {
      seq.push_back(next);
      walk();
      seq.pop_back();
    }
  };
  walk();
  return rep;
}

}  // namespace pstlab
