#pragma once

// Exact rational scalars backed by GMP, plus the small amount of number
// theory the certificates need.

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "pstlab/error.hpp"

namespace pstlab {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q" (no whitespace inside). Returns nullopt for
/// anything else, including decimals.
inline std::optional<Rational> try_parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) return std::nullopt;
  const auto slash = s.find('/');
  auto is_int = [](std::string_view t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    }
    return true;
  };
  auto strip_plus = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return t;
  };
  if (slash == std::string::npos) {
    if (!is_int(s)) return std::nullopt;
    return Rational(Integer(strip_plus(s)));
  }
  const std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  if (!is_int(num) || !is_int(den)) return std::nullopt;
  Integer d(strip_plus(den));
  if (d == 0) return std::nullopt;
  Rational q(Integer(strip_plus(num)), d);
  q.canonicalize();
  return q;
}

inline Rational parse_rational(std::string_view text) {
  auto q = try_parse_rational(text);
  if (!q) throw Error(ErrorCode::ParseError, "not a rational: '" + std::string(text) + "'");
  return *q;
}

/// Canonical "p/q" form; integers print without a denominator.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Nonnegative residue of z modulo m (m > 0).
inline Integer mod(const Integer& z, unsigned long m) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), m);
  return r;
}

inline bool is_odd(const Integer& z) { return mpz_odd_p(z.get_mpz_t()) != 0; }

inline bool is_perfect_square(const Integer& z) {
  return z >= 0 && mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

/// True iff q = s^2 for some rational s. With q in lowest terms this holds
/// exactly when numerator and denominator are both perfect squares.
inline bool is_rational_square(const Rational& q) {
  if (q < 0) return false;
  return is_perfect_square(q.get_num()) && is_perfect_square(q.get_den());
}

inline Integer pow2(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

/// p/q in lowest terms.
inline Rational ratio(long p, long q) {
  Rational r{Integer(p), Integer(q)};
  r.canonicalize();
  return r;
}

/// Largest integer not exceeding q.
inline Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace pstlab
