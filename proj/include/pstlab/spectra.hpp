#pragma once

// Target spectra and the necessary conditions an endpoint-PST spectrum must
// satisfy once the readout time has been scaled to pi.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pstlab/error.hpp"
#include "pstlab/rational.hpp"

namespace pstlab {

enum class SpectrumKind { Adjacency, AdjacencyNoPotentials, Laplacian };

inline std::string_view kind_name(SpectrumKind k) {
  switch (k) {
    case SpectrumKind::Adjacency: return "adjacency";
    case SpectrumKind::AdjacencyNoPotentials: return "adjacency_np";
    case SpectrumKind::Laplacian: return "laplacian";
  }
  return "adjacency";
}

inline SpectrumKind parse_spectrum_kind(std::string_view s) {
  if (s == "adjacency") return SpectrumKind::Adjacency;
  if (s == "adjacency_np") return SpectrumKind::AdjacencyNoPotentials;
  if (s == "laplacian") return SpectrumKind::Laplacian;
  throw Error(ErrorCode::ParseError, "unknown spectrum kind '" + std::string(s) + "'");
}

/// A positive time. When the time is a rational multiple of pi it is kept
/// exactly so that rescaling an exact spectrum stays exact.
class ReadoutTime {
 public:
  static ReadoutTime pi() { return pi_times(Rational(1)); }

  static ReadoutTime pi_times(const Rational& c) {
    if (c <= 0) throw Error(ErrorCode::InvalidArgument, "readout time must be positive");
    ReadoutTime t;
    t.pi_multiple_ = c;
    t.value_ = c.get_d() * std::numbers::pi;
    return t;
  }

  static ReadoutTime seconds(double value) {
    if (!(value > 0) || !std::isfinite(value)) {
      throw Error(ErrorCode::InvalidArgument, "readout time must be positive");
    }
    ReadoutTime t;
    t.value_ = value;
    return t;
  }

  double value() const { return value_; }
  const std::optional<Rational>& pi_multiple() const { return pi_multiple_; }
  bool is_pi() const { return pi_multiple_ && *pi_multiple_ == 1; }

  /// Time whose product with this one is pi^2 (the inverse rescaling).
  ReadoutTime pi_squared_over() const {
    if (pi_multiple_) return pi_times(1 / *pi_multiple_);
    return seconds(std::numbers::pi * std::numbers::pi / value_);
  }

 private:
  std::optional<Rational> pi_multiple_;
  double value_ = std::numbers::pi;
};

/// Accepts "pi", "2pi", "2*pi", "3/2*pi", "pi/2", "p/q" multiples written as
/// "pi*p/q", or a plain decimal.
inline ReadoutTime parse_time(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  const auto at = s.find("pi");
  if (at != std::string::npos) {
    std::string before = s.substr(0, at);
    std::string after = s.substr(at + 2);
    Rational c(1);
    if (!before.empty()) {
      if (before.back() == '*') before.pop_back();
      if (before == "-" || before.empty()) {
        throw Error(ErrorCode::ParseError, "bad time '" + std::string(text) + "'");
      }
      c *= parse_rational(before);
    }
    if (!after.empty()) {
      if (after[0] == '/') {
        c /= parse_rational(after.substr(1));
      } else if (after[0] == '*') {
        c *= parse_rational(after.substr(1));
      } else {
        throw Error(ErrorCode::ParseError, "bad time '" + std::string(text) + "'");
      }
    }
    return ReadoutTime::pi_times(c);
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw Error(ErrorCode::ParseError, "bad time '" + std::string(text) + "'");
    return ReadoutTime::seconds(v);
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::ParseError, "bad time '" + std::string(text) + "'");
  }
}

/// Strictly increasing list of distinct eigenvalues, either all exact
/// rationals or all floats.
class Spectrum {
 public:
  static Spectrum exact(std::vector<Rational> values, SpectrumKind kind,
                        ReadoutTime time = ReadoutTime::pi()) {
    Spectrum s;
    std::sort(values.begin(), values.end());
    s.exact_ = std::move(values);
    s.values_.reserve(s.exact_->size());
    for (const auto& v : *s.exact_) s.values_.push_back(v.get_d());
    s.kind_ = kind;
    s.time_ = time;
    s.check();
    return s;
  }

  static Spectrum exact(const std::vector<long>& values, SpectrumKind kind,
                        ReadoutTime time = ReadoutTime::pi()) {
    std::vector<Rational> q;
    q.reserve(values.size());
    for (long v : values) q.emplace_back(v);
    return exact(std::move(q), kind, time);
  }

  static Spectrum inexact(std::vector<double> values, SpectrumKind kind,
                          ReadoutTime time = ReadoutTime::pi()) {
    Spectrum s;
    std::sort(values.begin(), values.end());
    s.values_ = std::move(values);
    s.kind_ = kind;
    s.time_ = time;
    s.check();
    return s;
  }

  std::size_t size() const { return values_.size(); }
  bool is_exact() const { return exact_.has_value(); }
  SpectrumKind kind() const { return kind_; }
  const ReadoutTime& readout_time() const { return time_; }
  const std::vector<double>& values() const { return values_; }

  const std::vector<Rational>& exact_values() const {
    if (!exact_) throw Error(ErrorCode::InexactInput, "spectrum carries float values only");
    return *exact_;
  }

  Spectrum with_kind(SpectrumKind kind) const {
    Spectrum s = *this;
    s.kind_ = kind;
    s.check();
    return s;
  }

 private:
  Spectrum() = default;

  void check() const {
    const std::size_t n = values_.size();
    if (n < 2) throw Error(ErrorCode::InvalidSpectrum, "spectrum needs at least two values");
    for (std::size_t i = 1; i < n; ++i) {
      const bool dup = exact_ ? (*exact_)[i] == (*exact_)[i - 1] : values_[i] == values_[i - 1];
      if (dup) {
        throw Error(ErrorCode::NonDistinct, "repeated eigenvalue", static_cast<int>(i + 1));
      }
      if (!std::isfinite(values_[i])) throw Error(ErrorCode::InvalidSpectrum, "non-finite eigenvalue");
    }
    constexpr double tol = 1e-9;
    if (kind_ == SpectrumKind::AdjacencyNoPotentials) {
      for (std::size_t i = 0; i < n; ++i) {
        const bool sym = exact_ ? (*exact_)[i] == -(*exact_)[n - 1 - i]
                                : std::abs(values_[i] + values_[n - 1 - i]) <= tol;
        if (!sym) {
          throw Error(ErrorCode::InvalidSpectrum, "adjacency_np spectrum must be symmetric about 0");
        }
      }
    }
    if (kind_ == SpectrumKind::Laplacian) {
      const bool zero = exact_ ? (*exact_)[0] == 0 : std::abs(values_[0]) <= tol;
      if (!zero) throw Error(ErrorCode::InvalidSpectrum, "laplacian spectrum must start at 0");
    }
  }

  std::vector<double> values_;
  std::optional<std::vector<Rational>> exact_;
  SpectrumKind kind_ = SpectrumKind::Adjacency;
  ReadoutTime time_;
};

/// Multiplies every eigenvalue by t0/pi; the result is read out at time pi.
/// Exact spectra stay exact when t0 is a rational multiple of pi.
inline Spectrum rescale_to_pi(const Spectrum& s, const ReadoutTime& t0) {
  if (s.is_exact() && t0.pi_multiple()) {
    std::vector<Rational> v = s.exact_values();
    for (auto& x : v) x *= *t0.pi_multiple();
    return Spectrum::exact(std::move(v), s.kind());
  }
  std::vector<double> v = s.values();
  const double factor = t0.value() / std::numbers::pi;
  for (auto& x : v) x *= factor;
  if (s.kind() == SpectrumKind::AdjacencyNoPotentials) {
    // keep the mirror symmetry bit-exact
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n / 2; ++i) v[n - 1 - i] = -v[i];
    if (n % 2 == 1) v[n / 2] = 0.0;
  }
  if (s.kind() == SpectrumKind::Laplacian) v[0] = 0.0;
  return Spectrum::inexact(std::move(v), s.kind());
}

/// Rescales by the spectrum's own readout time.
inline Spectrum rescale_to_pi(const Spectrum& s) { return rescale_to_pi(s, s.readout_time()); }

struct KayWitness {
  std::vector<double> gaps;                       // scaled to readout time pi
  std::optional<std::vector<Rational>> exact_gaps;
  std::optional<std::vector<long>> m_values;      // gap_r = 2 m_r + 1
  double scaled_time = std::numbers::pi;
};

/// Checks that every consecutive gap, after scaling the readout time to pi,
/// is an odd positive integer. Exact when possible, else integrality within
/// 1e-9.
inline KayWitness validate_kay(const Spectrum& s) {
  const Spectrum scaled = rescale_to_pi(s);
  const std::size_t n = scaled.size();
  KayWitness w;
  std::vector<long> m;
  if (scaled.is_exact()) {
    const auto& v = scaled.exact_values();
    std::vector<Rational> gaps;
    for (std::size_t i = 1; i < n; ++i) {
      Rational g = v[i] - v[i - 1];
      w.gaps.push_back(g.get_d());
      if (g <= 0) throw Error(ErrorCode::NonDistinct, "eigenvalues not distinct", static_cast<int>(i));
      if (!is_integer(g) || !is_odd(g.get_num())) {
        throw Error(ErrorCode::GapNotOddInteger,
                    "gap " + std::to_string(i) + " is " + to_string(g) + ", not an odd integer",
                    static_cast<int>(i));
      }
      m.push_back(Integer(g.get_num() - 1).get_si() / 2);
      gaps.push_back(std::move(g));
    }
    w.exact_gaps = std::move(gaps);
  } else {
    constexpr double tol = 1e-9;
    const auto& v = scaled.values();
    for (std::size_t i = 1; i < n; ++i) {
      const double g = v[i] - v[i - 1];
      w.gaps.push_back(g);
      if (!(g > 0)) throw Error(ErrorCode::NonDistinct, "eigenvalues not distinct", static_cast<int>(i));
      const double k = std::round(g);
      const bool odd = std::fmod(std::abs(k), 2.0) == 1.0;
      if (std::abs(g - k) > tol || !odd) {
        throw Error(ErrorCode::GapNotOddInteger,
                    "gap " + std::to_string(i) + " is " + std::to_string(g) + ", not an odd integer",
                    static_cast<int>(i));
      }
      m.push_back(static_cast<long>((k - 1) / 2));
    }
  }
  w.m_values = std::move(m);
  return w;
}

/// Shifts an exact Kay spectrum (read out at pi) so the odd-indexed
/// eigenvalues are odd integers and the even-indexed ones even. Laplacian
/// spectra are never shifted: they must already start at 0.
inline std::pair<Spectrum, Rational> normalize_parity(const Spectrum& s) {
  if (!s.is_exact()) throw Error(ErrorCode::NotIntegerizable, "float spectrum cannot be normalized exactly");
  const Spectrum scaled = rescale_to_pi(s);
  try {
    validate_kay(scaled);
  } catch (const Error& e) {
    throw Error(ErrorCode::NotIntegerizable, std::string("no integer shift: ") + e.what(), e.index());
  }
  const auto& v = scaled.exact_values();
  if (s.kind() == SpectrumKind::Laplacian) {
    // validate_kay + alpha_1 = 0 already force alternating even/odd integers
    return {scaled, Rational(0)};
  }
  Rational shift = Rational(floor(v[0])) - v[0];
  if (!is_odd(floor(v[0]))) shift += 1;
  if (shift == 0) return {scaled, shift};
  std::vector<Rational> out = v;
  for (auto& x : out) x += shift;
  const SpectrumKind kind =
      s.kind() == SpectrumKind::AdjacencyNoPotentials ? SpectrumKind::Adjacency : s.kind();
  return {Spectrum::exact(std::move(out), kind), shift};
}

struct BipartitePattern {
  std::vector<Rational> beta;  // nonnegative half of the spectrum, ascending
  std::vector<int> classes;    // (2 beta) mod 4
};

/// Residue pattern of the nonnegative eigenvalues of a loop-free weighted
/// path, measured in units of 1/2 after scaling to readout time pi. Even n
/// must alternate 1,3 (mod 4); odd n alternates 0,2 (mod 4) starting at 0.
inline BipartitePattern classify_bipartite_pattern(const Spectrum& s) {
  if (s.kind() != SpectrumKind::AdjacencyNoPotentials) {
    throw Error(ErrorCode::PreconditionViolated, "pattern applies to adjacency_np spectra only");
  }
  if (!s.is_exact()) throw Error(ErrorCode::InexactInput, "pattern classification needs exact values");
  const Spectrum scaled = rescale_to_pi(s);
  const auto& v = scaled.exact_values();
  const std::size_t n = v.size();
  BipartitePattern p;
  for (std::size_t i = n / 2; i < n; ++i) p.beta.push_back(v[i]);
  for (std::size_t i = 0; i < p.beta.size(); ++i) {
    const int index = static_cast<int>(i + 1);
    const Rational twice = 2 * p.beta[i];
    if (!is_integer(twice)) {
      throw Error(ErrorCode::PatternViolation, "beta is not a multiple of 1/2", index);
    }
    const int cls = static_cast<int>(mod(twice.get_num(), 4).get_si());
    p.classes.push_back(cls);
    const bool allowed = (n % 2 == 0) ? (cls == 1 || cls == 3) : (cls == 0 || cls == 2);
    if (!allowed) throw Error(ErrorCode::PatternViolation, "residue class not allowed", index);
    if (i > 0 && p.classes[i - 1] == cls) {
      throw Error(ErrorCode::PatternViolation, "residue classes do not alternate", index);
    }
  }
  return p;
}

}  // namespace pstlab
