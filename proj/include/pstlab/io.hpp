#pragma once

// JSON and text formats shared by the CLI and the tests. Object keys come
// out sorted (nlohmann::json's default map), rationals as "p/q" strings.

#include <json.hpp>

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pstlab/dynamics.hpp"
#include "pstlab/error.hpp"
#include "pstlab/hamiltonian.hpp"
#include "pstlab/rational.hpp"
#include "pstlab/spectra.hpp"
#include "pstlab/synthesis.hpp"

namespace pstlab::io {

using json = nlohmann::json;

/// A scalar read from JSON or the command line: exact when it was an integer
/// or a "p/q" string, float otherwise.
struct Scalar {
  std::optional<Rational> exact;
  double value = 0.0;
};

inline Scalar parse_scalar(std::string_view text) {
  if (auto q = try_parse_rational(text)) return {q, q->get_d()};
  std::string s(text);
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
    if (used == s.size() && std::isfinite(v)) return {std::nullopt, v};
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorCode::ParseError, "not a number: '" + s + "'");
}

inline Scalar scalar_from_json(const json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) {
    const auto v = j.get<long long>();
    return {Rational(Integer(std::to_string(v))), static_cast<double>(v)};
  }
  if (j.is_number()) return {std::nullopt, j.get<double>()};
  throw Error(ErrorCode::ParseError, "expected a number or rational string");
}

inline std::vector<Scalar> scalars_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected an array");
  std::vector<Scalar> out;
  for (const auto& x : j) out.push_back(scalar_from_json(x));
  return out;
}

inline std::vector<Scalar> parse_scalar_list(std::string_view text) {
  std::vector<Scalar> out;
  std::string item;
  std::stringstream ss{std::string(text)};
  while (std::getline(ss, item, ',')) out.push_back(parse_scalar(item));
  if (out.empty()) throw Error(ErrorCode::ParseError, "empty list");
  return out;
}

inline bool all_exact(const std::vector<Scalar>& v) {
  for (const auto& x : v)
    if (!x.exact) return false;
  return true;
}

inline std::vector<Rational> exact_of(const std::vector<Scalar>& v) {
  std::vector<Rational> out;
  for (const auto& x : v) out.push_back(*x.exact);
  return out;
}

inline std::vector<double> values_of(const std::vector<Scalar>& v) {
  std::vector<double> out;
  for (const auto& x : v) out.push_back(x.value);
  return out;
}

inline json rational_array(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline std::string time_to_string(const ReadoutTime& t) {
  if (!t.pi_multiple()) return format_g17(t.value());
  const Rational& c = *t.pi_multiple();
  if (c == 1) return "pi";
  if (c.get_num() == 1) return "pi/" + c.get_den().get_str();
  return to_string(c) + "*pi";
}

// ---------------------------------------------------------------------------
// Spectrum

/// Mixed exact/float lists are rejected.
inline Spectrum make_spectrum(const std::vector<Scalar>& values, SpectrumKind kind, const ReadoutTime& time) {
  if (all_exact(values)) return Spectrum::exact(exact_of(values), kind, time);
  for (const auto& x : values) {
    if (x.exact) throw Error(ErrorCode::MixedExactness, "spectrum mixes exact and float values");
  }
  return Spectrum::inexact(values_of(values), kind, time);
}

inline Spectrum spectrum_from_json(const json& j) {
  if (!j.is_object() || !j.contains("values")) throw Error(ErrorCode::ParseError, "spectrum needs \"values\"");
  const SpectrumKind kind = parse_spectrum_kind(j.value("kind", std::string("adjacency")));
  ReadoutTime time = ReadoutTime::pi();
  if (j.contains("readout_time")) {
    const auto& t = j["readout_time"];
    time = t.is_string() ? parse_time(t.get<std::string>()) : ReadoutTime::seconds(t.get<double>());
  }
  return make_spectrum(scalars_from_json(j["values"]), kind, time);
}

inline json to_json(const Spectrum& s) {
  json j;
  j["kind"] = std::string(kind_name(s.kind()));
  j["readout_time"] = time_to_string(s.readout_time());
  if (s.is_exact()) {
    j["values"] = rational_array(s.exact_values());
  } else {
    j["values"] = s.values();
  }
  return j;
}

// ---------------------------------------------------------------------------
// Hamiltonian

/// Also accepts a synthesis report, reading its "hamiltonian" member.
inline PathHamiltonian hamiltonian_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "hamiltonian must be an object");
  if (j.contains("hamiltonian") && !j.contains("r")) return hamiltonian_from_json(j["hamiltonian"]);
  const HamiltonianKind kind = parse_hamiltonian_kind(j.value("kind", std::string("adjacency")));
  std::optional<std::vector<Scalar>> r_sq;
  if (j.contains("r_squared_exact")) {
    r_sq = scalars_from_json(j["r_squared_exact"]);
    if (!all_exact(*r_sq)) throw Error(ErrorCode::ParseError, "r_squared_exact must hold rationals");
  }
  std::vector<Scalar> r;
  if (j.contains("r")) {
    r = scalars_from_json(j["r"]);
  } else if (r_sq) {
    for (const auto& w : *r_sq) r.push_back({std::nullopt, std::sqrt(w.value)});
  } else {
    throw Error(ErrorCode::ParseError, "hamiltonian needs \"r\" or \"r_squared_exact\"");
  }
  // exact r gives exact r^2 for free
  if (!r_sq && all_exact(r)) {
    std::vector<Scalar> sq;
    for (const auto& x : r) sq.push_back({Rational(*x.exact * *x.exact), x.value * x.value});
    r_sq = std::move(sq);
  }

  std::optional<PathHamiltonian> h;
  std::vector<Scalar> q;
  if (j.contains("q")) q = scalars_from_json(j["q"]);
  if (kind == HamiltonianKind::Laplacian) {
    h = PathHamiltonian::laplacian(values_of(r));
    if (!q.empty()) {
      if (q.size() != h->size()) throw Error(ErrorCode::InvalidHamiltonian, "q length mismatch");
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (std::abs(q[i].value - h->q()[i]) > 1e-9 * std::max(1.0, std::abs(h->q()[i]))) {
          throw Error(ErrorCode::LaplacianStructureViolated, "q does not match the Laplacian row sums",
                      static_cast<int>(i + 1));
        }
      }
    }
  } else {
    if (q.empty()) q.assign(r.size() + 1, Scalar{Rational(0), 0.0});
    h = PathHamiltonian::adjacency(values_of(q), values_of(r));
  }
  if (r_sq) h = h->with_exact_r_sq(exact_of(*r_sq));
  if (j.contains("q_exact")) {
    const auto qe = scalars_from_json(j["q_exact"]);
    if (!all_exact(qe)) throw Error(ErrorCode::ParseError, "q_exact must hold rationals");
    for (std::size_t i = 0; i < qe.size() && i < h->size(); ++i) {
      if (std::abs(qe[i].value - h->q()[i]) > 1e-9 * std::max(1.0, std::abs(qe[i].value))) {
        throw Error(ErrorCode::InvalidHamiltonian, "q_exact disagrees with q", static_cast<int>(i + 1));
      }
    }
    h = h->with_exact_q(exact_of(qe));
  } else if (!q.empty() && all_exact(q)) {
    h = h->with_exact_q(exact_of(q));
  }
  return *h;
}

inline json to_json(const PathHamiltonian& h) {
  json j;
  j["kind"] = std::string(kind_name(h.kind()));
  j["q"] = h.q();
  j["r"] = h.r();
  if (h.r_sq_exact()) j["r_squared_exact"] = rational_array(*h.r_sq_exact());
  if (h.q_exact()) j["q_exact"] = rational_array(*h.q_exact());
  return j;
}

// ---------------------------------------------------------------------------
// Symmetric trees

inline SymmetricTree tree_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "tree must be an object");
  SymmetricTree t;
  std::size_t max_vertex = j.value("attach", std::size_t{0});
  if (j.contains("edges")) {
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 3) throw Error(ErrorCode::ParseError, "edge must be [u, v, w]");
      WeightedEdge we;
      we.u = e[0].get<std::size_t>();
      we.v = e[1].get<std::size_t>();
      const Scalar w = scalar_from_json(e[2]);
      if (!w.exact) throw Error(ErrorCode::ParseError, "tree weights must be rational");
      we.weight = *w.exact;
      max_vertex = std::max({max_vertex, we.u, we.v});
      t.edges.push_back(std::move(we));
    }
  }
  t.half_size = j.value("vertices", max_vertex + 1);
  t.attach = j.value("attach", std::size_t{0});
  t.center = j.value("center", false);
  const Scalar bw = scalar_from_json(j.value("bridge_weight", json("1")));
  if (!bw.exact) throw Error(ErrorCode::ParseError, "bridge weight must be rational");
  t.bridge_weight = *bw.exact;
  return t;
}

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const Certificate& c) {
  json j;
  j["claim"] = std::string(claim_name(c.claim));
  j["n"] = c.n;
  j["reason"] = std::string(reason_name(c.reason));
  j["witness"] = rational_array(c.witness);
  return j;
}

inline json to_json(const MiddleEntries& m) {
  json j;
  j["S1"] = to_string(m.s1);
  j["S2"] = to_string(m.s2);
  j["r_index"] = m.r_index;
  j["middle_r_squared"] = to_string(m.middle_r_sq);
  j["q_index"] = m.q_index;
  if (m.middle_q) j["middle_q"] = to_string(*m.middle_q);
  if (m.laplacian_neighbor_r) j["laplacian_neighbor_r"] = to_string(*m.laplacian_neighbor_r);
  return j;
}

inline json to_json(const SynthesisReport& rep) {
  json j;
  j["hamiltonian"] = to_json(rep.hamiltonian);
  j["spectrum"] = rational_array(rep.eigenvalues);
  j["kind"] = std::string(kind_name(rep.spectrum_kind));
  j["r_squared_exact"] = rational_array(rep.r_sq_exact);
  j["q_exact"] = rational_array(rep.q_exact);
  j["pst_time"] = time_to_string(ReadoutTime::pi_times(rep.pst_time_pi_multiple));
  j["polynomials"] = {{"p_n", coefficient_strings(rep.p_n)}, {"p_n_minus_1", coefficient_strings(rep.p_n_minus_1)}};
  json mc;
  mc["expected"] = to_json(rep.middle_check.expected);
  mc["reconstructed_r_squared"] = to_string(rep.middle_check.reconstructed_r_sq);
  mc["reconstructed_q"] = to_string(rep.middle_check.reconstructed_q);
  mc["matches"] = rep.middle_check.matches;
  j["middle_check"] = mc;
  j["spectrum_residual"] = rep.spectrum_residual;
  return j;
}

inline json to_json(const FidelityResult& f) {
  json j;
  j["pair"] = {f.j, f.k};
  j["time"] = f.time;
  j["fidelity"] = f.fidelity;
  if (f.phase) j["phase"] = {f.phase->real(), f.phase->imag()};
  return j;
}

inline json to_json(const FalsifierReport& r) {
  json j;
  j["n"] = r.n;
  j["max_eig"] = r.max_eig;
  j["spectra_tested"] = r.spectra_tested;
  j["successes"] = r.successes;
  j["failures"] = r.failures;
  return j;
}

inline json to_json(const RationalityScan& s) {
  json j;
  j["n"] = s.n;
  j["count"] = s.count;
  j["certified"] = s.certified;
  j["not_covered"] = s.not_covered;
  j["counterexamples"] = s.counterexamples;
  if (s.n == 4) j["all_rational_reconstructions"] = s.all_rational;
  json hist = json::object();
  for (const auto& [res, cnt] : s.residue_histogram) hist[std::to_string(res)] = cnt;
  j["residue_histogram"] = hist;
  return j;
}

inline json error_json(const Error& e) {
  json j;
  j["error"] = std::string(e.name());
  j["message"] = e.what();
  if (e.index() >= 0) j["index"] = e.index();
  return j;
}

}  // namespace pstlab::io
