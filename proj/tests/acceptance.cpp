// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Expected values are computed here from the closed-form
// expressions or by routes independent of the code under test.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "pstlab/pstlab.hpp"

using namespace pstlab;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// records the first failure message, keeps going
struct Tally {
  bool pass = true;
  std::string first;
  std::size_t checks = 0;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && pass) first = what;
    pass = pass && ok;
  }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Rational q(const char* s) { return parse_rational(s); }

std::vector<Rational> qs(std::initializer_list<const char*> xs) {
  std::vector<Rational> out;
  for (const char* x : xs) out.push_back(q(x));
  return out;
}

// (-1)^{r+n} sums, written out independently of the library
std::pair<Rational, Rational> alt_sums(const std::vector<Rational>& a) {
  const std::size_t n = a.size();
  Rational s1, s2;
  for (std::size_t r = 1; r <= n; ++r) {
    const int sign = (r + n) % 2 == 0 ? 1 : -1;
    s1 += sign * a[r - 1];
    s2 += sign * a[r - 1] * a[r - 1];
  }
  return {s1, s2};
}

bool is_square_q(const Rational& x) {
  return x >= 0 && mpz_perfect_square_p(x.get_num_mpz_t()) && mpz_perfect_square_p(x.get_den_mpz_t());
}

// expected chain for a small spectrum: r^2 and q lists built from the
// displayed closed forms
struct Expected {
  std::vector<Rational> q;
  std::vector<Rational> r_sq;
};

void compare_chain(Tally& t, const std::string& label, const PathHamiltonian& h, const Expected& e) {
  t.expect(h.r_sq_exact() && *h.r_sq_exact() == e.r_sq, label + ": r^2 differs");
  t.expect(h.q_exact() && *h.q_exact() == e.q, label + ": q differs");
  for (std::size_t j = 0; j < e.r_sq.size(); ++j) {
    const double want = std::sqrt(e.r_sq[j].get_d());
    t.expect(std::abs(h.r()[j] - want) <= 1e-12, label + ": r after sqrt off by " + fmt(std::abs(h.r()[j] - want)));
  }
}

void check_both_routes(Tally& t, const std::string& label, const Spectrum& s, const Expected& e) {
  compare_chain(t, label + " closed form", closed_form_small_n(s), e);
  const auto rep = reconstruct(s);
  compare_chain(t, label + " reconstruct", rep.hamiltonian, e);
}

Outcome criterion1() {
  Tally t;
  // n = 2: r1 = (a2 - a1)/2, q1 = (a2 + a1)/2
  for (auto a : {qs({"-1", "1"}), qs({"1", "2"}), qs({"-3", "4"}), qs({"0", "5"})}) {
    const Rational r1 = (a[1] - a[0]) / 2, q1 = (a[1] + a[0]) / 2;
    check_both_routes(t, "n=2", Spectrum::exact(a, SpectrumKind::Adjacency), {{q1, q1}, {r1 * r1}});
  }
  // n = 2 Laplacian: (1/2)[[a2, -a2], [-a2, a2]]
  for (auto a : {qs({"0", "1"}), qs({"0", "3"})}) {
    const Rational h = a[1] / 2;
    check_both_routes(t, "n=2 laplacian", Spectrum::exact(a, SpectrumKind::Laplacian), {{h, h}, {h * h}});
  }
  // n = 3: r1 = sqrt(-2a2^2 + 2a1a2 - 2a1a3 + 2a2a3)/2, q1 = a2, q2 = a1 - a2 + a3
  for (auto a : {qs({"-1", "0", "1"}), qs({"-2", "-1", "2"}), qs({"1", "2", "5"}), qs({"-5/2", "1/2", "3/2"})}) {
    const Rational rad = -2 * a[1] * a[1] + 2 * a[0] * a[1] - 2 * a[0] * a[2] + 2 * a[1] * a[2];
    const Rational r_sq = rad / 4;
    check_both_routes(t, "n=3", Spectrum::exact(a, SpectrumKind::Adjacency),
                      {{a[1], a[0] - a[1] + a[2], a[1]}, {r_sq, r_sq}});
  }
  // three vertices, no potentials: spectrum {-b, 0, b}, weights b/sqrt2
  for (const char* b : {"1", "2", "7/3"}) {
    const Rational beta = q(b);
    const auto s = Spectrum::exact({-beta, Rational(0), beta}, SpectrumKind::AdjacencyNoPotentials);
    const Rational w = beta * beta / 2;
    check_both_routes(t, std::string("n=3 no potentials b=") + b, s, {{0, 0, 0}, {w, w}});
    const auto h = reconstruct(s).hamiltonian;
    for (double r : h.r()) t.expect(std::abs(r - beta.get_d() / std::sqrt(2.0)) <= 1e-12, "n=3 weight");
  }
  // n = 4 no potentials: r2 = b2 - b1, r1 = sqrt(b1 b2)
  for (auto b : {qs({"1/2", "3/2"}), qs({"3/2", "5/2"}), qs({"1/2", "7/2"}), qs({"5/2", "7/2"})}) {
    const auto s = Spectrum::exact({-b[1], -b[0], b[0], b[1]}, SpectrumKind::AdjacencyNoPotentials);
    const Rational r2 = b[1] - b[0];
    check_both_routes(t, "n=4", s, {{0, 0, 0, 0}, {b[0] * b[1], r2 * r2, b[0] * b[1]}});
  }
  // n = 5 no potentials: r1 = b1, r2 = sqrt((b2^2 - b1^2)/2)
  for (auto b : {qs({"2", "4"}), qs({"1", "2"}), qs({"1", "4"}), qs({"3", "4"})}) {
    const auto s = Spectrum::exact({-b[1], -b[0], Rational(0), b[0], b[1]}, SpectrumKind::AdjacencyNoPotentials);
    const Rational r2 = (b[1] * b[1] - b[0] * b[0]) / 2;
    check_both_routes(t, "n=5", s, {{0, 0, 0, 0, 0}, {b[0] * b[0], r2, r2, b[0] * b[0]}});
  }
  return {t.pass, t.pass ? std::to_string(t.checks) + " checks" : t.first};
}

Outcome criterion2() {
  Tally t;
  double worst_fid = 1.0, worst_eig = 0.0;
  for (std::size_t n = 2; n <= 16; ++n) {
    std::vector<double> r(n - 1);
    for (std::size_t j = 1; j < n; ++j) r[j - 1] = std::sqrt(static_cast<double>(j * (n - j)));
    const auto h = PathHamiltonian::adjacency(std::vector<double>(n, 0.0), r);
    const auto v = verify_pst(h, 1, n, kPi / 2);
    worst_fid = std::min(worst_fid, v.result.fidelity);
    t.expect(v.pst && v.result.fidelity >= 1 - 1e-9, "n=" + std::to_string(n) + " fidelity " + fmt(v.result.fidelity));
    const auto es = eigensystem(h);
    for (std::size_t i = 0; i < n; ++i) {
      const double want = -static_cast<double>(n - 1) + 2.0 * static_cast<double>(i);
      worst_eig = std::max(worst_eig, std::abs(es.values[i] - want));
    }
  }
  t.expect(worst_eig <= 1e-10, "eigenvalue error " + fmt(worst_eig));
  return {t.pass, "min fidelity " + fmt(worst_fid) + ", max eigenvalue error " + fmt(worst_eig) +
                      (t.pass ? "" : "; " + t.first)};
}

Outcome criterion3() {
  Tally t;
  double worst = 0.0;
  std::size_t total = 0;
  for (std::size_t n = 2; n <= 12; ++n) {
    for (std::uint64_t i = 0; i < 100; ++i) {
      CounterRng rng(0xacce97 + n, i);
      const SpectrumKind kind = i % 2 == 0 ? SpectrumKind::Adjacency : SpectrumKind::AdjacencyNoPotentials;
      const Spectrum s = random_kay_spectrum(n, kind, rng);
      const std::string label = "n=" + std::to_string(n) + " #" + std::to_string(i);
      validate_kay(s);
      const auto rep = reconstruct(s);
      ++total;
      // eigenvalues by Sturm bisection, not the library solver
      const auto eig = oracle::tridiagonal_eigenvalues(rep.hamiltonian.q(), rep.hamiltonian.r());
      const auto lib = eigensystem(rep.hamiltonian).values;
      for (std::size_t r = 0; r < n; ++r) {
        const double want = s.values()[r];
        worst = std::max({worst, std::abs(eig[r] - want), std::abs(lib[r] - want)});
      }
      const auto& qe = rep.q_exact;
      const auto& we = rep.r_sq_exact;
      bool mirror = true;
      for (std::size_t j = 0; j < n; ++j) mirror = mirror && qe[j] == qe[n - 1 - j];
      for (std::size_t j = 0; j + 1 < n; ++j) mirror = mirror && we[j] == we[n - 2 - j];
      t.expect(mirror, label + ": not persymmetric");
      const auto [s1, s2] = alt_sums(s.exact_values());
      if (n % 2 == 0) {
        t.expect(we[n / 2 - 1] == (s1 / 2) * (s1 / 2), label + ": middle r^2");
        t.expect(qe[n / 2 - 1] == s2 / (2 * s1), label + ": middle q");
      } else {
        t.expect(we[(n - 1) / 2 - 1] == (s2 - s1 * s1) / 4, label + ": middle r^2");
        t.expect(qe[(n - 1) / 2] == s1, label + ": middle q");
      }
    }
  }
  t.expect(worst <= 1e-10, "spectrum error " + fmt(worst));
  return {t.pass, std::to_string(total) + " spectra, max eigenvalue error " + fmt(worst) + (t.pass ? "" : "; " + t.first)};
}

SymmetricTree random_tree(CounterRng& rng) {
  SymmetricTree tree;
  tree.center = rng.uniform(0, 1) == 1;
  // the even type with one vertex is P2, which does have Laplacian PST
  tree.half_size = static_cast<std::size_t>(rng.uniform(tree.center ? 1 : 2, 5));
  for (std::size_t v = 1; v < tree.half_size; ++v) {
    const auto parent = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(v) - 1));
    tree.edges.push_back({parent, v, ratio(rng.uniform(1, 6), rng.uniform(1, 2))});
  }
  tree.bridge_weight = ratio(rng.uniform(1, 6), rng.uniform(1, 2));
  tree.attach = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(tree.half_size) - 1));
  return tree;
}

Outcome criterion4() {
  Tally t;
  for (std::size_t n = 3; n <= 20; ++n) {
    const auto c = laplacian_infeasibility(n);
    t.expect(check_certificate(c), "certificate n=" + std::to_string(n));
    // the even divisibility fact, re-derived: 2^{n/2-1} never divides n/2 for n >= 6
    if (n % 2 == 0 && n >= 6) t.expect((n / 2) % (std::size_t{1} << (n / 2 - 1)) != 0, "divisibility");
  }
  std::size_t tested = 0;
  for (std::size_t n = 3; n <= 6; ++n) {
    const auto rep = laplacian_search_falsifier(n, 15);
    tested += rep.spectra_tested;
    t.expect(rep.successes == 0, "falsifier found a chain for n=" + std::to_string(n));
  }
  double worst = 0.0;
  std::size_t hypothesis = 0;
  std::string over;
  for (std::uint64_t i = 0; i < 20; ++i) {
    CounterRng rng(0x7ee5, i);
    const SymmetricTree shape = random_tree(rng);
    const auto tree = build_symmetric_tree(shape);
    t.expect(is_persymmetric(tree.laplacian), "tree not persymmetric");
    const auto scan = scan_tree_mirror_pairs(tree, 8 * kPi, 10000);
    worst = std::max(worst, scan.max_mirror_fidelity);
    if (scan.hypothesis_holds) ++hypothesis;
    const bool ok = scan.max_mirror_fidelity <= 1 - 1e-3;
    t.expect(ok, "tree fidelity above 1 - 1e-3");
    if (!ok) {
      // a half tree that is a path attached at an end makes the whole tree a path
      const bool path = shape.edges.size() + 1 == shape.half_size && shape.half_size <= 2;
      over += " #" + std::to_string(i) + " (" + std::to_string(scan.vertices) + " vertices" + (path ? ", a path" : "") +
              ") " + fmt(scan.max_mirror_fidelity) + ";";
    }
  }
  return {t.pass, std::to_string(tested) + " candidate spectra, 0 feasible; tree max fidelity " + fmt(worst) + " (" +
                      std::to_string(hypothesis) + "/20 meet the eigenvector hypothesis)" +
                      (over.empty() ? "" : "; above 1 - 1e-3:" + over)};
}

Outcome criterion5() {
  Tally t;
  constexpr std::uint64_t seed = 2024;
  const auto scan = scan_rationality(4, 1000, seed, 4);
  t.expect(scan.certified == 1000 && scan.counterexamples == 0, "n=4 scan not fully certified");
  t.expect(scan.all_rational == 0, "n=4 reconstruction with all rational weights");
  for (std::uint64_t i = 0; i < 1000; ++i) {
    CounterRng rng(seed, i);
    const Spectrum s = random_kay_spectrum(4, SpectrumKind::Adjacency, rng);
    const auto& a = s.exact_values();
    const auto [s1, s2] = alt_sums(a);
    const Rational big = ((a[1] * a[3] - a[0] * a[2]) * s2 - (a[1] * a[3] + a[0] * a[2]) * s1 * s1) / 2;
    t.expect(is_integer(big), "N not an integer");
    const long res = mod(big.get_num(), 8).get_si();
    t.expect(res == 3 || res == 7, "N mod 8 = " + std::to_string(res));
    const auto rep = reconstruct(s);
    t.expect(rep.r_sq_exact[0] * s1 * s1 == big, "r1^2 S1^2 != N");
    bool all_sq = true;
    for (const auto& w : rep.r_sq_exact) all_sq = all_sq && is_square_q(w);
    t.expect(!all_sq && !all_rational_check(rep.hamiltonian), "all weights rational");
  }
  std::size_t odd_cases = 0;
  for (std::size_t n : {5, 11, 13, 21}) {
    const auto odd_scan = scan_rationality(n, 250, seed, 4);
    t.expect(odd_scan.certified == 250, "n=" + std::to_string(n) + " not fully certified");
    for (std::uint64_t i = 0; i < 250; ++i) {
      CounterRng rng(seed, i);
      const Spectrum s = random_kay_spectrum(n, SpectrumKind::Adjacency, rng);
      const auto [s1, s2] = alt_sums(s.exact_values());
      const Rational d = s2 - s1 * s1;
      t.expect(is_integer(d) && mod(d.get_num(), 4) == 2, "n=" + std::to_string(n) + " S2-S1^2 not 2 mod 4");
      ++odd_cases;
    }
  }
  return {t.pass, "1000 n=4 spectra, " + std::to_string(odd_cases) + " odd-n spectra" + (t.pass ? "" : "; " + t.first)};
}

PathHamiltonian random_persymmetric(CounterRng& rng, bool laplacian) {
  const auto n = static_cast<std::size_t>(rng.uniform(2, 12));
  std::vector<double> r(n - 1), qv(n);
  for (std::size_t j = 0; j < (n - 1 + 1) / 2; ++j) r[j] = r[n - 2 - j] = 0.2 + 2.8 * rng.unit();
  if (laplacian) return PathHamiltonian::laplacian(r);
  for (std::size_t j = 0; j < (n + 1) / 2; ++j) qv[j] = qv[n - 1 - j] = -2 + 4 * rng.unit();
  return PathHamiltonian::adjacency(qv, r);
}

Outcome criterion6() {
  Tally t;
  constexpr std::size_t kInstances = 250;
  double unit_err = 0, sym_err = 0, expm_err = 0, union_err = 0, vec_err = 0, sim_err = 0;
  for (std::uint64_t i = 0; i < kInstances; ++i) {
    CounterRng rng(0x5eed6, i);
    const bool lap = i % 2 == 1;
    const auto h = random_persymmetric(rng, lap);
    const std::size_t n = h.size();
    const MatrixD H = build_matrix(h);
    const Propagator prop(h);
    const double time = 10 * rng.unit();

    // unitarity and fidelity symmetry
    std::vector<std::vector<std::complex<double>>> u(n, std::vector<std::complex<double>>(n));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) u[j][k] = prop.amplitude(j + 1, k + 1, time);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> s = 0;
        for (std::size_t m = 0; m < n; ++m) s += u[j][m] * std::conj(u[k][m]);
        unit_err = std::max(unit_err, std::abs(s - (j == k ? 1.0 : 0.0)));
        sym_err = std::max(sym_err, std::abs(std::norm(u[j][k]) - std::norm(u[k][j])));
      }
    // independent propagator by Taylor series
    std::vector<std::vector<double>> hd(n, std::vector<double>(n));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) hd[j][k] = H(j, k);
    const auto ex = oracle::expm_i(hd, time);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) expm_err = std::max(expm_err, std::abs(ex[j][k] - u[j][k]));

    // block spectrum union against Sturm bisection of the full chain
    const auto split = block_split(h);
    std::vector<double> un = eigensystem(split.b1).values;
    for (double x : eigensystem(split.b2).values) un.push_back(x);
    std::sort(un.begin(), un.end());
    std::vector<double> off(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) off[j] = H(j, j + 1);
    const auto full = oracle::tridiagonal_eigenvalues(h.q(), off);
    for (std::size_t r = 0; r < n; ++r) union_err = std::max(union_err, std::abs(un[r] - full[r]));

    // eigenvectors are symmetric or antisymmetric
    const auto es = eigensystem(h);
    for (std::size_t c = 0; c < n; ++c) {
      double plus = 0, minus = 0, norm = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const double a = es.vectors(j, c), b = es.vectors(n - 1 - j, c);
        plus += (a - b) * (a - b);
        minus += (a + b) * (a + b);
        norm += a * a;
      }
      vec_err = std::max(vec_err, std::sqrt(std::min(plus, minus) / norm));
    }

    // diag(d) M = H diag(d), entrywise relative
    const auto d = similarity_diagonal(h);
    const MatrixD M = multiplication_operator(h);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const double lhs = d[j] * M(j, k), rhs = H(j, k) * d[k];
        sim_err = std::max(sim_err, std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)}));
      }
  }
  t.expect(unit_err <= 1e-10, "unitarity " + fmt(unit_err));
  t.expect(sym_err <= 1e-12, "fidelity symmetry " + fmt(sym_err));
  t.expect(expm_err <= 1e-9, "Taylor propagator " + fmt(expm_err));
  t.expect(union_err <= 1e-10, "block union " + fmt(union_err));
  t.expect(vec_err <= 1e-8, "eigenvector symmetry " + fmt(vec_err));
  t.expect(sim_err <= 1e-12, "similarity " + fmt(sim_err));
  return {t.pass, std::to_string(kInstances) + " instances; unitarity " + fmt(unit_err) + ", symmetry " + fmt(sym_err) +
                      ", union " + fmt(union_err) + ", eigvec " + fmt(vec_err) + ", similarity " + fmt(sim_err)};
}

Outcome criterion7() {
  const auto h = PathHamiltonian::adjacency({0, 0, 0, 0}, {1, 1, 1});
  const auto trace = fidelity_trace(h, 1, 4, 20 * kPi, 10000);
  double best = 0, at = 0;
  for (const auto& s : trace) {
    if (s.fidelity > best) {
      best = s.fidelity;
      at = s.t;
    }
  }
  // closed form: eigenvalues 2cos(k pi/5), eigenvector entries sqrt(2/5) sin(jk pi/5)
  double closed = 0;
  for (const auto& s : trace) {
    std::complex<double> a = 0;
    for (int k = 1; k <= 4; ++k) {
      const double w = 0.4 * std::sin(k * kPi / 5) * std::sin(4 * k * kPi / 5);
      a += w * std::exp(std::complex<double>(0, 2 * std::cos(k * kPi / 5) * s.t));
    }
    closed = std::max(closed, std::norm(a));
  }
  const bool agree = std::abs(closed - best) <= 1e-12;
  const bool pass = agree && best < 1 - 1e-3;
  return {pass, "max fidelity " + fmt(best) + " at t = " + fmt(at / kPi) + " pi (closed form " + fmt(closed) +
                    "), threshold " + fmt(1 - 1e-3)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {1, "closed-form examples", 1, criterion1},       {2, "Krawtchouk chains", 5, criterion2},
      {3, "round-trip reconstruction", 60, criterion3}, {4, "Laplacian no-go", 300, criterion4},
      {5, "rationality", 30, criterion5},         {6, "property suites", 60, criterion6},
      {7, "P4 negative control", 5, criterion7},
  };
  bool all_pass = true;
  for (const auto& c : all) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = o.pass && in_time;
    all_pass = all_pass && pass;
    std::printf("criterion %d (%s): %s  %.3fs/%gs  %s%s\n", c.id, c.name, pass ? "PASS" : "FAIL", secs, c.limit_s,
                o.detail.c_str(), in_time ? "" : " [over time limit]");
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
