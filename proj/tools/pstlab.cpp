// pstlab: synthesize, verify and certify perfect-state-transfer chains.
//
// Exit codes: 0 success, 1 usage or parse error, 2 structured domain
// failure, 3 I/O failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "pstlab/io.hpp"
#include "pstlab/pstlab.hpp"

namespace {

using pstlab::Error;
using pstlab::ErrorCode;
using json = pstlab::io::json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot write '" + out_path + "'");
  out << text;
  if (!out) throw IoError("write to '" + out_path + "' failed");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::pair<std::size_t, std::size_t> parse_pair(const std::string& text, std::size_t n) {
  if (text.empty()) return {1, n};
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::ParseError, "--pair expects j,k");
  try {
    const auto j = std::stoul(text.substr(0, comma));
    const auto k = std::stoul(text.substr(comma + 1));
    if (j < 1 || k < 1 || j > n || k > n) throw Error(ErrorCode::InvalidArgument, "--pair out of range");
    return {j, k};
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::ParseError, "--pair expects j,k");
  }
}

std::size_t worker_count(std::size_t flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("PSTLAB_WORKERS")) {
    try {
      const auto v = std::stoul(env);
      if (v > 0) return v;
    } catch (const std::logic_error&) {
    }
  }
  return 1;
}

struct SynthOptions {
  std::string spectrum;
  std::string input;
  std::string kind = "adjacency";
  std::string time;
  std::string out;
};

int run_synth(const SynthOptions& o) {
  using namespace pstlab;
  std::optional<Spectrum> s;
  if (!o.input.empty()) {
    s = io::spectrum_from_json(read_json_file(o.input));
  } else {
    const auto values = io::parse_scalar_list(o.spectrum);
    ReadoutTime t = ReadoutTime::pi();
    if (!o.time.empty()) {
      t = parse_time(o.time);
    } else if (io::all_exact(values)) {
      std::vector<Rational> v = io::exact_of(values);
      std::sort(v.begin(), v.end());
      if (auto c = kay_time_pi_multiple(v)) t = ReadoutTime::pi_times(*c);
    }
    s = io::make_spectrum(values, parse_spectrum_kind(o.kind), t);
  }
  if (!o.time.empty() || !o.input.empty()) validate_kay(*s);
  const SynthesisReport rep = reconstruct(*s);
  json j = io::to_json(rep);
  j["readout_time"] = io::time_to_string(s->readout_time());
  emit(dump(j), o.out);
  return 0;
}

struct VerifyOptions {
  std::string input;
  std::string pair;
  std::string time = "pi";
  double tol = 1e-9;
  std::string out;
};

int run_verify(const VerifyOptions& o) {
  using namespace pstlab;
  const PathHamiltonian h = io::hamiltonian_from_json(read_json_file(o.input));
  const auto [j, k] = parse_pair(o.pair, h.size());
  const double t = parse_time(o.time).value();
  const Propagator prop(h);
  const PstVerdict v = verify_pst(prop, j, k, t, o.tol);
  json out = io::to_json(v.result);
  out["pst"] = v.pst;
  out["tolerance"] = o.tol;
  out["persymmetric"] = is_persymmetric(h, 1e-12);
  const bool endpoints = (j == 1 && k == h.size()) || (k == 1 && j == h.size());
  if (endpoints && v.pst) {
    const auto rep = verify_internal_pairs(h, t, o.tol);
    json pairs = json::array();
    for (const auto& p : rep.pairs) {
      json pj = io::to_json(p.result);
      pj["pst"] = p.pst;
      pairs.push_back(pj);
    }
    out["internal_pairs"] = pairs;
    out["zero_entry_vertices"] = rep.zero_entry_vertices;
  }
  emit(dump(out), o.out);
  return 0;
}

struct CertifyOptions {
  std::string which;
  std::size_t n = 0;
  std::string spectrum;
  bool scan = false;
  std::size_t count = 1000;
  std::uint64_t seed = 0;
  std::size_t workers = 0;
  long max_eig = 15;
  std::string out;
};

int run_certify(const CertifyOptions& o) {
  using namespace pstlab;
  json out;
  if (o.which == "laplacian") {
    if (o.n == 0) throw Error(ErrorCode::InvalidArgument, "--n is required");
    if (o.scan) {
      out = io::to_json(laplacian_search_falsifier(o.n, o.max_eig));
    } else {
      const Certificate c = laplacian_infeasibility(o.n);
      out = io::to_json(c);
      out["verified"] = check_certificate(c);
    }
    emit(dump(out), o.out);
    return 0;
  }
  // rational
  if (o.scan) {
    if (o.n == 0) throw Error(ErrorCode::InvalidArgument, "--n is required");
    const auto scan = scan_rationality(o.n, o.count, o.seed, worker_count(o.workers));
    out = io::to_json(scan);
    out["seed"] = o.seed;
    emit(dump(out), o.out);
    return scan.counterexamples == 0 ? 0 : 2;
  }
  if (o.spectrum.empty()) throw Error(ErrorCode::InvalidArgument, "--spectrum is required without --scan");
  const auto values = io::parse_scalar_list(o.spectrum);
  if (!io::all_exact(values)) throw Error(ErrorCode::PreconditionViolated, "rational certificates need exact input");
  Spectrum s = Spectrum::exact(io::exact_of(values), SpectrumKind::Adjacency);
  if (o.n != 0 && o.n != s.size()) throw Error(ErrorCode::InvalidArgument, "--n disagrees with --spectrum");
  auto [normalized, shift] = normalize_parity(s);
  const auto outcome = rationality_certificate(normalized);
  out["status"] = std::string(status_name(outcome.status));
  out["n"] = s.size();
  out["shift"] = to_string(shift);
  if (outcome.certificate) out["certificate"] = io::to_json(*outcome.certificate);
  emit(dump(out), o.out);
  return outcome.status == RationalityStatus::Counterexample ? 2 : 0;
}

struct TraceOptions {
  std::string input;
  std::string pair;
  std::string t_max = "pi";
  std::size_t steps = 1000;
  std::string out;
};

int run_trace(const TraceOptions& o) {
  using namespace pstlab;
  if (o.steps < 2) throw Error(ErrorCode::InvalidArgument, "--steps must be at least 2");
  const PathHamiltonian h = io::hamiltonian_from_json(read_json_file(o.input));
  const auto [j, k] = parse_pair(o.pair, h.size());
  const auto trace = fidelity_trace(h, j, k, parse_time(o.t_max).value(), o.steps);
  std::ostringstream os;
  write_trace_csv(os, trace);
  emit(os.str(), o.out);
  return 0;
}

struct TreeOptions {
  std::string input;
  std::string t_max = "8pi";
  std::size_t steps = 10000;
  std::string out;
};

int run_tree(const TreeOptions& o) {
  using namespace pstlab;
  const TreeLaplacian tree = build_symmetric_tree(io::tree_from_json(read_json_file(o.input)));
  const TreeScan scan = scan_tree_mirror_pairs(tree, parse_time(o.t_max).value(), o.steps);
  json out;
  out["vertices"] = scan.vertices;
  out["max_mirror_fidelity"] = scan.max_mirror_fidelity;
  out["pair_max_fidelity"] = scan.pair_max;
  out["eigenvector_hypothesis_holds"] = scan.hypothesis_holds;
  out["persymmetric"] = is_persymmetric(tree.laplacian);
  json rows = json::array();
  for (std::size_t i = 0; i < tree.laplacian.rows(); ++i) {
    std::vector<pstlab::Rational> row;
    for (std::size_t c = 0; c < tree.laplacian.cols(); ++c) row.push_back(tree.laplacian(i, c));
    rows.push_back(io::rational_array(row));
  }
  out["laplacian"] = rows;
  emit(dump(out), o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perfect state transfer chains: synthesis, verification, certificates"};
  app.require_subcommand(1);

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Reconstruct a PST chain from a target spectrum");
  auto* spec_opt = synth_cmd->add_option("--spectrum", synth.spectrum, "Comma-separated eigenvalues (ints, p/q, decimals)");
  auto* in_opt = synth_cmd->add_option("--input", synth.input, "Spectrum JSON file");
  spec_opt->excludes(in_opt);
  synth_cmd->add_option("--kind", synth.kind, "adjacency | adjacency_np | laplacian");
  synth_cmd->add_option("--time", synth.time, "Readout time (pi, pi/2, decimals); default: smallest PST time");
  synth_cmd->add_option("--out", synth.out, "Output file (default stdout)");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check PST of a Hamiltonian between a vertex pair");
  verify_cmd->add_option("--input", verify.input, "Hamiltonian JSON file")->required();
  verify_cmd->add_option("--pair", verify.pair, "j,k (1-based; default 1,n)");
  verify_cmd->add_option("--time", verify.time, "Readout time");
  verify_cmd->add_option("--tol", verify.tol, "Fidelity tolerance");
  verify_cmd->add_option("--out", verify.out, "Output file");

  CertifyOptions certify;
  auto* certify_cmd = app.add_subcommand("certify", "Exact certificates (laplacian no-go, irrational weights)");
  certify_cmd->add_option("which", certify.which, "laplacian | rational")
      ->required()
      ->check(CLI::IsMember({"laplacian", "rational"}));
  certify_cmd->add_option("--n", certify.n, "Number of vertices");
  certify_cmd->add_option("--spectrum", certify.spectrum, "Integer spectrum for a single rational certificate");
  certify_cmd->add_flag("--scan", certify.scan, "Scan seeded random spectra (rational) or enumerate (laplacian)");
  certify_cmd->add_option("--count", certify.count, "Spectra to draw in a rational scan");
  certify_cmd->add_option("--seed", certify.seed, "Seed for the counter-based generator");
  certify_cmd->add_option("--workers", certify.workers, "Worker threads (fallback: PSTLAB_WORKERS)");
  certify_cmd->add_option("--max-eig", certify.max_eig, "Largest eigenvalue enumerated by the laplacian scan");
  certify_cmd->add_option("--out", certify.out, "Output file");

  TraceOptions trace;
  auto* trace_cmd = app.add_subcommand("trace", "Sample the fidelity curve to CSV");
  trace_cmd->add_option("--input", trace.input, "Hamiltonian JSON file")->required();
  trace_cmd->add_option("--pair", trace.pair, "j,k (default 1,n)");
  trace_cmd->add_option("--t-max", trace.t_max, "End of the time window");
  trace_cmd->add_option("--steps", trace.steps, "Number of samples (>= 2)");
  trace_cmd->add_option("--out", trace.out, "Output CSV file");

  TreeOptions tree;
  auto* tree_cmd = app.add_subcommand("tree", "Mirror-pair Laplacian fidelity scan for a symmetric tree");
  tree_cmd->add_option("--input", tree.input, "Tree JSON file")->required();
  tree_cmd->add_option("--t-max", tree.t_max, "End of the time window");
  tree_cmd->add_option("--steps", tree.steps, "Grid points");
  tree_cmd->add_option("--out", tree.out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*synth_cmd) {
      if (synth.spectrum.empty() && synth.input.empty()) throw Error(ErrorCode::InvalidArgument, "--spectrum or --input required");
      return run_synth(synth);
    }
    if (*verify_cmd) return run_verify(verify);
    if (*certify_cmd) return run_certify(certify);
    if (*trace_cmd) return run_trace(trace);
    if (*tree_cmd) return run_tree(tree);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cout << dump(pstlab::io::error_json(e));
    const bool usage = e.code() == ErrorCode::ParseError || e.code() == ErrorCode::InvalidArgument;
    return usage ? 1 : 2;
  }
  return 1;
}
