#pragma once

#include <string>
#include <string_view>

#include "pstlab/error.hpp"

namespace pstlab {

/// Which Hamiltonian governs the dynamics: adjacency (XX) or Laplacian (XXX).
enum class HamiltonianKind { Adjacency, Laplacian };

inline std::string_view kind_name(HamiltonianKind k) {
  return k == HamiltonianKind::Adjacency ? "adjacency" : "laplacian";
}

inline HamiltonianKind parse_hamiltonian_kind(std::string_view s) {
  if (s == "adjacency") return HamiltonianKind::Adjacency;
  if (s == "laplacian") return HamiltonianKind::Laplacian;
  throw Error(ErrorCode::ParseError, "unknown hamiltonian kind '" + std::string(s) + "'");
}

}  // namespace pstlab
