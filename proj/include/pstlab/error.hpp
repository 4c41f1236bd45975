#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pstlab {

enum class ErrorCode {
  // spectra
  NonDistinct,
  GapNotOddInteger,
  NotIntegerizable,
  PatternViolation,
  InvalidSpectrum,
  MixedExactness,
  // orthopoly
  NonPositiveOffdiag,
  DegenerateInterpolation,
  NegativeWeightSquared,
  DegreeDrop,
  // hamiltonian
  InvalidHamiltonian,
  NotPersymmetric,
  DisconnectedHalf,
  NonPositiveWeight,
  SizeLimit,
  // synthesis
  S1NonPositive,
  LaplacianOddConstraintViolated,
  NotPersymmetricResult,
  PotentialRequired,
  LaplacianStructureViolated,
  UnsupportedN,
  BudgetExceeded,
  PreconditionViolated,
  MissingExactData,
  InexactInput,
  // dynamics
  ConvergenceFailure,
  NotAnEigenvalue,
  EndpointPSTAbsent,
  InvalidArgument,
  // io
  ParseError,
};

/// Machine-readable snake_case name, used as the "error" field of CLI output.
inline std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonDistinct: return "non_distinct";
    case ErrorCode::GapNotOddInteger: return "gap_not_odd_integer";
    case ErrorCode::NotIntegerizable: return "not_integerizable";
    case ErrorCode::PatternViolation: return "pattern_violation";
    case ErrorCode::InvalidSpectrum: return "invalid_spectrum";
    case ErrorCode::MixedExactness: return "mixed_exactness";
    case ErrorCode::NonPositiveOffdiag: return "non_positive_offdiag";
    case ErrorCode::DegenerateInterpolation: return "degenerate_interpolation";
    case ErrorCode::NegativeWeightSquared: return "negative_weight_squared";
    case ErrorCode::DegreeDrop: return "degree_drop";
    case ErrorCode::InvalidHamiltonian: return "invalid_hamiltonian";
    case ErrorCode::NotPersymmetric: return "not_persymmetric";
    case ErrorCode::DisconnectedHalf: return "disconnected_half";
    case ErrorCode::NonPositiveWeight: return "non_positive_weight";
    case ErrorCode::SizeLimit: return "size_limit";
    case ErrorCode::S1NonPositive: return "s1_non_positive";
    case ErrorCode::LaplacianOddConstraintViolated: return "laplacian_odd_constraint_violated";
    case ErrorCode::NotPersymmetricResult: return "not_persymmetric_result";
    case ErrorCode::PotentialRequired: return "potential_required";
    case ErrorCode::LaplacianStructureViolated: return "laplacian_structure_violated";
    case ErrorCode::UnsupportedN: return "unsupported_n";
    case ErrorCode::BudgetExceeded: return "budget_exceeded";
    case ErrorCode::PreconditionViolated: return "precondition_violated";
    case ErrorCode::MissingExactData: return "missing_exact_data";
    case ErrorCode::InexactInput: return "inexact_input";
    case ErrorCode::ConvergenceFailure: return "convergence_failure";
    case ErrorCode::NotAnEigenvalue: return "not_an_eigenvalue";
    case ErrorCode::EndpointPSTAbsent: return "endpoint_pst_absent";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::ParseError: return "parse_error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, int index = -1)
      : std::runtime_error(what), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }
  /// Offending position (1-based) when the error concerns one element, else -1.
  int index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  int index_;
};

}  // namespace pstlab
