#pragma once

#include <stdexcept>
#include <string>

namespace shaq {

// Stable error identities; the C API and the CLI exit-code contract key off
// these rather than exception types.
enum class ErrorCode {
    factorization_exceeded,
    singular_model,
    point_not_on_curve,
    not_prime_order,
    chain_mismatch,
    excluded_parameter,
    undefined_at_point,
    torsion_hypothesis_violated,
    undetermined_local_case,
    infinity_case_unsupported,
    missing_mw_data,
    unsupported_positive_rank,
    isogeny_inconsistent,
    not_local_kernel,
    precision_exhausted,
    degenerate_witness,
    invalid_input,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::factorization_exceeded: return "FactorizationExceeded";
        case ErrorCode::singular_model: return "SingularModel";
        case ErrorCode::point_not_on_curve: return "PointNotOnCurve";
        case ErrorCode::not_prime_order: return "NotPrimeOrder";
        case ErrorCode::chain_mismatch: return "ChainMismatch";
        case ErrorCode::excluded_parameter: return "ExcludedParameter";
        case ErrorCode::undefined_at_point: return "UndefinedAtPoint";
        case ErrorCode::torsion_hypothesis_violated: return "TorsionHypothesisViolated";
        case ErrorCode::undetermined_local_case: return "UndeterminedLocalCase";
        case ErrorCode::infinity_case_unsupported: return "InfinityCaseUnsupported";
        case ErrorCode::missing_mw_data: return "MissingMWData";
        case ErrorCode::unsupported_positive_rank: return "UnsupportedPositiveRank";
        case ErrorCode::isogeny_inconsistent: return "IsogenyInconsistent";
        case ErrorCode::not_local_kernel: return "NotLocalKernel";
        case ErrorCode::precision_exhausted: return "PrecisionExhausted";
        case ErrorCode::degenerate_witness: return "DegenerateWitness";
        case ErrorCode::invalid_input: return "InvalidInput";
    }
    return "UnknownError";
}

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
    throw Error(code, std::string(error_code_name(code)) + ": " + what);
}

} // namespace shaq
