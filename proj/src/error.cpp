#include "obsorder/error.hpp"

#include "obsorder/tolerances.hpp"

namespace obsorder {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::dimension_mismatch: return "DIMENSION_MISMATCH";
    case Errc::not_square: return "NOT_SQUARE";
    case Errc::non_finite: return "NON_FINITE";
    case Errc::not_hermitian: return "NOT_HERMITIAN";
    case Errc::not_psd: return "NOT_PSD";
    case Errc::numerical_failure: return "NUMERICAL_FAILURE";
    case Errc::rank_precondition: return "RANK_PRECONDITION";
    case Errc::non_unit_vector: return "NON_UNIT_VECTOR";
    case Errc::non_orthonormal: return "NON_ORTHONORMAL";
    case Errc::invalid_argument: return "INVALID_ARGUMENT";
    case Errc::singular_transform: return "SINGULAR_TRANSFORM";
    case Errc::oracle_not_automorphic: return "ORACLE_NOT_AUTOMORPHIC";
    case Errc::transport_failure: return "TRANSPORT_FAILURE";
    case Errc::search_exhausted: return "SEARCH_EXHAUSTED";
    case Errc::unknown_suite: return "UNKNOWN_SUITE";
    case Errc::internal_inconsistency: return "INTERNAL_INCONSISTENCY";
    case Errc::dimension_too_large: return "DIMENSION_TOO_LARGE";
    case Errc::unsatisfiable_spec: return "UNSATISFIABLE_SPEC";
    case Errc::parse_error: return "PARSE_ERROR";
  }
  return "UNKNOWN";
}

void fail(Errc code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

void Tolerances::validate() const {
  for (double t : {psd, rank, range, recon}) {
    if (!(t > 0.0 && t < 1.0)) fail(Errc::invalid_argument, "tolerances must lie in (0, 1)");
  }
}

const Tolerances& default_tolerances() noexcept {
  static const Tolerances defaults{};
  return defaults;
}

}  // namespace obsorder
