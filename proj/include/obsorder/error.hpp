#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace obsorder {

enum class Errc {
  dimension_mismatch,
  not_square,
  non_finite,
  not_hermitian,
  not_psd,
  numerical_failure,
  rank_precondition,
  non_unit_vector,
  non_orthonormal,
  invalid_argument,
  singular_transform,
  oracle_not_automorphic,
  transport_failure,
  search_exhausted,
  unknown_suite,
  internal_inconsistency,
  dimension_too_large,
  unsatisfiable_spec,
  parse_error,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (notably the CLI exit-code mapping) can dispatch without parsing
/// messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace obsorder
