#pragma once

#include "obsorder/automorphism.hpp"
#include "obsorder/matrix_json.hpp"

namespace obsorder {

/// {"T": matrix JSON (any square complex matrix), "conjugate": bool, "X": matrix JSON}
Json automorphism_to_json(const OrderAutomorphism& phi);
OrderAutomorphism automorphism_from_json(const Json& j, const Tolerances& tol = default_tolerances());

}  // namespace obsorder
