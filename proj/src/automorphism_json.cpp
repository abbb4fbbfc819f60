#include "obsorder/automorphism_json.hpp"

namespace obsorder {

Json automorphism_to_json(const OrderAutomorphism& phi) {
  Json j;
  j["T"] = matrix_to_json(phi.transform());
  j["conjugate"] = phi.conjugate();
  j["X"] = matrix_to_json(phi.shift());
  return j;
}

OrderAutomorphism automorphism_from_json(const Json& j, const Tolerances& tol) {
  if (!j.is_object() || !j.contains("T") || !j.contains("X"))
    fail(Errc::parse_error, "automorphism JSON needs \"T\" and \"X\"");
  bool conjugate = false;
  if (j.contains("conjugate")) {
    if (!j["conjugate"].is_boolean()) fail(Errc::parse_error, "\"conjugate\" must be a boolean");
    conjugate = j["conjugate"].get<bool>();
  }
  return OrderAutomorphism(complex_matrix_from_json(j["T"]), conjugate, hermitian_from_json(j["X"]), tol);
}

}  // namespace obsorder
