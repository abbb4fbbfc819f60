#pragma once

#include <optional>

#include "obsorder/hermitian.hpp"

namespace obsorder {

/// A unit vector x with <Ax,x> - <Bx,x> = gap > 0, refuting A <= B.
struct OrderWitness {
  ComplexVector x;
  double gap;
};

enum class Relation { leq, geq, equal, incomparable };

std::string_view to_string(Relation r) noexcept;

struct OrderResult {
  Relation relation;
  std::optional<OrderWitness> witness_ab;  // refutes A <= B
  std::optional<OrderWitness> witness_ba;  // refutes B <= A
};

/// A <= B in the Loewner order: B - A positive semidefinite, with eigenvalues
/// down to -tol.psd * max(1, ||A||, ||B||) accepted.
bool leq(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerances& tol = default_tolerances());

/// Both directions at once. Witnesses are eigenvectors of the most negative
/// eigenvalue of the relevant difference.
OrderResult compare(const HermitianMatrix& a, const HermitianMatrix& b,
                    const Tolerances& tol = default_tolerances());

/// Largest lambda with lambda * (x (x) x) <= B, or nullopt when x is not in
/// the range of sqrt(B) (equivalently of B). Closed form
/// lambda = 1 / ||sqrt(B)^+ x||^2, checked against the order predicate before
/// it is returned; a mismatch raises Errc::internal_inconsistency.
std::optional<double> max_lambda(const ComplexVector& x, const PsdMatrix& b,
                                 const Tolerances& tol = default_tolerances());

/// For rank-one A: some positive multiple of A lies below B iff rng A is
/// contained in rng B.
bool range_dominates(const PsdMatrix& a, const PsdMatrix& b, const Tolerances& tol = default_tolerances());

/// ||x - P x|| where P projects onto the span of the orthonormal columns.
double range_residual(const ComplexVector& x, const ComplexMatrix& orthonormal_basis);

}  // namespace obsorder
