#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "obsorder/automorphism.hpp"
#include "obsorder/hermitian.hpp"

namespace obsorder {

enum class RelationKind { commutativity, complementarity, orthogonality };

std::string_view to_string(RelationKind kind) noexcept;
std::optional<RelationKind> relation_kind_from_string(std::string_view name) noexcept;

/// ||AB - BA|| <= tol.psd * max(1, ||A|| ||B||).
bool commute(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerances& tol = default_tolerances());

/// ||AB|| <= tol.psd * max(1, ||A|| ||B||).
bool orthogonal(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerances& tol = default_tolerances());

/// Orthonormal bases of the eigenspaces of A after single-linkage clustering
/// of the (ascending) eigenvalues at gap tol.rank * max(1, ||A||).
std::vector<ComplexMatrix> spectral_clusters(const HermitianMatrix& a, const Tolerances& tol = default_tolerances());

inline constexpr int kComplementarityMaxDim = 12;

/// Every nontrivial spectral projection of A has range meeting the range of
/// every nontrivial spectral projection of B only in 0. Dimensions above
/// kComplementarityMaxDim raise Errc::dimension_too_large.
bool complementary(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerances& tol = default_tolerances());

bool relation_holds(RelationKind kind, const HermitianMatrix& a, const HermitianMatrix& b,
                    const Tolerances& tol = default_tolerances());

/// lambda when M = lambda I up to an eigenvalue spread of 1e-9 * max(1, ||M||).
std::optional<double> local_linear_dependence_scalar(const PsdMatrix& m);

/// mu when X = mu I, same criterion as above.
std::optional<double> scalar_value(const HermitianMatrix& x);

/// phi(A) = lambda U c(A) U* + mu I with U unitary (antiunitary when
/// `antiunitary`). `mu` is absent for orthogonality.
struct CanonicalForm {
  ComplexMatrix u;
  bool antiunitary;
  double lambda;
  std::optional<double> mu;
};

/// A pair on which the relation holds before phi and fails after, or the
/// other way round.
struct Counterexample {
  HermitianMatrix a;
  HermitianMatrix b;
  bool holds_before;
  bool holds_after;
};

struct PreserverClassification {
  RelationKind kind;
  bool preserves;
  std::optional<CanonicalForm> canonical_form;
  std::optional<Counterexample> counterexample;
};

/// Decides from (T, X) whether phi also preserves `kind` in both directions.
/// Commutativity and complementarity: T*T = lambda I and X = mu I.
/// Orthogonality: T*T = lambda I and X = 0.
/// A negative answer is backed by a counterexample found by a seeded search
/// of at most `trials` candidates and re-verified with the relation
/// predicates; an empty search raises Errc::search_exhausted.
PreserverClassification preserves_relation(const OrderAutomorphism& phi, RelationKind kind, int trials,
                                           std::uint64_t seed, const Tolerances& tol = default_tolerances());

}  // namespace obsorder
