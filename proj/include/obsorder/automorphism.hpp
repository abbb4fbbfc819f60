#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "obsorder/hermitian.hpp"
#include "obsorder/loewner.hpp"

namespace obsorder {

/// The order-automorphism A -> T c(A) T* + X, where c is the identity or,
/// when `conjugate` is set, entrywise complex conjugation in the standard
/// basis (the conjugate-linear branch).
class OrderAutomorphism {
 public:
  /// Throws Errc::singular_transform unless sigma_min(T) > tol.rank * ||T||.
  OrderAutomorphism(ComplexMatrix t, bool conjugate, HermitianMatrix x,
                    const Tolerances& tol = default_tolerances());

  static OrderAutomorphism identity(int dim);

  const ComplexMatrix& transform() const noexcept { return t_; }
  bool conjugate() const noexcept { return conjugate_; }
  const HermitianMatrix& shift() const noexcept { return x_; }
  int dim() const noexcept { return x_.dim(); }

 private:
  ComplexMatrix t_;
  bool conjugate_;
  HermitianMatrix x_;
};

HermitianMatrix apply(const OrderAutomorphism& phi, const HermitianMatrix& a);

/// apply(compose(f, g), A) == apply(f, apply(g, A)).
OrderAutomorphism compose(const OrderAutomorphism& f, const OrderAutomorphism& g);

OrderAutomorphism invert(const OrderAutomorphism& phi);

/// Black-box map on Hermitian matrices of a fixed dimension. A handle is
/// used from one thread at a time.
class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual int dim() const = 0;
  virtual HermitianMatrix query(const HermitianMatrix& a) = 0;
};

class FunctionOracle final : public Oracle {
 public:
  using Fn = std::function<HermitianMatrix(const HermitianMatrix&)>;
  FunctionOracle(int dim, Fn fn) : dim_(dim), fn_(std::move(fn)) {}

  int dim() const override { return dim_; }
  HermitianMatrix query(const HermitianMatrix& a) override { return fn_(a); }

 private:
  int dim_;
  Fn fn_;
};

/// Oracle backed by a known automorphism.
FunctionOracle automorphism_oracle(OrderAutomorphism phi);

struct ReconstructOptions {
  int validation_probes = 20;
  std::uint64_t validation_seed = 0x5eedf00dULL;
  double residual_limit = 1e-6;
  Tolerances tol = default_tolerances();
};

struct ReconstructionReport {
  OrderAutomorphism recovered;
  std::string phase_gauge;
  // Set when the linear and conjugate-linear fits were both within the
  // residual limit; the report then carries conjugate = false.
  bool conjugate_degenerate = false;
  double max_residual = 0.0;
  int probes_used = 0;
};

/// Recovers (T, conjugate, X) from oracle answers alone, using
/// 2*dim + 1 structure probes and `validation_probes` random Hermitian
/// checks. T is fixed up to a global phase by making the largest-magnitude
/// entry of its first column real and positive.
///
/// Throws Errc::oracle_not_automorphic when a probe answer does not have the
/// structure an order-automorphism must produce, and lets transport errors
/// from the oracle propagate.
ReconstructionReport reconstruct(Oracle& oracle, const ReconstructOptions& options = {});

struct OrderViolation {
  int trial;
  HermitianMatrix a;
  HermitianMatrix b;
  HermitianMatrix image_a;
  HermitianMatrix image_b;
  std::string description;
  std::optional<OrderWitness> witness;
};

struct OrderCheckReport {
  int trials = 0;
  std::vector<OrderViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Samples ordered pairs (A, A + P) and incomparable pairs and checks
/// A <= B <=> phi(A) <= phi(B) in both directions.
OrderCheckReport check_order_automorphism(Oracle& oracle, int trials, std::uint64_t seed,
                                          const Tolerances& tol = default_tolerances());

}  // namespace obsorder
