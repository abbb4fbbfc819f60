#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "obsorder/automorphism.hpp"
#include "obsorder/hermitian.hpp"
#include "obsorder/matrix_json.hpp"
#include "obsorder/random.hpp"

namespace obsorder {

enum class GeneratorKind { hermitian, psd, psd_rank, rank_one, invertible, unitary, automorphism };

struct SpectrumRange {
  double lo = 0.5;
  double hi = 2.0;
};

struct GeneratorSpec {
  int dim = 2;
  std::optional<int> rank;
  SpectrumRange spectrum;
  std::uint64_t seed = 0;
  GeneratorKind kind = GeneratorKind::hermitian;
};

using Generated = std::variant<HermitianMatrix, PsdMatrix, ComplexMatrix, OrderAutomorphism>;

/// Deterministic for a fixed spec. Throws Errc::unsatisfiable_spec for
/// invalid specs (rank out of range, empty spectrum, ...).
Generated generate(const GeneratorSpec& spec);

/// Seeded stream of random instances; all suites draw from one of these.
class Generator {
 public:
  static constexpr double kMaxCondition = 1e4;

  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  Rng& rng() noexcept { return rng_; }

  /// (G + G*)/2 with G uniform in [-1, 1]^2 per entry.
  HermitianMatrix hermitian(int d);

  /// sum of `rank` rank-one terms s_k u_k u_k* along orthonormal random
  /// directions, s_k drawn from the spectrum range; rank exact by construction.
  PsdMatrix psd(int d, int rank, SpectrumRange spectrum = {});
  PsdMatrix rank_one(int d, SpectrumRange spectrum = {});

  /// Haar-like unitary from the QR factorisation of a complex Gaussian matrix.
  ComplexMatrix unitary(int d);

  /// Uniform entries, resampled until cond(T) <= max_condition.
  ComplexMatrix invertible(int d, double max_condition = kMaxCondition);

  /// U diag(s) V* with singular values log-spaced so that cond = condition.
  ComplexMatrix conditioned(int d, double condition);

  /// Random T (invertible), random conjugate flag, random Hermitian X.
  OrderAutomorphism automorphism(int d);

  ComplexVector unit_vector(int d) { return rng_.unit_vector(d); }

 private:
  Rng rng_;
};

/// Bisection on lambda with a PSD check of B - lambda x x*. Returns the
/// largest feasible lambda in [lo, hi] found to relative precision 1e-12,
/// or nullopt if lo itself is infeasible. Used as an independent oracle for
/// the range and extremal-lambda criteria.
std::optional<double> bisection_max_lambda(const ComplexVector& x, const PsdMatrix& b, double lo, double hi,
                                           const Tolerances& tol = default_tolerances());

/// Gauge-optimal relative distance min_theta ||T - e^{i theta} T0|| / ||T0||.
double gauge_distance(const ComplexMatrix& t, const ComplexMatrix& t0);

struct FailureRecord {
  std::uint64_t seed;  // case seed; replay_case(suite, dim, seed) reproduces it
  int dim;
  std::string digest;
  std::string property;
};

struct SuiteReport {
  std::string suite;
  std::vector<int> dims;
  int trials = 0;
  std::vector<FailureRecord> failures;
  double elapsed_ms = 0.0;

  bool passed() const noexcept { return failures.empty(); }
  Json to_json(bool with_timing = true) const;
};

std::span<const std::string_view> suite_names() noexcept;

/// Runs `trials` cases per dimension. Case k at dimension d uses the seed
/// mix_seed(mix_seed(seed, d), k), so a report depends only on the arguments.
/// Throws Errc::unknown_suite for unknown names.
SuiteReport run_suite(std::string_view name, std::span<const int> dims, int trials, std::uint64_t seed,
                      const Tolerances& tol = default_tolerances());

/// Runs one case; nullopt when it passes.
std::optional<FailureRecord> replay_case(std::string_view name, int dim, std::uint64_t case_seed,
                                         const Tolerances& tol = default_tolerances());

std::uint64_t case_seed(std::uint64_t suite_seed, int dim, int trial) noexcept;

}  // namespace obsorder
