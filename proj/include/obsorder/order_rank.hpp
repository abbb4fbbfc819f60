#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "obsorder/hermitian.hpp"

namespace obsorder {

struct IncomparablePair {
  PsdMatrix first;
  PsdMatrix second;
};

struct RankOneVerdict {
  bool rank_one;
  std::optional<IncomparablePair> counterexample;  // set when rank_one is false
  int pairs_sampled = 0;
};

/// Decides rank 1 through totality of the interval [0, A].
///
/// Rank >= 2: returns the two scaled top eigenprojections, which both lie in
/// [0, A] and are incomparable. Rank 1: samples `samples` pairs t*A, s*A from
/// the interval and confirms they are comparable. Throws
/// Errc::invalid_argument for the zero matrix.
RankOneVerdict is_rank_one_by_order(const PsdMatrix& a, int samples, std::uint64_t seed,
                                    const Tolerances& tol = default_tolerances());

struct RankWitness {
  PsdMatrix e;
  PsdMatrix f;
  int n;
};

/// E, F <= A with rank E = n, rank F > 1 and rng E, rng F meeting only in 0,
/// or nullopt when rank A <= n + 1. E collects the n largest spectral terms of
/// A and F the remaining nonzero ones.
std::optional<RankWitness> rank_gt_np1_witness(const PsdMatrix& a, int n,
                                               const Tolerances& tol = default_tolerances());

/// Re-checks all witness invariants against A; returns the first violated one.
std::optional<std::string> rank_witness_violation(const PsdMatrix& a, const RankWitness& w,
                                                  const Tolerances& tol = default_tolerances());

/// No rank-one G in the cone with G <= E and G <= F, i.e. rng E and rng F
/// intersect trivially.
bool no_common_rank1_minorant(const PsdMatrix& e, const PsdMatrix& f,
                              const Tolerances& tol = default_tolerances());

/// The ranges of the given rank-one operators are linearly independent.
bool ranges_linearly_independent(std::span<const PsdMatrix> rank_ones,
                                 const Tolerances& tol = default_tolerances());

/// T leaves span(basis) invariant and vanishes on its orthogonal complement.
/// `basis` holds orthonormal columns (checked to 1e-10).
bool acts_on(const PsdMatrix& t, const ComplexMatrix& basis, const Tolerances& tol = default_tolerances());

/// A rank-one A <= T whose range is independent of the ranges of
/// `rank_ones`, searched among the spectral directions of T; nullopt when
/// none exists. Order-theoretic counterpart of acts_on.
std::optional<PsdMatrix> escaping_rank_one_minorant(const PsdMatrix& t, std::span<const PsdMatrix> rank_ones,
                                                    const Tolerances& tol = default_tolerances());

/// Orthonormal basis of the span of the ranges of rank-one operators.
ComplexMatrix span_of_ranges(std::span<const PsdMatrix> rank_ones, const Tolerances& tol = default_tolerances());

}  // namespace obsorder
