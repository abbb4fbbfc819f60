#include "obsorder/preservers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "obsorder/random.hpp"

namespace obsorder {

namespace {

constexpr double kScalarTolerance = 1e-9;

double product_scale(const HermitianMatrix& a, const HermitianMatrix& b) {
  return std::max(1.0, spectral_norm(a) * spectral_norm(b));
}

// Sum of the cluster bases except `skip`: the range of a maximal nontrivial
// spectral projection.
ComplexMatrix all_but(const std::vector<ComplexMatrix>& clusters, std::size_t skip, int d) {
  Eigen::Index cols = 0;
  for (std::size_t k = 0; k < clusters.size(); ++k)
    if (k != skip) cols += clusters[k].cols();
  ComplexMatrix out(d, cols);
  Eigen::Index at = 0;
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    if (k == skip) continue;
    out.middleCols(at, clusters[k].cols()) = clusters[k];
    at += clusters[k].cols();
  }
  return out;
}

HermitianMatrix random_hermitian(Rng& rng, int d) {
  ComplexMatrix g(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) g(i, j) = rng.complex_uniform();
  return HermitianMatrix::hermitian_part(g);
}

HermitianMatrix projector(const ComplexVector& v) { return HermitianMatrix::hermitian_part(rank_one(v, v)); }

// A polynomial partner of C, commuting with it.
HermitianMatrix commuting_partner(Rng& rng, const HermitianMatrix& c) {
  const double s = rng.uniform(0.5, 2.0);
  return HermitianMatrix::hermitian_part(c.matrix() * c.matrix() + s * c.matrix());
}

struct Candidate {
  HermitianMatrix a;
  HermitianMatrix b;
};

Candidate propose(int attempt, Rng& rng, const OrderAutomorphism& phi, const OrderAutomorphism& phi_inv) {
  const int d = phi.dim();
  switch (attempt % 5) {
    case 0: {
      // A scalar (zero on the first attempt) is related to everything.
      const double c = attempt == 0 ? 0.0 : rng.uniform(-2.0, 2.0);
      return {c * HermitianMatrix::identity(d), random_hermitian(rng, d)};
    }
    case 1: {
      // Scalar A, and B whose image is a polynomial in phi(A).
      const double c = attempt == 1 ? 0.0 : rng.uniform(-2.0, 2.0);
      const HermitianMatrix a = c * HermitianMatrix::identity(d);
      return {a, apply(phi_inv, commuting_partner(rng, apply(phi, a)))};
    }
    case 2: {
      // Rank-one projections onto orthogonal directions.
      const ComplexVector x = rng.unit_vector(d);
      ComplexVector y = rng.unit_vector(d);
      y -= x.dot(y) * x;
      y.normalize();
      return {rng.uniform(0.5, 2.0) * projector(x), rng.uniform(0.5, 2.0) * projector(y)};
    }
    case 3: {
      // Commuting images, pulled back.
      const HermitianMatrix c = random_hermitian(rng, d);
      return {apply(phi_inv, c), apply(phi_inv, commuting_partner(rng, c))};
    }
    default: {
      // P and (I - P) Q (I - P) for a random projection P.
      const ComplexVector x = rng.unit_vector(d);
      const ComplexMatrix rest = ComplexMatrix::Identity(d, d) - rank_one(x, x);
      const HermitianMatrix q = random_hermitian(rng, d);
      return {projector(x), HermitianMatrix::hermitian_part(rest * q.matrix() * rest)};
    }
  }
}

}  // namespace

std::string_view to_string(RelationKind kind) noexcept {
  switch (kind) {
    case RelationKind::commutativity: return "commutativity";
    case RelationKind::complementarity: return "complementarity";
    case RelationKind::orthogonality: return "orthogonality";
  }
  return "?";
}

std::optional<RelationKind> relation_kind_from_string(std::string_view name) noexcept {
  for (RelationKind k : {RelationKind::commutativity, RelationKind::complementarity, RelationKind::orthogonality})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

bool commute(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerances& tol) {
  require_same_dim(a, b);
  const ComplexMatrix comm = a.matrix() * b.matrix() - b.matrix() * a.matrix();
  return operator_norm(comm) <= tol.psd * product_scale(a, b);
}

bool orthogonal(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerances& tol) {
  require_same_dim(a, b);
  return operator_norm(a.matrix() * b.matrix()) <= tol.psd * product_scale(a, b);
}

std::vector<ComplexMatrix> spectral_clusters(const HermitianMatrix& a, const Tolerances& tol) {
  const Eigendecomposition e = eig(a);
  const double gap = tol.rank * tolerance_scale(a);
  std::vector<ComplexMatrix> clusters;
  Eigen::Index start = 0;
  const Eigen::Index n = e.eigenvalues.size();
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (i == n || e.eigenvalues(i) - e.eigenvalues(i - 1) > gap) {
      clusters.push_back(e.eigenvectors.middleCols(start, i - start));
      start = i;
    }
  }
  return clusters;
}

bool complementary(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerances& tol) {
  require_same_dim(a, b);
  if (a.dim() > kComplementarityMaxDim) {
    std::ostringstream os;
    os << "complementarity is enumerated only up to dimension " << kComplementarityMaxDim;
    fail(Errc::dimension_too_large, os.str());
  }
  const auto ca = spectral_clusters(a, tol);
  const auto cb = spectral_clusters(b, tol);
  if (ca.size() < 2 || cb.size() < 2) return true;  // a scalar has no nontrivial spectral projection

  // Every nontrivial spectral projection sits below one that omits exactly
  // one cluster, and a trivial intersection is inherited by subspaces, so
  // only those maximal projections need to be paired.
  const int d = a.dim();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    const ComplexMatrix pa = all_but(ca, i, d);
    for (std::size_t j = 0; j < cb.size(); ++j) {
      const ComplexMatrix pb = all_but(cb, j, d);
      ComplexMatrix stacked(d, pa.cols() + pb.cols());
      stacked << pa, pb;
      if (column_rank(stacked, tol.rank) < stacked.cols()) return false;
    }
  }
  return true;
}

bool relation_holds(RelationKind kind, const HermitianMatrix& a, const HermitianMatrix& b, const Tolerances& tol) {
  switch (kind) {
    case RelationKind::commutativity: return commute(a, b, tol);
    case RelationKind::complementarity: return complementary(a, b, tol);
    case RelationKind::orthogonality: return orthogonal(a, b, tol);
  }
  return false;
}

std::optional<double> scalar_value(const HermitianMatrix& x) {
  const RealVector ev = eigenvalues(x);
  const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  if (ev(ev.size() - 1) - ev(0) > kScalarTolerance * std::max(1.0, norm)) return std::nullopt;
  return ev.mean();
}

std::optional<double> local_linear_dependence_scalar(const PsdMatrix& m) { return scalar_value(m); }

PreserverClassification preserves_relation(const OrderAutomorphism& phi, RelationKind kind, int trials,
                                           std::uint64_t seed, const Tolerances& tol) {
  const ComplexMatrix& t = phi.transform();
  const PsdMatrix gram = PsdMatrix::certify(HermitianMatrix::hermitian_part(t.adjoint() * t), tol);
  const std::optional<double> lambda = local_linear_dependence_scalar(gram);

  std::optional<double> mu;
  bool shift_ok = false;
  if (kind == RelationKind::orthogonality) {
    shift_ok = spectral_norm(phi.shift()) <= kScalarTolerance * tolerance_scale(gram);
  } else {
    mu = scalar_value(phi.shift());
    shift_ok = mu.has_value();
  }

  PreserverClassification out{kind, lambda.has_value() && shift_ok, std::nullopt, std::nullopt};
  if (out.preserves) {
    out.canonical_form = CanonicalForm{t / std::sqrt(*lambda), phi.conjugate(), *lambda,
                                       kind == RelationKind::orthogonality ? std::nullopt : mu};
    return out;
  }

  const OrderAutomorphism phi_inv = invert(phi);
  Rng rng(seed);
  for (int attempt = 0; attempt < trials; ++attempt) {
    Candidate c = propose(attempt, rng, phi, phi_inv);
    const bool before = relation_holds(kind, c.a, c.b, tol);
    const bool after = relation_holds(kind, apply(phi, c.a), apply(phi, c.b), tol);
    if (before != after) {
      out.counterexample = Counterexample{std::move(c.a), std::move(c.b), before, after};
      return out;
    }
  }
  std::ostringstream os;
  os << "no counterexample for " << to_string(kind) << " in " << trials << " candidates";
  fail(Errc::search_exhausted, os.str());
}

}  // namespace obsorder
