#include "obsorder/loewner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace obsorder {

namespace {

double pair_scale(const HermitianMatrix& a, const HermitianMatrix& b) {
  return std::max({1.0, spectral_norm(a), spectral_norm(b)});
}

void require_unit(const ComplexVector& x) {
  if (std::abs(x.norm() - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "expected a unit vector, norm is " << x.norm();
    fail(Errc::non_unit_vector, os.str());
  }
}

}  // namespace

std::string_view to_string(Relation r) noexcept {
  switch (r) {
    case Relation::leq: return "LEQ";
    case Relation::geq: return "GEQ";
    case Relation::equal: return "EQUAL";
    case Relation::incomparable: return "INCOMPARABLE";
  }
  return "?";
}

bool leq(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerances& tol) {
  require_same_dim(a, b);
  const RealVector ev = eigenvalues(b - a);
  return ev(0) >= -tol.psd * pair_scale(a, b);
}

OrderResult compare(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerances& tol) {
  require_same_dim(a, b);
  const double threshold = tol.psd * pair_scale(a, b);
  const Eigendecomposition diff = eig(b - a);
  const Eigen::Index last = diff.eigenvalues.size() - 1;
  const double lo = diff.eigenvalues(0);
  const double hi = diff.eigenvalues(last);

  OrderResult out{Relation::equal, std::nullopt, std::nullopt};
  if (std::max(-lo, hi) <= threshold) return out;

  const bool a_le_b = lo >= -threshold;
  const bool b_le_a = hi <= threshold;
  // <Ax,x> - <Bx,x> = -<(B-A)x,x>
  if (!a_le_b) out.witness_ab = OrderWitness{diff.eigenvectors.col(0), -lo};
  if (!b_le_a) out.witness_ba = OrderWitness{diff.eigenvectors.col(last), hi};

  if (a_le_b)
    out.relation = Relation::leq;
  else if (b_le_a)
    out.relation = Relation::geq;
  else
    out.relation = Relation::incomparable;
  return out;
}

double range_residual(const ComplexVector& x, const ComplexMatrix& basis) {
  if (basis.cols() == 0) return x.norm();
  return (x - basis * (basis.adjoint() * x)).norm();
}

std::optional<double> max_lambda(const ComplexVector& x, const PsdMatrix& b, const Tolerances& tol) {
  if (x.size() != b.dim()) fail(Errc::dimension_mismatch, "vector length differs from matrix dimension");
  require_unit(x);

  // sqrt(B)^+ x in the eigenbasis of B, with the rank cutoff applied to B so
  // that rng sqrt(B) and rng B are decided identically.
  const Eigendecomposition e = eig(b);
  const double cutoff = tol.rank * tolerance_scale(b);
  ComplexVector projected = ComplexVector::Zero(x.size());
  double inv_norm_sq = 0.0;
  for (Eigen::Index i = 0; i < e.eigenvalues.size(); ++i) {
    if (e.eigenvalues(i) <= cutoff) continue;
    const Complex c = e.eigenvectors.col(i).dot(x);
    projected += c * e.eigenvectors.col(i);
    inv_norm_sq += std::norm(c) / e.eigenvalues(i);
  }
  if ((x - projected).norm() > tol.range) return std::nullopt;

  const double lambda = 1.0 / inv_norm_sq;
  const HermitianMatrix xx = HermitianMatrix::hermitian_part(rank_one(x, x));
  const bool below = leq(lambda * xx, b, tol);
  // Just above lambda the difference must have a strictly negative
  // eigenvalue. The perturbation is of order 10 * tol.psd * lambda, which the
  // tolerant predicate cannot resolve when ||B|| is large, so the probe uses
  // the untoleranced spectrum.
  const double above_min = eigenvalues(b - ((1.0 + 10.0 * tol.psd) * lambda) * xx)(0);
  if (!below || !(above_min < 0.0)) {
    std::ostringstream os;
    os << "closed-form lambda " << lambda << " fails the order check (below=" << below
       << ", min eigenvalue above=" << above_min << ")";
    fail(Errc::internal_inconsistency, os.str());
  }
  return lambda;
}

bool range_dominates(const PsdMatrix& a, const PsdMatrix& b, const Tolerances& tol) {
  require_same_dim(a, b);
  const int ra = rank_numeric(a, tol);
  if (ra != 1) {
    std::ostringstream os;
    os << "first operand must have rank 1, has rank " << ra;
    fail(Errc::rank_precondition, os.str());
  }
  const ComplexVector u = range_basis(a, tol).col(0);
  const bool contained = range_residual(u, range_basis(b, tol)) <= tol.range;
  const bool feasible = max_lambda(u, b, tol).has_value();
  if (contained != feasible)
    fail(Errc::internal_inconsistency, "range criterion and extremal-lambda criterion disagree");
  return contained;
}

}  // namespace obsorder
