#include "obsorder/order_rank.hpp"

#include <sstream>

#include <Eigen/SVD>

#include "obsorder/loewner.hpp"
#include "obsorder/random.hpp"

namespace obsorder {

namespace {

// Spectral term lambda_k v_k v_k* for the k-th largest eigenvalue.
ComplexMatrix spectral_term(const Eigendecomposition& e, Eigen::Index k_desc) {
  const Eigen::Index idx = e.eigenvalues.size() - 1 - k_desc;
  return e.eigenvalues(idx) * rank_one(e.eigenvectors.col(idx), e.eigenvectors.col(idx));
}

ComplexVector range_vector(const PsdMatrix& a, const Tolerances& tol) {
  const int r = rank_numeric(a, tol);
  if (r != 1) {
    std::ostringstream os;
    os << "expected a rank-one operator, got rank " << r;
    fail(Errc::rank_precondition, os.str());
  }
  return range_basis(a, tol).col(0);
}

}  // namespace

RankOneVerdict is_rank_one_by_order(const PsdMatrix& a, int samples, std::uint64_t seed, const Tolerances& tol) {
  const int r = rank_numeric(a, tol);
  if (r == 0) fail(Errc::invalid_argument, "interval [0, A] is trivial for A = 0");

  if (r >= 2) {
    const Eigendecomposition e = eig(a);
    auto p1 = PsdMatrix::certify(HermitianMatrix::hermitian_part(spectral_term(e, 0)), tol);
    auto p2 = PsdMatrix::certify(HermitianMatrix::hermitian_part(spectral_term(e, 1)), tol);
    if (compare(p1, p2, tol).relation != Relation::incomparable)
      fail(Errc::internal_inconsistency, "top spectral terms are comparable");
    return {false, IncomparablePair{std::move(p1), std::move(p2)}, 0};
  }

  Rng rng(seed);
  for (int k = 0; k < samples; ++k) {
    const double t = rng.uniform();
    const double s = rng.uniform();
    const HermitianMatrix lhs = t * a.hermitian();
    const HermitianMatrix rhs = s * a.hermitian();
    if (compare(lhs, rhs, tol).relation == Relation::incomparable) {
      return {false,
              IncomparablePair{PsdMatrix::certify(lhs, tol), PsdMatrix::certify(rhs, tol)},
              k + 1};
    }
  }
  return {true, std::nullopt, samples};
}

std::optional<RankWitness> rank_gt_np1_witness(const PsdMatrix& a, int n, const Tolerances& tol) {
  if (n < 1) fail(Errc::invalid_argument, "n must be at least 1");
  const int r = rank_numeric(a, tol);
  if (r <= n + 1) return std::nullopt;

  const Eigendecomposition e = eig(a);
  ComplexMatrix e_part = ComplexMatrix::Zero(a.dim(), a.dim());
  ComplexMatrix f_part = ComplexMatrix::Zero(a.dim(), a.dim());
  for (int k = 0; k < n; ++k) e_part += spectral_term(e, k);
  for (int k = n; k < r; ++k) f_part += spectral_term(e, k);
  return RankWitness{PsdMatrix::certify(HermitianMatrix::hermitian_part(e_part), tol),
                     PsdMatrix::certify(HermitianMatrix::hermitian_part(f_part), tol), n};
}

std::optional<std::string> rank_witness_violation(const PsdMatrix& a, const RankWitness& w, const Tolerances& tol) {
  if (!leq(w.e, a, tol)) return "E <= A fails";
  if (!leq(w.f, a, tol)) return "F <= A fails";
  if (rank_numeric(w.e, tol) != w.n) return "rank E != n";
  if (rank_numeric(w.f, tol) <= 1) return "rank F <= 1";
  if (!no_common_rank1_minorant(w.e, w.f, tol)) return "rng E and rng F intersect";
  return std::nullopt;
}

bool no_common_rank1_minorant(const PsdMatrix& e, const PsdMatrix& f, const Tolerances& tol) {
  require_same_dim(e, f);
  const ComplexMatrix be = range_basis(e, tol);
  const ComplexMatrix bf = range_basis(f, tol);
  ComplexMatrix stacked(e.dim(), be.cols() + bf.cols());
  stacked << be, bf;
  return column_rank(stacked, tol.rank) == be.cols() + bf.cols();
}

bool ranges_linearly_independent(std::span<const PsdMatrix> rank_ones, const Tolerances& tol) {
  if (rank_ones.empty()) return true;
  const int d = rank_ones.front().dim();
  ComplexMatrix vectors(d, static_cast<Eigen::Index>(rank_ones.size()));
  for (std::size_t k = 0; k < rank_ones.size(); ++k) {
    if (rank_ones[k].dim() != d) fail(Errc::dimension_mismatch, "operators of different dimensions");
    vectors.col(k) = range_vector(rank_ones[k], tol);
  }
  return column_rank(vectors, tol.rank) == static_cast<int>(rank_ones.size());
}

bool acts_on(const PsdMatrix& t, const ComplexMatrix& basis, const Tolerances& tol) {
  if (basis.cols() > 0 && basis.rows() != t.dim())
    fail(Errc::dimension_mismatch, "basis vectors have the wrong length");
  ComplexMatrix projector = ComplexMatrix::Zero(t.dim(), t.dim());
  if (basis.cols() > 0) {
    const ComplexMatrix gram = basis.adjoint() * basis;
    if ((gram - ComplexMatrix::Identity(basis.cols(), basis.cols())).norm() > 1e-10)
      fail(Errc::non_orthonormal, "subspace basis is not orthonormal");
    projector = basis * basis.adjoint();
  }
  const ComplexMatrix compressed = projector * t.matrix() * projector;
  const double defect = spectral_norm(HermitianMatrix::hermitian_part(t.matrix() - compressed));
  return defect <= tol.psd * tolerance_scale(t);
}

ComplexMatrix span_of_ranges(std::span<const PsdMatrix> rank_ones, const Tolerances& tol) {
  if (rank_ones.empty()) return ComplexMatrix();
  const int d = rank_ones.front().dim();
  ComplexMatrix vectors(d, static_cast<Eigen::Index>(rank_ones.size()));
  for (std::size_t k = 0; k < rank_ones.size(); ++k) vectors.col(k) = range_vector(rank_ones[k], tol);
  Eigen::JacobiSVD<ComplexMatrix> svd(vectors, Eigen::ComputeThinU);
  const int r = static_cast<int>((svd.singularValues().array() > tol.rank).count());
  return svd.matrixU().leftCols(r);
}

std::optional<PsdMatrix> escaping_rank_one_minorant(const PsdMatrix& t, std::span<const PsdMatrix> rank_ones,
                                                    const Tolerances& tol) {
  const Eigendecomposition e = eig(t);
  const double cutoff = tol.rank * tolerance_scale(t);
  std::vector<PsdMatrix> candidates(rank_ones.begin(), rank_ones.end());
  for (Eigen::Index k = e.eigenvalues.size() - 1; k >= 0; --k) {
    if (e.eigenvalues(k) <= cutoff) break;
    const ComplexVector v = e.eigenvectors.col(k);
    const std::optional<double> lambda = max_lambda(v, t, tol);
    if (!lambda) continue;
    PsdMatrix minorant = PsdMatrix::certify(HermitianMatrix::hermitian_part(*lambda * rank_one(v, v)), tol);
    candidates.push_back(minorant);
    const bool independent = ranges_linearly_independent(candidates, tol);
    candidates.pop_back();
    if (independent && leq(minorant, t, tol)) return minorant;
  }
  return std::nullopt;
}

}  // namespace obsorder
