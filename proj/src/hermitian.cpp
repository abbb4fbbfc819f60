#include "obsorder/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace obsorder {

namespace {

void require_square(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << "matrix is " << m.rows() << "x" << m.cols();
    fail(Errc::not_square, os.str());
  }
  if (m.rows() < 1) fail(Errc::not_square, "matrix dimension must be at least 1");
}

// Largest-magnitude entry real positive; first index wins on exact ties.
void fix_phase(Eigen::Ref<ComplexVector> v) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs > 0.0) {
    v *= std::conj(v(best)) / best_abs;
    v(best) = std::abs(v(best));
  }
}

}  // namespace

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m) {
  require_square(m);
  if (!all_finite(m)) fail(Errc::non_finite, "matrix has NaN or infinite entries");
  const ComplexMatrix anti = (m - m.adjoint()) / 2.0;
  const double asym = anti.norm();
  const double limit = kAsymmetryLimit * std::max(1.0, m.norm());
  if (asym > limit) {
    std::ostringstream os;
    os << "anti-Hermitian part has norm " << asym << " (limit " << limit << ")";
    fail(Errc::not_hermitian, os.str());
  }
  m_ = (m + m.adjoint()) / 2.0;
  correction_ = asym;
}

HermitianMatrix HermitianMatrix::hermitian_part(const ComplexMatrix& m) {
  require_square(m);
  if (!all_finite(m)) fail(Errc::non_finite, "matrix has NaN or infinite entries");
  ComplexMatrix h = (m + m.adjoint()) / 2.0;
  const double correction = ((m - m.adjoint()) / 2.0).norm();
  return HermitianMatrix(Trusted{}, std::move(h), correction);
}

HermitianMatrix HermitianMatrix::zero(int dim) {
  return HermitianMatrix(Trusted{}, ComplexMatrix::Zero(dim, dim), 0.0);
}

HermitianMatrix HermitianMatrix::identity(int dim) {
  return HermitianMatrix(Trusted{}, ComplexMatrix::Identity(dim, dim), 0.0);
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& values) {
  ComplexMatrix m = ComplexMatrix::Zero(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return HermitianMatrix(std::move(m));
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a, b);
  return HermitianMatrix(HermitianMatrix::Trusted{}, a.m_ + b.m_, 0.0);
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a, b);
  return HermitianMatrix(HermitianMatrix::Trusted{}, a.m_ - b.m_, 0.0);
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  return HermitianMatrix(HermitianMatrix::Trusted{}, s * a.m_, 0.0);
}

HermitianMatrix HermitianMatrix::operator-() const {
  return HermitianMatrix(Trusted{}, -m_, 0.0);
}

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << "dimensions " << a.dim() << " and " << b.dim() << " differ";
    fail(Errc::dimension_mismatch, os.str());
  }
}

Eigendecomposition eig(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) fail(Errc::numerical_failure, "eigensolver did not converge");
  Eigendecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index j = 0; j < out.eigenvectors.cols(); ++j) fix_phase(out.eigenvectors.col(j));
  return out;
}

RealVector eigenvalues(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) fail(Errc::numerical_failure, "eigensolver did not converge");
  return solver.eigenvalues();
}

double spectral_norm(const HermitianMatrix& m) {
  const RealVector ev = eigenvalues(m);
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

double tolerance_scale(const HermitianMatrix& m) { return std::max(1.0, spectral_norm(m)); }

PsdMatrix PsdMatrix::certify(HermitianMatrix m, const Tolerances& tol) {
  const RealVector ev = eigenvalues(m);
  const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  const double floor = -tol.psd * std::max(1.0, norm);
  if (ev(0) < floor) {
    std::ostringstream os;
    os << "smallest eigenvalue " << ev(0) << " below " << floor;
    fail(Errc::not_psd, os.str());
  }
  return PsdMatrix(std::move(m), ev(0));
}

std::optional<PsdMatrix> PsdMatrix::try_certify(HermitianMatrix m, const Tolerances& tol) {
  const RealVector ev = eigenvalues(m);
  const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  if (ev(0) < -tol.psd * std::max(1.0, norm)) return std::nullopt;
  return PsdMatrix(std::move(m), ev(0));
}

PsdMatrix sqrt_psd(const PsdMatrix& a, const Tolerances& tol) {
  const Eigendecomposition e = eig(a);
  const double cutoff = tol.recon * tolerance_scale(a);
  RealVector roots(e.eigenvalues.size());
  for (Eigen::Index i = 0; i < roots.size(); ++i)
    roots(i) = e.eigenvalues(i) > cutoff ? std::sqrt(e.eigenvalues(i)) : 0.0;
  const ComplexMatrix r = e.eigenvectors * roots.asDiagonal() * e.eigenvectors.adjoint();
  return PsdMatrix::certify(HermitianMatrix::hermitian_part(r), tol);
}

HermitianMatrix pinv(const HermitianMatrix& m, const Tolerances& tol) {
  const Eigendecomposition e = eig(m);
  const double norm = std::max(std::abs(e.eigenvalues(0)), std::abs(e.eigenvalues(e.eigenvalues.size() - 1)));
  const double cutoff = tol.rank * std::max(1.0, norm);
  RealVector inv(e.eigenvalues.size());
  for (Eigen::Index i = 0; i < inv.size(); ++i)
    inv(i) = std::abs(e.eigenvalues(i)) > cutoff ? 1.0 / e.eigenvalues(i) : 0.0;
  return HermitianMatrix::hermitian_part(e.eigenvectors * inv.asDiagonal() * e.eigenvectors.adjoint());
}

int rank_numeric(const HermitianMatrix& m, const Tolerances& tol) {
  const RealVector ev = eigenvalues(m);
  const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  const double cutoff = tol.rank * std::max(1.0, norm);
  return static_cast<int>((ev.array().abs() > cutoff).count());
}

ComplexMatrix range_basis(const HermitianMatrix& m, const Tolerances& tol) {
  const Eigendecomposition e = eig(m);
  const double norm = std::max(std::abs(e.eigenvalues(0)), std::abs(e.eigenvalues(e.eigenvalues.size() - 1)));
  const double cutoff = tol.rank * std::max(1.0, norm);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < e.eigenvalues.size(); ++i)
    if (std::abs(e.eigenvalues(i)) > cutoff) keep.push_back(i);
  ComplexMatrix basis(m.dim(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) basis.col(k) = e.eigenvectors.col(keep[k]);
  return basis;
}

ComplexMatrix rank_one(const ComplexVector& x, const ComplexVector& y) {
  if (x.size() != y.size()) {
    std::ostringstream os;
    os << "vector lengths " << x.size() << " and " << y.size() << " differ";
    fail(Errc::dimension_mismatch, os.str());
  }
  return x * y.adjoint();
}

PsdMatrix rank_one_psd(const ComplexVector& x, const Tolerances& tol) {
  return PsdMatrix::certify(HermitianMatrix::hermitian_part(rank_one(x, x)), tol);
}

int column_rank(const ComplexMatrix& columns, double cutoff) {
  if (columns.cols() == 0 || columns.rows() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(columns);
  return static_cast<int>((svd.singularValues().array() > cutoff).count());
}

double quadratic_form(const HermitianMatrix& a, const ComplexVector& x) {
  if (x.size() != a.dim()) fail(Errc::dimension_mismatch, "vector length differs from matrix dimension");
  return x.dot(a.matrix() * x).real();
}

}  // namespace obsorder
