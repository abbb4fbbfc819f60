#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "obsorder/error.hpp"
#include "obsorder/tolerances.hpp"

namespace obsorder {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// A square complex matrix equal to its conjugate transpose.
///
/// The checking constructor accepts inputs whose anti-Hermitian part is at
/// most 1e-12 relative (JSON round-trip noise), stores the Hermitian part and
/// records the size of the correction. Anything more asymmetric is rejected.
class HermitianMatrix {
 public:
  static constexpr double kAsymmetryLimit = 1e-12;

  explicit HermitianMatrix(ComplexMatrix m);

  /// (M + M*)/2 without the asymmetry check. Used for results of arithmetic
  /// whose Hermitian-ness holds in exact arithmetic (e.g. T A T* + X).
  static HermitianMatrix hermitian_part(const ComplexMatrix& m);

  static HermitianMatrix zero(int dim);
  static HermitianMatrix identity(int dim);
  static HermitianMatrix diagonal(const std::vector<double>& values);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  /// Frobenius norm of the anti-Hermitian part removed at construction.
  double symmetrization_correction() const noexcept { return correction_; }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a);
  HermitianMatrix operator-() const;

 private:
  struct Trusted {};
  HermitianMatrix(Trusted, ComplexMatrix m, double correction)
      : m_(std::move(m)), correction_(correction) {}

  ComplexMatrix m_;
  double correction_ = 0.0;
};

/// A Hermitian matrix certified positive semidefinite by eigendecomposition.
/// The only way to obtain one is through certify()/try_certify().
class PsdMatrix {
 public:
  static PsdMatrix certify(HermitianMatrix m, const Tolerances& tol = default_tolerances());
  static std::optional<PsdMatrix> try_certify(HermitianMatrix m,
                                              const Tolerances& tol = default_tolerances());

  const HermitianMatrix& hermitian() const noexcept { return base_; }
  operator const HermitianMatrix&() const noexcept { return base_; }
  const ComplexMatrix& matrix() const noexcept { return base_.matrix(); }
  int dim() const noexcept { return base_.dim(); }
  double min_eig() const noexcept { return min_eig_; }

 private:
  PsdMatrix(HermitianMatrix base, double min_eig) : base_(std::move(base)), min_eig_(min_eig) {}

  HermitianMatrix base_;
  double min_eig_;
};

struct Eigendecomposition {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // orthonormal columns, matching eigenvalues
};

/// Hermitian eigendecomposition (Householder tridiagonalisation + implicit QR).
/// Each eigenvector is normalised so that its largest-magnitude entry is real
/// and positive. Throws Errc::numerical_failure if the iteration fails.
Eigendecomposition eig(const HermitianMatrix& m);

RealVector eigenvalues(const HermitianMatrix& m);

double spectral_norm(const HermitianMatrix& m);

/// Largest singular value of an arbitrary square or rectangular matrix.
double operator_norm(const ComplexMatrix& m);

/// max(1, ||M||): the scale every relative tolerance is multiplied by.
double tolerance_scale(const HermitianMatrix& m);

PsdMatrix sqrt_psd(const PsdMatrix& a, const Tolerances& tol = default_tolerances());

/// Moore-Penrose pseudoinverse via the eigenbasis; eigenvalues with
/// |lambda| <= tol.rank * scale map to zero.
HermitianMatrix pinv(const HermitianMatrix& m, const Tolerances& tol = default_tolerances());

int rank_numeric(const HermitianMatrix& m, const Tolerances& tol = default_tolerances());

/// Orthonormal basis of the range, one column per eigenvalue above the rank
/// threshold (ascending eigenvalue order). Zero columns for the zero matrix.
ComplexMatrix range_basis(const HermitianMatrix& m, const Tolerances& tol = default_tolerances());

/// The operator x (x) y : z -> <z, y> x, i.e. entries x_i * conj(y_j).
ComplexMatrix rank_one(const ComplexVector& x, const ComplexVector& y);

/// x (x) x as a certified PSD matrix.
PsdMatrix rank_one_psd(const ComplexVector& x, const Tolerances& tol = default_tolerances());

/// Number of singular values above `cutoff` (absolute).
int column_rank(const ComplexMatrix& columns, double cutoff);

/// <A x, x>, real for Hermitian A.
double quadratic_form(const HermitianMatrix& a, const ComplexVector& x);

bool all_finite(const ComplexMatrix& m);

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b);

}  // namespace obsorder
