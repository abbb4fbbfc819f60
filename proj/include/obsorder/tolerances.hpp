#pragma once

namespace obsorder {

/// Numerical thresholds shared by every module. All of them are relative to
/// the spectral norm of the operand, and absolute once that norm drops below
/// one (see tolerance_scale()).
struct Tolerances {
  double psd = 1e-9;     // eigenvalue floor for positive semidefiniteness
  double rank = 1e-8;    // eigenvalue / singular value cutoff for rank
  double range = 1e-8;   // residual cutoff for range membership
  double recon = 1e-10;  // reconstruction residuals (eig, sqrt)

  /// Throws Errc::invalid_argument unless every field lies in (0, 1).
  void validate() const;
};

/// Process-wide defaults. Immutable.
const Tolerances& default_tolerances() noexcept;

}  // namespace obsorder
