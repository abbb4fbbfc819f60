#include <cmath>
#include <sstream>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "obsorder/harness.hpp"

namespace obsorder {

namespace {

void check_spectrum(SpectrumRange s) {
  if (!(s.lo > 0.0) || !(s.lo <= s.hi) || !std::isfinite(s.hi))
    fail(Errc::unsatisfiable_spec, "spectrum range must satisfy 0 < lo <= hi < inf");
}

double condition_number(const ComplexMatrix& t) {
  Eigen::JacobiSVD<ComplexMatrix> svd(t);
  const auto& sv = svd.singularValues();
  return sv(0) / sv(sv.size() - 1);
}

}  // namespace

HermitianMatrix Generator::hermitian(int d) {
  ComplexMatrix g(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) g(i, j) = rng_.complex_uniform();
  return HermitianMatrix::hermitian_part(g);
}

PsdMatrix Generator::psd(int d, int rank, SpectrumRange spectrum) {
  check_spectrum(spectrum);
  if (rank < 0 || rank > d) {
    std::ostringstream os;
    os << "rank " << rank << " impossible at dimension " << d;
    fail(Errc::unsatisfiable_spec, os.str());
  }
  const ComplexMatrix u = unitary(d);
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (int k = 0; k < rank; ++k) m += rng_.uniform(spectrum.lo, spectrum.hi) * u.col(k) * u.col(k).adjoint();
  PsdMatrix out = PsdMatrix::certify(HermitianMatrix::hermitian_part(m));
  if (rank_numeric(out) != rank) fail(Errc::unsatisfiable_spec, "spectrum range too wide for an exact rank");
  return out;
}

PsdMatrix Generator::rank_one(int d, SpectrumRange spectrum) { return psd(d, 1, spectrum); }

ComplexMatrix Generator::unitary(int d) {
  ComplexMatrix g(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) g(i, j) = rng_.complex_normal();
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int k = 0; k < d; ++k) {
    const double a = std::abs(r(k, k));
    if (a > 0.0) q.col(k) *= r(k, k) / a;
  }
  return q;
}

ComplexMatrix Generator::invertible(int d, double max_condition) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    ComplexMatrix t(d, d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) t(i, j) = rng_.complex_uniform();
    if (condition_number(t) <= max_condition) return t;
  }
  fail(Errc::unsatisfiable_spec, "no matrix within the condition-number cap after 1000 draws");
}

ComplexMatrix Generator::conditioned(int d, double condition) {
  if (!(condition >= 1.0)) fail(Errc::unsatisfiable_spec, "condition number must be >= 1");
  const ComplexMatrix u = unitary(d);
  const ComplexMatrix v = unitary(d);
  RealVector s(d);
  for (int k = 0; k < d; ++k) s(k) = d == 1 ? 1.0 : std::pow(condition, -static_cast<double>(k) / (d - 1));
  return u * s.cast<Complex>().asDiagonal() * v.adjoint();
}

OrderAutomorphism Generator::automorphism(int d) {
  ComplexMatrix t = invertible(d);
  const bool conjugate = rng_.coin();
  return OrderAutomorphism(std::move(t), conjugate, hermitian(d));
}

Generated generate(const GeneratorSpec& spec) {
  if (spec.dim < 1 || spec.dim > 64) fail(Errc::unsatisfiable_spec, "dimension must lie in [1, 64]");
  check_spectrum(spec.spectrum);
  if (spec.rank && (*spec.rank < 0 || *spec.rank > spec.dim))
    fail(Errc::unsatisfiable_spec, "rank must lie in [0, dim]");
  Generator gen(spec.seed);
  switch (spec.kind) {
    case GeneratorKind::hermitian: return gen.hermitian(spec.dim);
    case GeneratorKind::psd: return gen.psd(spec.dim, spec.rank.value_or(spec.dim), spec.spectrum);
    case GeneratorKind::psd_rank:
      if (!spec.rank) fail(Errc::unsatisfiable_spec, "PSD_RANK needs a rank");
      return gen.psd(spec.dim, *spec.rank, spec.spectrum);
    case GeneratorKind::rank_one: return gen.rank_one(spec.dim, spec.spectrum);
    case GeneratorKind::invertible: return gen.invertible(spec.dim);
    case GeneratorKind::unitary: return gen.unitary(spec.dim);
    case GeneratorKind::automorphism: return gen.automorphism(spec.dim);
  }
  fail(Errc::unsatisfiable_spec, "unknown generator kind");
}

std::optional<double> bisection_max_lambda(const ComplexVector& x, const PsdMatrix& b, double lo, double hi,
                                           const Tolerances& tol) {
  const ComplexMatrix xx = x * x.adjoint();
  const double floor = -tol.psd * tolerance_scale(b);
  auto feasible = [&](double lambda) {
    return eigenvalues(HermitianMatrix::hermitian_part(b.matrix() - lambda * xx))(0) >= floor;
  };
  if (!feasible(lo)) return std::nullopt;
  if (feasible(hi)) return hi;
  while (hi / lo - 1.0 > 1e-12) {
    const double mid = std::sqrt(lo * hi);
    if (mid <= lo || mid >= hi) break;
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

double gauge_distance(const ComplexMatrix& t, const ComplexMatrix& t0) {
  const Complex overlap = (t0.adjoint() * t).trace();
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
  return (t - phase * t0).norm() / t0.norm();
}

}  // namespace obsorder
