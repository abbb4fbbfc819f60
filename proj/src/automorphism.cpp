#include "obsorder/automorphism.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "obsorder/random.hpp"

namespace obsorder {

namespace {

ComplexMatrix conj_if(const ComplexMatrix& m, bool conjugate) { return conjugate ? m.conjugate() : m; }

ComplexMatrix projector_onto(const ComplexVector& v) { return rank_one(v, v); }

HermitianMatrix random_hermitian(Rng& rng, int d) {
  ComplexMatrix g(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) g(i, j) = rng.complex_uniform();
  return HermitianMatrix::hermitian_part(g);
}

// G G* with G of shape d x k; k random in [1, d].
HermitianMatrix random_psd(Rng& rng, int d) {
  const int k = rng.uniform_int(1, d);
  ComplexMatrix g(d, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < d; ++i) g(i, j) = rng.complex_uniform();
  return HermitianMatrix::hermitian_part(g * g.adjoint());
}

// Relative distance between an oracle answer and a prediction.
double relative_residual(const HermitianMatrix& answer, const ComplexMatrix& prediction) {
  const double diff = spectral_norm(HermitianMatrix::hermitian_part(answer.matrix() - prediction));
  return diff / tolerance_scale(answer);
}

class CountingOracle {
 public:
  explicit CountingOracle(Oracle& inner) : inner_(inner) {}

  HermitianMatrix query(const HermitianMatrix& a) {
    ++calls_;
    HermitianMatrix out = inner_.query(a);
    if (out.dim() != inner_.dim()) {
      std::ostringstream os;
      os << "oracle answered with dimension " << out.dim() << ", expected " << inner_.dim();
      fail(Errc::oracle_not_automorphic, os.str());
    }
    return out;
  }

  int calls() const noexcept { return calls_; }

 private:
  Oracle& inner_;
  int calls_ = 0;
};

// Solves C ~ w a b* + conj(w) b a* for complex w in the least-squares sense.
Complex cross_term_phase(const ComplexMatrix& c, const ComplexVector& a, const ComplexVector& b) {
  const ComplexMatrix m1 = a * b.adjoint();
  const ComplexMatrix m2 = m1.adjoint();
  const ComplexMatrix basis1 = m1 + m2;
  const ComplexMatrix basis2 = Complex(0.0, 1.0) * (m1 - m2);
  auto inner = [](const ComplexMatrix& p, const ComplexMatrix& q) { return (p.adjoint() * q).trace().real(); };
  Eigen::Matrix2d gram;
  gram << inner(basis1, basis1), inner(basis1, basis2), inner(basis2, basis1), inner(basis2, basis2);
  const Eigen::Vector2d rhs(inner(basis1, c), inner(basis2, c));
  const Eigen::Vector2d sol = gram.ldlt().solve(rhs);
  return {sol(0), sol(1)};
}

}  // namespace

OrderAutomorphism::OrderAutomorphism(ComplexMatrix t, bool conjugate, HermitianMatrix x, const Tolerances& tol)
    : t_(std::move(t)), conjugate_(conjugate), x_(std::move(x)) {
  if (t_.rows() != t_.cols()) fail(Errc::not_square, "T must be square");
  if (t_.rows() != x_.dim()) fail(Errc::dimension_mismatch, "T and X have different dimensions");
  if (!all_finite(t_)) fail(Errc::non_finite, "T has non-finite entries");
  Eigen::JacobiSVD<ComplexMatrix> svd(t_);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (!(smin > tol.rank * sv(0))) {
    std::ostringstream os;
    os << "T is not invertible (singular values " << sv(0) << " .. " << smin << ")";
    fail(Errc::singular_transform, os.str());
  }
}

OrderAutomorphism OrderAutomorphism::identity(int dim) {
  return OrderAutomorphism(ComplexMatrix::Identity(dim, dim), false, HermitianMatrix::zero(dim));
}

HermitianMatrix apply(const OrderAutomorphism& phi, const HermitianMatrix& a) {
  require_same_dim(phi.shift(), a);
  const ComplexMatrix& t = phi.transform();
  return HermitianMatrix::hermitian_part(t * conj_if(a.matrix(), phi.conjugate()) * t.adjoint() +
                                         phi.shift().matrix());
}

OrderAutomorphism compose(const OrderAutomorphism& f, const OrderAutomorphism& g) {
  require_same_dim(f.shift(), g.shift());
  // f(g(A)) = T_f c_f(T_g) c_f(c_g(A)) c_f(T_g)* T_f* + f(X_g)
  ComplexMatrix t = f.transform() * conj_if(g.transform(), f.conjugate());
  return OrderAutomorphism(std::move(t), f.conjugate() != g.conjugate(), apply(f, g.shift()));
}

OrderAutomorphism invert(const OrderAutomorphism& phi) {
  // B = T c(A) T* + X  =>  A = c(T^-1) c(B - X) c(T^-1)*
  const ComplexMatrix t_inv = conj_if(phi.transform().inverse(), phi.conjugate());
  const ComplexMatrix x = -(t_inv * conj_if(phi.shift().matrix(), phi.conjugate()) * t_inv.adjoint());
  return OrderAutomorphism(t_inv, phi.conjugate(), HermitianMatrix::hermitian_part(x));
}

FunctionOracle automorphism_oracle(OrderAutomorphism phi) {
  const int d = phi.dim();
  return FunctionOracle(d, [phi = std::move(phi)](const HermitianMatrix& a) { return apply(phi, a); });
}

ReconstructionReport reconstruct(Oracle& oracle, const ReconstructOptions& options) {
  const Tolerances& tol = options.tol;
  const int d = oracle.dim();
  if (d < 2) fail(Errc::invalid_argument, "reconstruction needs dimension >= 2");
  CountingOracle probe(oracle);

  auto not_automorphic = [](const std::string& what) { fail(Errc::oracle_not_automorphic, what); };
  auto psi = [&](const ComplexVector& v, const HermitianMatrix& x) {
    return probe.query(HermitianMatrix::hermitian_part(projector_onto(v))) - x;
  };

  const HermitianMatrix x = probe.query(HermitianMatrix::zero(d));

  // psi(e_j e_j*) = t_j t_j*, t_j the j-th column of T up to a phase.
  std::vector<ComplexVector> columns;
  for (int j = 0; j < d; ++j) {
    const HermitianMatrix answer = psi(ComplexVector::Unit(d, j), x);
    if (!PsdMatrix::try_certify(answer, tol)) {
      not_automorphic("image of basis projector " + std::to_string(j) + " is not positive semidefinite");
    }
    const int r = rank_numeric(answer, tol);
    if (r != 1) {
      not_automorphic("image of basis projector " + std::to_string(j) + " has rank " + std::to_string(r));
    }
    const Eigendecomposition e = eig(answer);
    const Eigen::Index top = e.eigenvalues.size() - 1;
    columns.push_back(std::sqrt(e.eigenvalues(top)) * e.eigenvectors.col(top));
  }

  // Relative phases against column 0 from the cross term of (e_0 + e_j)/sqrt2.
  const ComplexMatrix t0t0 = rank_one(columns[0], columns[0]);
  for (int j = 1; j < d; ++j) {
    const ComplexVector v = (ComplexVector::Unit(d, 0) + ComplexVector::Unit(d, j)) / std::sqrt(2.0);
    const HermitianMatrix answer = psi(v, x);
    const ComplexMatrix cross = 2.0 * answer.matrix() - t0t0 - rank_one(columns[j], columns[j]);
    const Complex w = cross_term_phase(cross, columns[0], columns[j]);
    if (!(std::abs(w) > 1e-6)) not_automorphic("no consistent relative phase for column " + std::to_string(j));
    columns[j] *= std::conj(w) / std::abs(w);
  }

  ComplexMatrix t(d, d);
  for (int j = 0; j < d; ++j) t.col(j) = columns[j];

  // Linear versus conjugate-linear: w = (e_0 + i e_1)/sqrt2 separates them.
  const ComplexVector w = (ComplexVector::Unit(d, 0) + Complex(0.0, 1.0) * ComplexVector::Unit(d, 1)) / std::sqrt(2.0);
  const HermitianMatrix answer_w = psi(w, x);
  const ComplexVector tw = t * w;
  const ComplexVector tw_conj = t * w.conjugate();
  const double linear_fit = relative_residual(answer_w, rank_one(tw, tw));
  const double conj_fit = relative_residual(answer_w, rank_one(tw_conj, tw_conj));
  const bool linear_ok = linear_fit <= options.residual_limit;
  const bool conj_ok = conj_fit <= options.residual_limit;
  if (!linear_ok && !conj_ok) {
    std::ostringstream os;
    os << "neither linear (residual " << linear_fit << ") nor conjugate-linear (residual " << conj_fit
       << ") form fits the superposition probe";
    not_automorphic(os.str());
  }
  const bool conjugate = !linear_ok;

  std::optional<OrderAutomorphism> recovered;
  try {
    recovered.emplace(t, conjugate, x, tol);
  } catch (const Error& e) {
    not_automorphic(std::string("recovered T is unusable: ") + e.what());
  }

  Rng rng(options.validation_seed);
  double max_residual = 0.0;
  for (int k = 0; k < options.validation_probes; ++k) {
    const HermitianMatrix a = random_hermitian(rng, d);
    const HermitianMatrix answer = probe.query(a);
    max_residual = std::max(max_residual, relative_residual(answer, apply(*recovered, a).matrix()));
  }
  if (max_residual > options.residual_limit) {
    std::ostringstream os;
    os << "validation residual " << max_residual << " exceeds " << options.residual_limit;
    not_automorphic(os.str());
  }

  return ReconstructionReport{
      std::move(*recovered),
      "largest-magnitude entry of the first column of T is real and positive",
      linear_ok && conj_ok,
      max_residual,
      probe.calls(),
  };
}

OrderCheckReport check_order_automorphism(Oracle& oracle, int trials, std::uint64_t seed, const Tolerances& tol) {
  const int d = oracle.dim();
  Rng rng(seed);
  OrderCheckReport report;
  report.trials = trials;
  for (int trial = 0; trial < trials; ++trial) {
    const HermitianMatrix a = random_hermitian(rng, d);
    HermitianMatrix b = a + random_psd(rng, d);
    if (trial % 2 == 1) {
      // Incomparable: subtract a PSD part supported orthogonally to the added one.
      const ComplexVector u = rng.unit_vector(d);
      const ComplexMatrix proj = ComplexMatrix::Identity(d, d) - rank_one(u, u);
      const HermitianMatrix p = HermitianMatrix::hermitian_part(rank_one(u, u));
      const HermitianMatrix q = HermitianMatrix::hermitian_part(proj * random_psd(rng, d).matrix() * proj);
      b = a + rng.uniform(0.1, 1.0) * p - q;
    }
    const HermitianMatrix fa = oracle.query(a);
    const HermitianMatrix fb = oracle.query(b);
    require_same_dim(a, fa);
    require_same_dim(b, fb);
    const OrderResult before = compare(a, b, tol);
    const OrderResult after = compare(fa, fb, tol);
    auto holds = [](Relation r, bool forward) {
      return r == Relation::equal || r == (forward ? Relation::leq : Relation::geq);
    };
    for (bool forward : {true, false}) {
      if (holds(before.relation, forward) == holds(after.relation, forward)) continue;
      std::ostringstream os;
      os << (forward ? "A <= B" : "B <= A") << (holds(before.relation, forward) ? " holds" : " fails")
         << " but the images give " << to_string(after.relation);
      std::optional<OrderWitness> witness = forward ? after.witness_ab : after.witness_ba;
      if (!witness) witness = forward ? before.witness_ab : before.witness_ba;
      report.violations.push_back(OrderViolation{trial, a, b, fa, fb, os.str(), witness});
      break;
    }
  }
  return report;
}

}  // namespace obsorder
