#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>

#include "obsorder/harness.hpp"
#include "obsorder/loewner.hpp"
#include "obsorder/order_rank.hpp"
#include "obsorder/preservers.hpp"

namespace obsorder {

namespace {

// FNV-1a over the raw doubles of every matrix fed to a case.
class Digest {
 public:
  void add(const ComplexMatrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        add_double(m(i, j).real());
        add_double(m(i, j).imag());
      }
  }
  void add(const HermitianMatrix& m) { add(m.matrix()); }
  void add(const OrderAutomorphism& phi) {
    add(phi.transform());
    add_double(phi.conjugate() ? 1.0 : 0.0);
    add(phi.shift());
  }

  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

 private:
  void add_double(double x) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &x, sizeof x);
    for (unsigned char c : bytes) {
      h_ ^= c;
      h_ *= 0x100000001b3ULL;
    }
  }

  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

using Verdict = std::optional<std::string>;
using CaseFn = std::function<Verdict(int d, Generator& gen, Digest& digest, const Tolerances& tol)>;

std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

HermitianMatrix herm(const ComplexMatrix& m) { return HermitianMatrix::hermitian_part(m); }

// B = U_k diag(s) U_k* for the first k columns of a random unitary, so the
// range is known independently of any decomposition of B.
struct KnownRange {
  PsdMatrix b;
  ComplexMatrix basis;  // d x k, orthonormal
  ComplexMatrix complement;
};

KnownRange known_range_psd(Generator& gen, int d, int k, SpectrumRange spectrum = {}) {
  const ComplexMatrix u = gen.unitary(d);
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < k; ++j) m += gen.rng().uniform(spectrum.lo, spectrum.hi) * u.col(j) * u.col(j).adjoint();
  return {PsdMatrix::certify(herm(m)), u.leftCols(k), u.rightCols(d - k)};
}

ComplexVector random_combination(Generator& gen, const ComplexMatrix& basis) {
  ComplexVector c(basis.cols());
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = gen.rng().complex_normal();
  ComplexVector x = basis * c;
  return x / x.norm();
}

// Indefinite D = U diag(+s, -s', rest) U*.
HermitianMatrix indefinite(Generator& gen, int d) {
  const ComplexMatrix u = gen.unitary(d);
  RealVector s(d);
  s(0) = gen.rng().uniform(0.5, 2.0);
  s(1) = -gen.rng().uniform(0.5, 2.0);
  for (int k = 2; k < d; ++k) s(k) = gen.rng().uniform(-2.0, 2.0);
  return herm(u * s.cast<Complex>().asDiagonal() * u.adjoint());
}

double rel_diff(const HermitianMatrix& a, const HermitianMatrix& b) {
  return spectral_norm(a - b) / std::max({1.0, spectral_norm(a), spectral_norm(b)});
}

Verdict check_witness(const HermitianMatrix& a, const HermitianMatrix& b, const std::optional<OrderWitness>& w,
                      const Tolerances& tol) {
  if (!w) return "missing witness";
  if (std::abs(w->x.norm() - 1.0) > 1e-12) return "witness is not a unit vector";
  const double gap = quadratic_form(a, w->x) - quadratic_form(b, w->x);
  const double scale = std::max({1.0, spectral_norm(a), spectral_norm(b)});
  if (!(gap > tol.psd * scale)) return fmt("witness gap re-evaluates to %.3e", gap);
  if (std::abs(gap - w->gap) > 1e-9 * scale) return "reported witness gap differs from re-evaluation";
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Verdict order_case(int d, Generator& gen, Digest& dg, const Tolerances& tol) {
  const HermitianMatrix a = gen.hermitian(d);
  const PsdMatrix p = gen.psd(d, gen.rng().uniform_int(1, d));
  const PsdMatrix q = gen.psd(d, gen.rng().uniform_int(1, d));
  const HermitianMatrix diff = indefinite(gen, d);
  const ComplexMatrix t = gen.invertible(d);
  dg.add(a), dg.add(p), dg.add(q), dg.add(diff), dg.add(t);

  const HermitianMatrix b = a + p;
  const HermitianMatrix c = b + q;
  if (!leq(a, b, tol)) return "leq(A, A + P) is false";
  if (!leq(a, a, tol)) return "reflexivity";
  if (!leq(b, c, tol) || !leq(a, c, tol)) return "transitivity along A <= A+P <= A+P+Q";
  if (leq(b, a, tol)) return "antisymmetry: A + P <= A with P != 0";
  if (compare(a, a, tol).relation != Relation::equal) return "compare(A, A) is not EQUAL";

  const HermitianMatrix e = a + diff;
  if (leq(a, e, tol) || leq(e, a, tol)) return "leq true on an indefinite difference";
  const OrderResult r = compare(a, e, tol);
  if (r.relation != Relation::incomparable) return "indefinite difference not INCOMPARABLE";
  if (auto v = check_witness(a, e, r.witness_ab, tol)) return "witness A>B: " + *v;
  if (auto v = check_witness(e, a, r.witness_ba, tol)) return "witness B>A: " + *v;

  auto congruence = [&](const HermitianMatrix& m) { return herm(t * m.matrix() * t.adjoint()); };
  if (!leq(congruence(a), congruence(b), tol)) return "congruence breaks A <= A + P";
  if (leq(congruence(b), congruence(a), tol)) return "congruence creates A + P <= A";
  if (leq(congruence(a), congruence(e), tol) || leq(congruence(e), congruence(a), tol))
    return "congruence makes an incomparable pair comparable";
  return std::nullopt;
}

Verdict lambda_max_case(int d, Generator& gen, Digest& dg, const Tolerances& tol) {
  const int k = gen.rng().uniform_int(1, d);
  const KnownRange kr = known_range_psd(gen, d, k);
  const ComplexVector x = random_combination(gen, kr.basis);
  dg.add(kr.b), dg.add(ComplexMatrix(x));

  const std::optional<double> lambda = max_lambda(x, kr.b, tol);
  if (!lambda) return "max_lambda reports infeasible for x in the range of B";
  const HermitianMatrix xx = herm(rank_one(x, x));
  const double norm_b = spectral_norm(kr.b);
  const double floor = -tol.psd * tolerance_scale(kr.b);
  const double min_at = eigenvalues(kr.b - *lambda * xx)(0);
  if (min_at < floor || min_at > 1e-6 * norm_b) return fmt("B - lambda* xx* has smallest eigenvalue %.3e", min_at);
  if (leq((1.0 + 1e-6) * *lambda * xx, kr.b, tol)) return "(1 + 1e-6) lambda* is still feasible";
  const std::optional<double> bis = bisection_max_lambda(x, kr.b, 1e-3, 1e6, tol);
  if (!bis) return "bisection oracle finds no feasible lambda";
  if (std::abs(*bis - *lambda) > 1e-8 * std::max(1.0, *lambda))
    return fmt("closed form %.12g vs bisection %.12g", *lambda, *bis);
  return std::nullopt;
}

Verdict range_domination_case(int d, Generator& gen, Digest& dg, const Tolerances& tol) {
  const int k = gen.rng().uniform_int(1, d);
  const KnownRange kr = known_range_psd(gen, d, k);
  ComplexVector x;
  if (k == d || gen.rng().coin()) {
    x = random_combination(gen, kr.basis);
  } else {
    // Keep clear of the tolerance band around rng B: the out-of-range
    // component is at least 1e-2.
    do {
      x = gen.unit_vector(d);
    } while ((kr.complement.adjoint() * x).norm() < 1e-2);
  }
  const PsdMatrix a = PsdMatrix::certify(gen.rng().uniform(0.5, 2.0) * herm(rank_one(x, x)));
  dg.add(a), dg.add(kr.b);

  const bool fast = range_dominates(a, kr.b, tol);
  const bool oracle = bisection_max_lambda(x, kr.b, 1e-3, 1e6, tol).has_value();
  if (fast != oracle) return fast ? "range criterion true, bisection finds no lambda" : "range criterion false, bisection finds lambda";
  return std::nullopt;
}

Verdict rank_witness_case(int d, Generator& gen, Digest& dg, const Tolerances& tol) {
  const int r = gen.rng().uniform_int(1, d);
  const PsdMatrix a = gen.psd(d, r);
  dg.add(a);
  if (rank_numeric(a, tol) != r) return "generated rank differs from rank_numeric";
  for (int n = 1; n <= d - 2; ++n) {
    const auto w = rank_gt_np1_witness(a, n, tol);
    if (w.has_value() != (r > n + 1)) {
      std::ostringstream os;
      os << "rank " << r << ", n " << n << ": witness " << (w ? "found" : "missing");
      return os.str();
    }
    if (w) {
      if (auto v = rank_witness_violation(a, *w, tol)) return "witness invariant: " + *v;
    }
  }
  return std::nullopt;
}

Verdict rank_one_case(int d, Generator& gen, Digest& dg, const Tolerances& tol) {
  const int r = gen.rng().uniform_int(1, std::min(3, d));
  const PsdMatrix a = gen.psd(d, r);
  dg.add(a);
  const RankOneVerdict v = is_rank_one_by_order(a, 50, gen.rng().next_u64(), tol);
  if (v.rank_one != (r == 1)) return "interval totality disagrees with rank";
  if (!v.rank_one) {
    if (!v.counterexample) return "no incomparable pair for rank >= 2";
    const auto& [p1, p2] = *v.counterexample;
    if (!leq(p1, a, tol) || !leq(p2, a, tol)) return "counterexample pair not inside [0, A]";
    if (compare(p1, p2, tol).relation != Relation::incomparable) return "counterexample pair is comparable";
  }
  return std::nullopt;
}

// A_1..A_n rank-one with independent ranges; H_n their span.
struct Frame {
  std::vector<PsdMatrix> rank_ones;
  ComplexMatrix basis;  // orthonormal basis of H_n
};

Frame random_frame(Generator& gen, int d, int n) {
  ComplexMatrix v(d, n);
  std::vector<PsdMatrix> ones;
  for (int k = 0; k < n; ++k) {
    v.col(k) = gen.unit_vector(d);
    ones.push_back(PsdMatrix::certify(gen.rng().uniform(0.5, 2.0) * herm(rank_one(v.col(k), v.col(k)))));
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(v);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, n);
  return {std::move(ones), std::move(q)};
}

Verdict acts_on_case(int d, Generator& gen, Digest& dg, const Tolerances& tol) {
  const int n = gen.rng().uniform_int(1, d - 1);
  const Frame frame = random_frame(gen, d, n);
  const bool inside = gen.rng().coin();
  PsdMatrix t = gen.psd(d, gen.rng().uniform_int(n + 1, d));
  if (inside) {
    const ComplexMatrix p = frame.basis * frame.basis.adjoint();
    t = PsdMatrix::certify(herm(p * gen.psd(d, d).matrix() * p));
  }
  dg.add(t), dg.add(frame.basis);

  if (acts_on(t, frame.basis, tol) != inside) return "acts_on disagrees with construction";
  const auto escaping = escaping_rank_one_minorant(t, frame.rank_ones, tol);
  if (escaping.has_value() == inside) return "order characterisation of acts_on fails";
  if (escaping) {
    if (!leq(*escaping, t, tol)) return "escaping minorant is not below T";
    std::vector<PsdMatrix> all = frame.rank_ones;
    all.push_back(*escaping);
    if (!ranges_linearly_independent(all, tol)) return "escaping minorant range is dependent";
  }
  return std::nullopt;
}

Verdict cone_automorphism_case(int d, Generator& gen, Digest& dg, const Tolerances& tol) {
  const ComplexMatrix tm = gen.invertible(d);
  const bool conj = gen.rng().coin();
  const OrderAutomorphism phi(tm, conj, HermitianMatrix::zero(d));
  dg.add(phi);
  auto img = [&](const HermitianMatrix& m) { return PsdMatrix::certify(apply(phi, m), tol); };

  // Order in both directions on the cone.
  const PsdMatrix a = gen.psd(d, gen.rng().uniform_int(1, d));
  const PsdMatrix b = PsdMatrix::certify(a.hermitian() + gen.psd(d, gen.rng().uniform_int(1, d)));
  if (!leq(img(a), img(b), tol) || leq(img(b), img(a), tol)) return "cone order not preserved";
  const PsdMatrix u = gen.rank_one(d);
  const PsdMatrix v = gen.rank_one(d);
  if (compare(img(u), img(v), tol).relation != Relation::incomparable) return "incomparable rank-ones become comparable";

  // Rank, and rank one through interval totality.
  for (int r = 1; r <= d; ++r) {
    const PsdMatrix m = gen.psd(d, r);
    if (rank_numeric(img(m), tol) != r) return "rank not preserved";
    if (is_rank_one_by_order(img(m), 20, gen.rng().next_u64(), tol).rank_one != (r == 1))
      return "totality of [0, phi(A)] disagrees with rank";
  }

  // Linear independence of ranges, with a dependent system half the time.
  const int n = gen.rng().uniform_int(2, d);
  Frame frame = random_frame(gen, d, n);
  const bool dependent = gen.rng().coin();
  if (dependent) {
    const ComplexVector w = random_combination(gen, frame.basis.leftCols(n - 1));
    frame.rank_ones.back() = PsdMatrix::certify(herm(rank_one(w, w)));
  }
  std::vector<PsdMatrix> images;
  for (const auto& m : frame.rank_ones) images.push_back(img(m));
  const bool indep = ranges_linearly_independent(frame.rank_ones, tol);
  if (indep == dependent) return "independence check disagrees with construction";
  if (ranges_linearly_independent(images, tol) != indep) return "independence of ranges not preserved";

  // T acts on H_n iff phi(T) acts on H_n'.
  if (!dependent && n < d) {
    const ComplexMatrix hn_image = span_of_ranges(images, tol);
    const ComplexMatrix p = frame.basis * frame.basis.adjoint();
    const PsdMatrix inside = PsdMatrix::certify(herm(p * gen.psd(d, d).matrix() * p));
    const PsdMatrix outside = gen.psd(d, d);
    if (!acts_on(img(inside), hn_image, tol)) return "phi(T) does not act on H_n' although T acts on H_n";
    if (acts_on(img(outside), hn_image, tol)) return "phi(T) acts on H_n' although T does not act on H_n";
  }

  // Additive and positively homogeneous on the cone.
  const double s = gen.rng().uniform(0.1, 5.0);
  if (rel_diff(apply(phi, a.hermitian() + b.hermitian()), apply(phi, a) + apply(phi, b)) > 1e-8) return "not additive on the cone";
  if (rel_diff(apply(phi, s * a.hermitian()), s * apply(phi, a)) > 1e-8) return "not positively homogeneous";
  return std::nullopt;
}

Verdict order_both_ways_case(int d, Generator& gen, Digest& dg, const Tolerances& tol) {
  const OrderAutomorphism phi = gen.automorphism(d);
  const OrderAutomorphism inv = invert(phi);
  dg.add(phi);
  for (int k = 0; k < 20; ++k) {
    const HermitianMatrix a = gen.hermitian(d);
    HermitianMatrix b = a;
    switch (k % 3) {
      case 0: b = a + gen.psd(d, gen.rng().uniform_int(1, d)); break;
      case 1: b = a + indefinite(gen, d); break;
      default: b = gen.hermitian(d); break;
    }
    const HermitianMatrix fa = apply(phi, a);
    const HermitianMatrix fb = apply(phi, b);
    if (leq(a, b, tol) != leq(fa, fb, tol) || leq(b, a, tol) != leq(fb, fa, tol))
      return "phi does not preserve the order in both directions";
    if (leq(apply(inv, a), apply(inv, b), tol) != leq(a, b, tol)) return "phi^-1 does not preserve the order";
  }
  return std::nullopt;
}

Verdict round_trip_case(int d, Generator& gen, Digest& dg, const Tolerances& tol) {
  const OrderAutomorphism phi = gen.automorphism(d);
  dg.add(phi);
  FunctionOracle oracle = automorphism_oracle(phi);
  ReconstructOptions options;
  options.tol = tol;
  const ReconstructionReport rep = reconstruct(oracle, options);
  const double t_err = gauge_distance(rep.recovered.transform(), phi.transform());
  if (t_err > 1e-6) return fmt("T recovered with gauge-optimal error %.3e", t_err);
  const double x_err = spectral_norm(rep.recovered.shift() - phi.shift());
  if (x_err > 1e-8) return fmt("X recovered with error %.3e", x_err);
  if (rep.recovered.conjugate() != phi.conjugate() && !rep.conjugate_degenerate) return "conjugate flag wrong";
  if (rep.max_residual > 1e-6) return fmt("validation residual %.3e", rep.max_residual);
  if (rep.probes_used > 2 * d + 21) return "too many oracle calls";

  // Same map, different global phase: same report.
  const double theta = gen.rng().uniform(0.0, 6.283185307179586);
  const OrderAutomorphism rotated(std::polar(1.0, theta) * phi.transform(), phi.conjugate(), phi.shift());
  FunctionOracle rotated_oracle = automorphism_oracle(rotated);
  const ReconstructionReport rep2 = reconstruct(rotated_oracle, options);
  if ((rep2.recovered.transform() - rep.recovered.transform()).norm() > 1e-9 * phi.transform().norm() ||
      rep2.recovered.conjugate() != rep.recovered.conjugate() ||
      spectral_norm(rep2.recovered.shift() - rep.recovered.shift()) > 1e-12 * tolerance_scale(phi.shift()))
    return "reconstruction is not gauge invariant";

  // psi = phi - phi(0) is additive on the cone.
  const PsdMatrix p = gen.psd(d, gen.rng().uniform_int(1, d));
  const PsdMatrix q = gen.psd(d, gen.rng().uniform_int(1, d));
  auto psi = [&](const HermitianMatrix& m) { return oracle.query(m) - phi.shift(); };
  if (rel_diff(psi(p.hermitian() + q.hermitian()), psi(p) + psi(q)) > 1e-8) return "psi not additive on the cone";
  return std::nullopt;
}

Verdict ill_conditioned_case(int d, Generator& gen, Digest& dg, const Tolerances& tol) {
  const double cond = std::pow(10.0, gen.rng().uniform(4.0, 6.0));
  const OrderAutomorphism phi(gen.conditioned(d, cond), gen.rng().coin(), gen.hermitian(d));
  dg.add(phi);
  FunctionOracle oracle = automorphism_oracle(phi);
  ReconstructOptions options;
  options.tol = tol;
  options.residual_limit = 1e-3;
  const ReconstructionReport rep = reconstruct(oracle, options);
  const double t_err = gauge_distance(rep.recovered.transform(), phi.transform());
  if (t_err > 1e-3) return fmt("T recovered with gauge-optimal error %.3e", t_err);
  if (rep.recovered.conjugate() != phi.conjugate() && !rep.conjugate_degenerate) return "conjugate flag wrong";
  return std::nullopt;
}

// Unitary-scalar automorphism lambda U c(.) U* + mu I, or a generic one.
struct PreserverInstance {
  OrderAutomorphism phi;
  bool scalar_gram;
  bool scalar_shift;
  bool zero_shift;
  ComplexMatrix u;
  double lambda;
  double mu;
};

PreserverInstance preserver_instance(Generator& gen, int d, int variant) {
  const ComplexMatrix u = gen.unitary(d);
  const double lambda = gen.rng().uniform(0.5, 2.0);
  const double mu = gen.rng().uniform(-2.0, 2.0);
  const bool conj = gen.rng().coin();
  switch (variant % 4) {
    case 0:  // lambda U c(.) U* + mu I
      return {OrderAutomorphism(std::sqrt(lambda) * u, conj, mu * HermitianMatrix::identity(d)), true, true, false, u,
              lambda, mu};
    case 1:  // unitary-scalar T, non-scalar X
      return {OrderAutomorphism(std::sqrt(lambda) * u, conj, gen.hermitian(d)), true, false, false, u, lambda, mu};
    case 2:  // non-scalar T*T, scalar X
      return {OrderAutomorphism(gen.invertible(d), conj, mu * HermitianMatrix::identity(d)), false, true, false, u,
              lambda, mu};
    default:  // lambda U c(.) U*, X = 0
      return {OrderAutomorphism(std::sqrt(lambda) * u, conj, HermitianMatrix::zero(d)), true, true, true, u, lambda,
              0.0};
  }
}

Verdict check_counterexample(const PreserverClassification& c, const OrderAutomorphism& phi, const Tolerances& tol) {
  if (!c.counterexample) return "negative verdict without counterexample";
  if (c.canonical_form) return "negative verdict carries a canonical form";
  const Counterexample& ce = *c.counterexample;
  const bool before = relation_holds(c.kind, ce.a, ce.b, tol);
  const bool after = relation_holds(c.kind, apply(phi, ce.a), apply(phi, ce.b), tol);
  if (before != ce.holds_before || after != ce.holds_after || before == after)
    return "counterexample does not re-verify";
  return std::nullopt;
}

Verdict check_canonical_form(const PreserverClassification& c, const PreserverInstance& inst, bool expect_mu) {
  if (!c.canonical_form) return "positive verdict without canonical form";
  if (c.counterexample) return "positive verdict carries a counterexample";
  const CanonicalForm& f = *c.canonical_form;
  if ((f.u - inst.u).norm() > 1e-9) return "U not recovered";
  if (f.antiunitary != inst.phi.conjugate()) return "unitary/antiunitary misclassified";
  if (std::abs(f.lambda - inst.lambda) > 1e-9 * inst.lambda) return "lambda not recovered";
  if (expect_mu != f.mu.has_value()) return "mu presence wrong";
  if (f.mu && std::abs(*f.mu - inst.mu) > 1e-9 * std::max(1.0, std::abs(inst.mu))) return "mu not recovered";
  return std::nullopt;
}

Verdict commutativity_case(int d, Generator& gen, Digest& dg, const Tolerances& tol) {
  const int variant = gen.rng().uniform_int(0, 2);
  const PreserverInstance inst = preserver_instance(gen, d, variant);
  dg.add(inst.phi);
  const auto c = preserves_relation(inst.phi, RelationKind::commutativity, 1000, gen.rng().next_u64(), tol);
  const bool expected = inst.scalar_gram && inst.scalar_shift;
  if (c.preserves != expected) return "commutativity verdict misclassified";
  return expected ? check_canonical_form(c, inst, true) : check_counterexample(c, inst.phi, tol);
}

// All nonempty proper unions of eigenvalue groups; groups are given.
bool brute_force_complementary(const std::vector<ComplexMatrix>& ga, const std::vector<ComplexMatrix>& gb, int d) {
  auto unions = [d](const std::vector<ComplexMatrix>& groups) {
    std::vector<ComplexMatrix> out;
    const unsigned n = static_cast<unsigned>(groups.size());
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
      ComplexMatrix m(d, 0);
      for (unsigned k = 0; k < n; ++k) {
        if (!(mask & (1u << k))) continue;
        ComplexMatrix next(d, m.cols() + groups[k].cols());
        next << m, groups[k];
        m = next;
      }
      out.push_back(m);
    }
    return out;
  };
  for (const auto& p : unions(ga))
    for (const auto& q : unions(gb)) {
      ComplexMatrix s(d, p.cols() + q.cols());
      s << p, q;
      if (column_rank(s, 1e-8) < s.cols()) return false;
    }
  return true;
}

// Matrix with eigenvalues drawn from {1, 2, 3} along a random unitary; the
// groups of equal eigenvalues are returned with it.
std::pair<HermitianMatrix, std::vector<ComplexMatrix>> grouped_spectrum(Generator& gen, int d) {
  const ComplexMatrix u = gen.unitary(d);
  std::array<std::vector<int>, 3> members;
  for (int k = 0; k < d; ++k) members[gen.rng().uniform_int(0, 2)].push_back(k);
  RealVector s(d);
  std::vector<ComplexMatrix> groups;
  for (int g = 0; g < 3; ++g) {
    if (members[g].empty()) continue;
    ComplexMatrix cols(d, static_cast<Eigen::Index>(members[g].size()));
    for (std::size_t k = 0; k < members[g].size(); ++k) {
      s(members[g][k]) = g + 1.0;
      cols.col(k) = u.col(members[g][k]);
    }
    groups.push_back(cols);
  }
  return {herm(u * s.cast<Complex>().asDiagonal() * u.adjoint()), groups};
}

Verdict complementarity_case(int d, Generator& gen, Digest& dg, const Tolerances& tol) {
  const double c = gen.rng().uniform(-3.0, 3.0);
  const HermitianMatrix b = gen.hermitian(d);
  dg.add(b);
  if (!complementary(c * HermitianMatrix::identity(d), b, tol)) return "scalar not complementary to B";

  // Non-scalar A: a B sharing an eigenvector breaks complementarity.
  HermitianMatrix a = gen.hermitian(d);
  dg.add(a);
  const ComplexVector v = eig(a).eigenvectors.col(0);
  const HermitianMatrix shared = herm(rank_one(v, v));
  if (complementary(a, shared, tol)) return "non-scalar A complementary to a B sharing its eigenvector";
  if (complementary(shared, a, tol)) return "complementarity not symmetric";

  // Enumeration cross-check on grouped spectra.
  const auto [ga, groups_a] = grouped_spectrum(gen, d);
  const auto [gb, groups_b] = grouped_spectrum(gen, d);
  dg.add(ga), dg.add(gb);
  if (complementary(ga, gb, tol) != brute_force_complementary(groups_a, groups_b, d))
    return "complementary disagrees with full subset enumeration";

  const int variant = gen.rng().uniform_int(0, 2);
  const PreserverInstance inst = preserver_instance(gen, d, variant);
  dg.add(inst.phi);
  const auto cls = preserves_relation(inst.phi, RelationKind::complementarity, 1000, gen.rng().next_u64(), tol);
  const bool expected = inst.scalar_gram && inst.scalar_shift;
  if (cls.preserves != expected) return "complementarity verdict misclassified";
  return expected ? check_canonical_form(cls, inst, true) : check_counterexample(cls, inst.phi, tol);
}

Verdict orthogonality_case(int d, Generator& gen, Digest& dg, const Tolerances& tol) {
  const int variant = gen.rng().uniform_int(0, 3);
  const PreserverInstance inst = preserver_instance(gen, d, variant);
  dg.add(inst.phi);
  const auto c = preserves_relation(inst.phi, RelationKind::orthogonality, 1000, gen.rng().next_u64(), tol);
  const bool expected = inst.scalar_gram && inst.zero_shift;
  if (c.preserves != expected) return "orthogonality verdict misclassified";
  if (!expected) {
    if (auto v = check_counterexample(c, inst.phi, tol)) return v;
    if (!c.counterexample->holds_before) return "counterexample is not an orthogonal pair";
    return std::nullopt;
  }
  if (auto v = check_canonical_form(c, inst, false)) return v;
  // Direct check on sampled orthogonal pairs.
  for (int k = 0; k < 5; ++k) {
    const ComplexVector x = gen.unit_vector(d);
    const ComplexMatrix rest = ComplexMatrix::Identity(d, d) - rank_one(x, x);
    const HermitianMatrix p = herm(rank_one(x, x));
    const HermitianMatrix q = herm(rest * gen.hermitian(d).matrix() * rest);
    if (!orthogonal(p, q, tol)) return "constructed pair not orthogonal";
    if (!orthogonal(apply(inst.phi, p), apply(inst.phi, q), tol)) return "images of an orthogonal pair not orthogonal";
  }
  return std::nullopt;
}

struct Suite {
  std::string_view name;
  int min_dim;
  CaseFn fn;
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all{
      {"order", 2, order_case},
      {"lambda-max", 1, lambda_max_case},
      {"lemma-rng", 2, range_domination_case},
      {"lemma-rank", 1, rank_witness_case},
      {"rank-one", 1, rank_one_case},
      {"acts-on", 2, acts_on_case},
      {"thm1", 2, cone_automorphism_case},
      {"thm2-order", 2, order_both_ways_case},
      {"thm2", 2, round_trip_case},
      {"thm2-illcond", 2, ill_conditioned_case},
      {"cor3", 2, commutativity_case},
      {"cor4", 2, complementarity_case},
      {"cor5", 2, orthogonality_case},
  };
  return all;
}

const Suite& find_suite(std::string_view name) {
  for (const auto& s : suites())
    if (s.name == name) return s;
  fail(Errc::unknown_suite, "unknown suite '" + std::string(name) + "'");
}

std::optional<FailureRecord> run_case(const Suite& suite, int dim, std::uint64_t seed, const Tolerances& tol) {
  Generator gen(seed);
  Digest digest;
  Verdict verdict;
  if (dim < suite.min_dim || dim > 64) {
    std::ostringstream os;
    os << "suite needs dimension in [" << suite.min_dim << ", 64]";
    verdict = os.str();
  } else {
    try {
      verdict = suite.fn(dim, gen, digest, tol);
    } catch (const Error& e) {
      verdict = std::string("error: ") + e.what();
    }
  }
  if (!verdict) return std::nullopt;
  return FailureRecord{seed, dim, digest.hex(), *verdict};
}

}  // namespace

std::span<const std::string_view> suite_names() noexcept {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> out;
    for (const auto& s : suites()) out.push_back(s.name);
    return out;
  }();
  return names;
}

std::uint64_t case_seed(std::uint64_t suite_seed, int dim, int trial) noexcept {
  return mix_seed(mix_seed(suite_seed, static_cast<std::uint64_t>(dim)), static_cast<std::uint64_t>(trial));
}

SuiteReport run_suite(std::string_view name, std::span<const int> dims, int trials, std::uint64_t seed,
                      const Tolerances& tol) {
  tol.validate();
  const Suite& suite = find_suite(name);
  if (trials < 0) fail(Errc::invalid_argument, "trial count must be non-negative");
  const auto start = std::chrono::steady_clock::now();
  SuiteReport report{std::string(name), std::vector<int>(dims.begin(), dims.end()), trials, {}, 0.0};
  for (int d : dims)
    for (int k = 0; k < trials; ++k)
      if (auto f = run_case(suite, d, case_seed(seed, d, k), tol)) report.failures.push_back(std::move(*f));
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::optional<FailureRecord> replay_case(std::string_view name, int dim, std::uint64_t seed, const Tolerances& tol) {
  return run_case(find_suite(name), dim, seed, tol);
}

Json SuiteReport::to_json(bool with_timing) const {
  Json j;
  j["suite"] = suite;
  j["dims"] = dims;
  j["trials"] = trials;
  j["passed"] = passed();
  Json f = Json::array();
  for (const auto& r : failures)
    f.push_back(Json{{"seed", r.seed}, {"dim", r.dim}, {"digest", r.digest}, {"property", r.property}});
  j["failures"] = std::move(f);
  if (with_timing) j["elapsed_ms"] = elapsed_ms;
  return j;
}

}  // namespace obsorder
