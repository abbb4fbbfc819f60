#include <cmath>

#include "doctest.h"
#include "obsorder/harness.hpp"
#include "obsorder/loewner.hpp"
#include "support.hpp"

using namespace obsorder;
using testing_support::basis;
using testing_support::diag;
using testing_support::herm;
using testing_support::psd;

namespace {

// Largest feasible lambda for lambda x x* <= B by plain bisection on
// [0, hi] with an eigenvalue check; -1 when even 1e-3 is infeasible.
double bisect(const ComplexVector& x, const HermitianMatrix& b, double hi = 1e6) {
  auto feasible = [&](double lambda) {
    const HermitianMatrix rest = b - lambda * herm(rank_one(x, x));
    return eigenvalues(rest)(0) >= -1e-9 * std::max(1.0, spectral_norm(b));
  };
  double lo = 1e-3;
  if (!feasible(lo)) return -1.0;
  for (int k = 0; k < 200 && hi - lo > 1e-13 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

TEST_CASE("leq on fixed inputs") {
  CHECK(leq(HermitianMatrix::zero(3), HermitianMatrix::identity(3)));
  CHECK_FALSE(leq(diag({1, 0}), diag({0, 1})));
  CHECK(leq(diag({1, 1}), diag({2, 3})));
  CHECK_FALSE(leq(diag({2, 3}), diag({1, 1})));
}

TEST_CASE("compare on fixed inputs") {
  Generator gen(1);
  const HermitianMatrix a = gen.hermitian(4);
  CHECK(compare(a, a).relation == Relation::equal);
  CHECK(compare(diag({1, 1}), diag({2, 3})).relation == Relation::leq);
  CHECK(compare(diag({2, 3}), diag({1, 1})).relation == Relation::geq);

  const OrderResult r = compare(diag({1, 0}), diag({0, 1}));
  CHECK(r.relation == Relation::incomparable);
  REQUIRE(r.witness_ab);
  REQUIRE(r.witness_ba);
  CHECK(std::abs(r.witness_ab->x(0)) == doctest::Approx(1.0));
  CHECK(std::abs(r.witness_ba->x(1)) == doctest::Approx(1.0));
  CHECK(r.witness_ab->gap == doctest::Approx(1.0));
  CHECK(r.witness_ba->gap == doctest::Approx(1.0));
}

TEST_CASE("leq requires equal dimensions") {
  CHECK_THROWS_AS(leq(HermitianMatrix::zero(2), HermitianMatrix::zero(3)), Error);
}

TEST_CASE("order axioms on constructed chains") {
  Generator gen(2);
  for (int d = 2; d <= 6; ++d)
    for (int trial = 0; trial < 100; ++trial) {
      const HermitianMatrix a = gen.hermitian(d);
      const HermitianMatrix b = a + gen.psd(d, gen.rng().uniform_int(1, d)).hermitian();
      const HermitianMatrix c = b + gen.psd(d, gen.rng().uniform_int(1, d)).hermitian();
      REQUIRE(leq(a, a));
      REQUIRE(leq(a, b));
      REQUIRE(leq(b, c));
      REQUIRE(leq(a, c));
      REQUIRE_FALSE(leq(b, a));
      REQUIRE(compare(a, b).relation == Relation::leq);
      REQUIRE(compare(c, a).relation == Relation::geq);
    }
}

TEST_CASE("witness gaps re-evaluate by direct quadratic forms") {
  Generator gen(3);
  for (int d = 2; d <= 6; ++d)
    for (int trial = 0; trial < 100; ++trial) {
      const HermitianMatrix a = gen.hermitian(d);
      const HermitianMatrix b = gen.hermitian(d);
      const OrderResult r = compare(a, b);
      for (const auto& [w, lhs, rhs] : {std::tuple{r.witness_ab, a, b}, std::tuple{r.witness_ba, b, a}}) {
        if (!w) continue;
        REQUIRE(std::abs(w->x.norm() - 1.0) <= 1e-12);
        const double gap = quadratic_form(lhs, w->x) - quadratic_form(rhs, w->x);
        REQUIRE(gap > 0.0);
        REQUIRE(gap == doctest::Approx(w->gap).epsilon(1e-9));
      }
    }
}

TEST_CASE("congruence monotonicity in both directions") {
  Generator gen(4);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = 2 + trial % 5;
    const ComplexMatrix t = gen.invertible(d);
    const HermitianMatrix a = gen.hermitian(d);
    const HermitianMatrix b = trial % 2 == 0 ? a + gen.psd(d, 1).hermitian() : gen.hermitian(d);
    auto cong = [&](const HermitianMatrix& m) { return herm(t * m.matrix() * t.adjoint()); };
    REQUIRE(leq(a, b) == leq(cong(a), cong(b)));
    REQUIRE(leq(b, a) == leq(cong(b), cong(a)));
  }
}

TEST_CASE("max_lambda on fixed inputs") {
  CHECK(*max_lambda(basis(2, 0), psd(HermitianMatrix::identity(2))) == doctest::Approx(1.0));
  CHECK_FALSE(max_lambda(basis(2, 1), psd(diag({1, 0}))).has_value());
  const double lambda = *max_lambda(basis(2, 0), psd(diag({4, 1})));
  CHECK(lambda == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(std::abs(lambda - bisect(basis(2, 0), diag({4, 1}))) <= 1e-8 * lambda);
}

TEST_CASE("max_lambda rejects non-unit vectors and mismatched dimensions") {
  const PsdMatrix b = psd(HermitianMatrix::identity(2));
  try {
    max_lambda(2.0 * basis(2, 0), b);
    FAIL("non-unit vector accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_unit_vector);
  }
  CHECK_THROWS_AS(max_lambda(basis(3, 0), b), Error);
}

TEST_CASE("max_lambda matches bisection and is extremal") {
  Generator gen(5);
  for (int d = 2; d <= 6; ++d)
    for (int trial = 0; trial < 40; ++trial) {
      const PsdMatrix b = gen.psd(d, gen.rng().uniform_int(1, d));
      // x = B y normalised lies in the range of B.
      ComplexVector x = b.matrix() * gen.unit_vector(d);
      x.normalize();
      const auto lambda = max_lambda(x, b);
      REQUIRE(lambda.has_value());
      const double reference = bisect(x, b);
      REQUIRE(reference > 0.0);
      REQUIRE(std::abs(*lambda - reference) <= 1e-8 * std::max(1.0, *lambda));
      const double low = eigenvalues(b - *lambda * herm(rank_one(x, x)))(0);
      REQUIRE(low >= -1e-9 * tolerance_scale(b));
      REQUIRE(low <= 1e-6 * spectral_norm(b));
      REQUIRE_FALSE(leq((1.0 + 1e-6) * *lambda * herm(rank_one(x, x)), b));
    }
}

TEST_CASE("range_dominates on fixed inputs") {
  const PsdMatrix b = psd(diag({1, 1, 0}));
  CHECK(range_dominates(psd(herm(rank_one(basis(3, 0), basis(3, 0)))), b));
  CHECK_FALSE(range_dominates(psd(herm(rank_one(basis(3, 2), basis(3, 2)))), b));
  try {
    range_dominates(b, b);
    FAIL("rank-2 A accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::rank_precondition);
  }
}

TEST_CASE("range_dominates agrees with bisection feasibility") {
  Generator gen(6);
  for (int d = 2; d <= 6; ++d)
    for (int trial = 0; trial < 100; ++trial) {
      const int k = gen.rng().uniform_int(1, d);
      // B = G G* with G of k independent columns; x in span(G) or generic.
      ComplexMatrix g(d, k);
      for (int j = 0; j < k; ++j) g.col(j) = gen.unit_vector(d);
      const PsdMatrix b = psd(herm(g * g.adjoint()));
      ComplexVector x = gen.unit_vector(d);
      if (trial % 2 == 0) {
        x = g * gen.unit_vector(k);
        x.normalize();
      }
      const PsdMatrix a = psd(herm(rank_one(x, x)));
      const double reference = bisect(x, b);
      // Skip the tolerance band where x is within 1e-2 of rng B but outside it.
      const ComplexMatrix q = range_basis(b);
      const double out_of_range = (x - q * (q.adjoint() * x)).norm();
      if (out_of_range > 1e-12 && out_of_range < 1e-2) continue;
      REQUIRE(range_dominates(a, b) == (reference > 0.0));
    }
}

TEST_CASE("range_dominates for x built from the columns of G") {
  Generator gen(7);
  for (int trial = 0; trial < 50; ++trial) {
    ComplexMatrix g(4, 2);
    g.col(0) = gen.unit_vector(4);
    g.col(1) = gen.unit_vector(4);
    ComplexVector x = g * gen.unit_vector(2);
    x.normalize();
    REQUIRE(range_dominates(psd(herm(rank_one(x, x))), psd(herm(g * g.adjoint()))));
  }
}
