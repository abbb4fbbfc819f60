#include "doctest.h"
#include "obsorder/harness.hpp"
#include "obsorder/hermitian.hpp"
#include "obsorder/random.hpp"
#include "support.hpp"

using namespace obsorder;
using testing_support::basis;
using testing_support::diag;
using testing_support::herm;

namespace {

ComplexMatrix random_matrix(Rng& rng, int rows, int cols) {
  ComplexMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  return g;
}

}  // namespace

TEST_CASE("construction symmetrizes small asymmetry and rejects large") {
  ComplexMatrix m(2, 2);
  m << 1.0, Complex(2.0, 1.0), Complex(2.0, -1.0 + 1e-14), 3.0;
  const HermitianMatrix h(m);
  CHECK(h.symmetrization_correction() > 0.0);
  CHECK(h(0, 1) == std::conj(h(1, 0)));

  m(1, 0) = Complex(2.0, -0.5);
  CHECK_THROWS_AS(HermitianMatrix{m}, Error);
  try {
    HermitianMatrix bad(m);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_hermitian);
  }
}

TEST_CASE("construction rejects non-square and non-finite input") {
  auto code_of = [](const ComplexMatrix& m) {
    try {
      HermitianMatrix h(m);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::internal_inconsistency;
  };
  CHECK(code_of(ComplexMatrix::Zero(2, 3)) == Errc::not_square);
  CHECK(code_of(ComplexMatrix::Zero(0, 0)) == Errc::not_square);
  ComplexMatrix nan = ComplexMatrix::Identity(2, 2);
  nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK(code_of(nan) == Errc::non_finite);
}

TEST_CASE("eig on small fixed inputs") {
  const Eigendecomposition e = eig(diag({3.0, 1.0}));
  CHECK(e.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(e.eigenvalues(1) == doctest::Approx(3.0));
  CHECK(std::abs(e.eigenvectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(e.eigenvectors(0, 1)) == doctest::Approx(1.0));

  ComplexMatrix swap(2, 2);
  swap << 0.0, 1.0, 1.0, 0.0;
  const RealVector ev = eigenvalues(HermitianMatrix(swap));
  CHECK(ev(0) == doctest::Approx(-1.0));
  CHECK(ev(1) == doctest::Approx(1.0));
}

TEST_CASE("eig residual, orthonormality and phase convention on random input") {
  Generator gen(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 2 + trial % 7;
    const HermitianMatrix m = gen.hermitian(d);
    const Eigendecomposition e = eig(m);
    const ComplexMatrix& v = e.eigenvectors;
    const ComplexMatrix rebuilt = v * e.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
    REQUIRE(operator_norm(m.matrix() - rebuilt) <= 1e-10 * tolerance_scale(m));
    REQUIRE(operator_norm(v.adjoint() * v - ComplexMatrix::Identity(d, d)) <= 1e-10);
    for (int k = 1; k < d; ++k) REQUIRE(e.eigenvalues(k - 1) <= e.eigenvalues(k));
    for (int k = 0; k < d; ++k) {
      Eigen::Index at = 0;
      v.col(k).cwiseAbs().maxCoeff(&at);
      REQUIRE(v(at, k).imag() == 0.0);
      REQUIRE(v(at, k).real() > 0.0);
    }
  }
}

TEST_CASE("sqrt_psd") {
  const PsdMatrix r = sqrt_psd(PsdMatrix::certify(diag({4.0, 9.0})));
  CHECK(operator_norm(r.matrix() - diag({2.0, 3.0}).matrix()) <= 1e-14);
  CHECK(operator_norm(sqrt_psd(PsdMatrix::certify(HermitianMatrix::zero(3))).matrix()) == 0.0);

  Rng rng(5);
  const Tolerances& tol = default_tolerances();
  for (int d = 2; d <= 8; ++d) {
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix g = random_matrix(rng, d, d);
      const PsdMatrix a = PsdMatrix::certify(herm(g.adjoint() * g));
      const PsdMatrix s = sqrt_psd(a);
      REQUIRE(operator_norm(s.matrix() * s.matrix() - a.matrix()) <= 1e-9 * spectral_norm(a));
      REQUIRE(operator_norm(s.matrix() * s.matrix() - a.matrix()) <= tol.recon * tolerance_scale(a));
    }
  }
}

TEST_CASE("pinv") {
  CHECK(operator_norm(pinv(diag({2.0, 0.0})).matrix() - diag({0.5, 0.0}).matrix()) <= 1e-15);
  CHECK(operator_norm(pinv(HermitianMatrix::identity(3)).matrix() - ComplexMatrix::Identity(3, 3)) <= 1e-15);

  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix g = random_matrix(rng, 4, 2);
    const HermitianMatrix m = herm(g * g.adjoint());
    const ComplexMatrix p = pinv(m).matrix();
    REQUIRE(operator_norm(m.matrix() * p * m.matrix() - m.matrix()) <= 1e-9 * tolerance_scale(m));
    REQUIRE(operator_norm(p * m.matrix() * p - p) <= 1e-9 * std::max(1.0, operator_norm(p)));
  }
}

TEST_CASE("rank_numeric") {
  CHECK(rank_numeric(diag({1.0, 0.0, 0.0})) == 1);
  CHECK(rank_numeric(diag({1e-15, 1.0})) == 1);
  CHECK(rank_numeric(HermitianMatrix::zero(4)) == 0);

  Rng rng(13);
  for (int d = 2; d <= 8; ++d)
    for (int k = 1; k <= d; ++k) {
      const ComplexMatrix g = random_matrix(rng, d, k);
      REQUIRE(column_rank(g, 1e-10) == k);
      REQUIRE(rank_numeric(herm(g * g.adjoint())) == k);
    }
}

TEST_CASE("range_basis") {
  const ComplexMatrix b = range_basis(diag({1.0, 0.0}));
  REQUIRE(b.cols() == 1);
  CHECK(std::abs(b(0, 0)) == doctest::Approx(1.0));
  CHECK(range_basis(HermitianMatrix::zero(3)).cols() == 0);

  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexVector x = rng.unit_vector(2 + trial % 5);
    const ComplexMatrix u = range_basis(herm(rank_one(x, x)));
    REQUIRE(u.cols() == 1);
    REQUIRE(std::abs(u.col(0).dot(x)) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("rank_one") {
  ComplexMatrix e11 = ComplexMatrix::Zero(2, 2);
  e11(0, 0) = 1.0;
  CHECK(rank_one(basis(2, 0), basis(2, 0)) == e11);
  ComplexMatrix e12 = ComplexMatrix::Zero(2, 2);
  e12(0, 1) = 1.0;
  CHECK(rank_one(basis(2, 0), basis(2, 1)) == e12);
  CHECK_THROWS_AS(rank_one(basis(2, 0), basis(3, 0)), Error);

  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 5;
    const ComplexVector x = random_matrix(rng, d, 1).col(0);
    const ComplexVector y = random_matrix(rng, d, 1).col(0);
    const ComplexVector z = random_matrix(rng, d, 1).col(0);
    // <z, y> = sum_i z_i conj(y_i)
    Complex zy = 0.0;
    for (int i = 0; i < d; ++i) zy += z(i) * std::conj(y(i));
    REQUIRE((rank_one(x, y) * z - zy * x).norm() <= 1e-12 * std::max(1.0, (zy * x).norm()));
  }
}

TEST_CASE("certified PSD matrices have non-negative quadratic forms") {
  Generator gen(23);
  const Tolerances& tol = default_tolerances();
  for (int d = 2; d <= 6; ++d) {
    const PsdMatrix a = gen.psd(d, 1 + d / 2);
    for (int k = 0; k < 1000; ++k) {
      const ComplexVector x = gen.unit_vector(d);
      REQUIRE(quadratic_form(a, x) >= -tol.psd * spectral_norm(a));
    }
  }
}

TEST_CASE("certify rejects indefinite matrices") {
  CHECK_FALSE(PsdMatrix::try_certify(diag({1.0, -0.1})).has_value());
  CHECK(PsdMatrix::try_certify(diag({1.0, -1e-12})).has_value());
  try {
    PsdMatrix::certify(diag({1.0, -0.1}));
    FAIL("certify accepted an indefinite matrix");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_psd);
  }
}

TEST_CASE("arithmetic keeps Hermitian structure") {
  const HermitianMatrix a = diag({1.0, 2.0});
  const HermitianMatrix b = diag({0.5, -1.0});
  CHECK((a + b).matrix() == diag({1.5, 1.0}).matrix());
  CHECK((a - b).matrix() == diag({0.5, 3.0}).matrix());
  CHECK((2.0 * a).matrix() == diag({2.0, 4.0}).matrix());
  CHECK((-a).matrix() == diag({-1.0, -2.0}).matrix());
  CHECK_THROWS_AS(a + HermitianMatrix::identity(3), Error);
}

TEST_CASE("tolerance validation") {
  Tolerances t;
  CHECK_NOTHROW(t.validate());
  t.psd = 0.0;
  CHECK_THROWS_AS(t.validate(), Error);
  t.psd = 1e-9;
  t.rank = 1.5;
  CHECK_THROWS_AS(t.validate(), Error);
}
