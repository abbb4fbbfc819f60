#include "doctest.h"
#include "obsorder/automorphism_json.hpp"
#include "obsorder/harness.hpp"
#include "obsorder/matrix_json.hpp"

using namespace obsorder;

namespace {

Errc code_of(const std::string& text) {
  try {
    hermitian_from_json(parse_json(text));
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::internal_inconsistency;
}

}  // namespace

TEST_CASE("matrix JSON round trip is exact") {
  Generator gen(3);
  for (int d = 1; d <= 6; ++d) {
    const HermitianMatrix m = gen.hermitian(d);
    const HermitianMatrix back = hermitian_from_json(parse_json(dump_json(matrix_to_json(m))));
    REQUIRE(back.matrix() == m.matrix());
  }
}

TEST_CASE("entries may be bare reals") {
  const HermitianMatrix m = hermitian_from_json(parse_json(R"({"dim":2,"entries":[[1,0],[0,2.5]]})"));
  CHECK(m(1, 1) == Complex(2.5, 0.0));
  const HermitianMatrix c = hermitian_from_json(parse_json(R"({"dim":2,"entries":[[1,[0,1]],[[0,-1],2]]})"));
  CHECK(c(0, 1) == Complex(0.0, 1.0));
}

TEST_CASE("malformed matrix JSON") {
  CHECK(code_of(R"({"entries":[[1]]})") == Errc::parse_error);
  CHECK(code_of(R"({"dim":2,"entries":[[1,0]]})") == Errc::not_square);
  CHECK(code_of(R"({"dim":2,"entries":[[1,0],[0]]})") == Errc::not_square);
  CHECK(code_of(R"({"dim":2,"entries":[[1,5],[0,1]]})") == Errc::not_hermitian);
  CHECK(code_of(R"({"dim":0,"entries":[]})") == Errc::invalid_argument);
  CHECK(code_of(R"({"dim":1,"entries":[["x"]]})") == Errc::parse_error);
  CHECK(code_of("{not json") == Errc::parse_error);
}

TEST_CASE("floats are written with 17 significant digits") {
  Json j;
  j["x"] = 0.1;
  j["n"] = 3;
  j["nan"] = std::numeric_limits<double>::quiet_NaN();
  CHECK(dump_json(j) == R"({"x":0.10000000000000001,"n":3,"nan":null})");
}

TEST_CASE("automorphism file round trip") {
  Generator gen(8);
  const OrderAutomorphism phi = gen.automorphism(3);
  const OrderAutomorphism back = automorphism_from_json(parse_json(dump_json(automorphism_to_json(phi))));
  CHECK(back.transform() == phi.transform());
  CHECK(back.conjugate() == phi.conjugate());
  CHECK(back.shift().matrix() == phi.shift().matrix());

  const Json singular = parse_json(
      R"({"T":{"dim":2,"entries":[[1,1],[1,1]]},"conjugate":false,"X":{"dim":2,"entries":[[0,0],[0,0]]}})");
  try {
    automorphism_from_json(singular);
    FAIL("singular T accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::singular_transform);
  }
}
