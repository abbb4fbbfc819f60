// Reference oracle processes for `obsorder reconstruct`.
//
//   obsorder-oracle <d> identity            A
//   obsorder-oracle <d> affine              2A + I
//   obsorder-oracle <d> cube                A^3 (not an order-automorphism)
//   obsorder-oracle <d> negate              -A  (order-reversing)
//   obsorder-oracle <d> automorphism <file> T c(A) T* + X from a JSON file
//
// Reads {"id": k, "matrix": M} lines on stdin, answers {"id": k, "matrix": f(M)}.

#include <functional>
#include <iostream>
#include <string>

#include "obsorder/automorphism.hpp"
#include "obsorder/automorphism_json.hpp"
#include "obsorder/matrix_json.hpp"

using namespace obsorder;

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: obsorder-oracle <dim> identity|affine|cube|negate|automorphism <file>\n";
    return 2;
  }
  const int d = std::atoi(argv[1]);
  const std::string mode = argv[2];
  std::function<HermitianMatrix(const HermitianMatrix&)> f;
  try {
    if (mode == "identity") {
      f = [](const HermitianMatrix& a) { return a; };
    } else if (mode == "affine") {
      f = [d](const HermitianMatrix& a) { return 2.0 * a + HermitianMatrix::identity(d); };
    } else if (mode == "cube") {
      f = [](const HermitianMatrix& a) { return HermitianMatrix::hermitian_part(a.matrix() * a.matrix() * a.matrix()); };
    } else if (mode == "negate") {
      f = [](const HermitianMatrix& a) { return -a; };
    } else if (mode == "automorphism" && argc >= 4) {
      OrderAutomorphism phi = automorphism_from_json(read_json_file(argv[3]));
      if (phi.dim() != d) fail(Errc::dimension_mismatch, "automorphism file has the wrong dimension");
      f = [phi](const HermitianMatrix& a) { return apply(phi, a); };
    } else {
      std::cerr << "obsorder-oracle: unknown mode '" << mode << "'\n";
      return 2;
    }
  } catch (const Error& e) {
    std::cerr << "obsorder-oracle: " << e.what() << '\n';
    return 2;
  }

  for (std::string line; std::getline(std::cin, line);) {
    if (line.empty()) continue;
    try {
      const Json request = parse_json(line);
      Json response;
      response["id"] = request.at("id");
      response["matrix"] = matrix_to_json(f(hermitian_from_json(request.at("matrix"))));
      std::cout << dump_json(response) << '\n' << std::flush;
    } catch (const std::exception& e) {
      std::cerr << "obsorder-oracle: " << e.what() << '\n';
      return 1;
    }
  }
  return 0;
}
