#pragma once

#include <initializer_list>
#include <vector>

#include "obsorder/hermitian.hpp"

namespace testing_support {

using namespace obsorder;

inline HermitianMatrix diag(std::initializer_list<double> values) { return HermitianMatrix::diagonal(values); }

inline ComplexVector basis(int d, int j) { return ComplexVector::Unit(d, j); }

inline HermitianMatrix herm(const ComplexMatrix& m) { return HermitianMatrix::hermitian_part(m); }

inline PsdMatrix psd(const HermitianMatrix& m) { return PsdMatrix::certify(m); }

}  // namespace testing_support
