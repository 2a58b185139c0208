#pragma once

#include <vector>

#include "k3genus/rational.hpp"

namespace k3genus {

// Small dense matrices over the rationals, row-major.
using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix identity_matrix(std::size_t n);
RationalMatrix transpose(const RationalMatrix& m);
RationalMatrix matmul(const RationalMatrix& a, const RationalMatrix& b);
std::vector<Rational> matvec(const RationalMatrix& a, const std::vector<Rational>& x);

Rational determinant(RationalMatrix m);

// Throws SingularBasis when the matrix is not invertible.
RationalMatrix inverse(RationalMatrix m);

bool is_skew_symmetric(const RationalMatrix& m);

// LDL^T decomposition of a symmetric positive definite matrix: g = L D L^T
// with L unit lower triangular. Throws InvariantViolation when a pivot is
// not positive.
struct LdltDecomposition {
  RationalMatrix lower;            // unit lower triangular
  std::vector<Rational> diagonal;  // positive pivots
};
LdltDecomposition ldlt(const RationalMatrix& g);

// Certified rational lower bound on the smallest eigenvalue of a symmetric
// positive definite matrix: returns lambda > 0 such that g - lambda*I is
// still positive definite (checked exactly via LDL^T pivots).
Rational min_eigenvalue_lower_bound(const RationalMatrix& g);

}  // namespace k3genus
