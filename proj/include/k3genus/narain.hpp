#pragma once

#include <complex>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "k3genus/linalg.hpp"
#include "k3genus/puiseux.hpp"

namespace k3genus {

/**
 * Torus data for the sigma model on C^D / L with a constant B-field:
 * `basis` columns generate the rank-2D lattice L in R^(2D), `b_field` is a
 * skew-symmetric endomorphism of R^(2D). All entries are exact rationals;
 * irrational tori are out of scope for the series machinery.
 */
struct TorusSpec {
  int dim_D = 1;
  RationalMatrix basis;    // 2D x 2D, columns = generators of L
  RationalMatrix b_field;  // 2D x 2D, skew-symmetric

  void validate() const;
};

// Generators of the dual lattice L* = { a : a . l in Z for all l in L },
// returned as the inverse transpose of the basis (columns = generators).
RationalMatrix dual_lattice(const TorusSpec& spec);

/**
 * A charge lattice vector. The embedding carries an overall 1/sqrt(2) that
 * would leave the rationals, so the stored coordinates are sqrt(2) * gamma;
 * every inner product divides by two at the end and stays exact.
 */
struct ChargeVector {
  std::vector<long long> coords;      // integer coordinates in the generator basis
  std::vector<Rational> left_scaled;   // sqrt(2) * gamma_L
  std::vector<Rational> right_scaled;  // sqrt(2) * gamma_R
  Rational left_norm2;                 // gamma_L . gamma_L
  Rational right_norm2;                // gamma_R . gamma_R
};

/**
 * The charge lattice of the toroidal theory built from (L, B):
 *   Gamma = { (mu - B lambda + lambda, mu - B lambda - lambda) / sqrt(2) },
 * lambda in L, mu in L*. Generators are the lambda-columns (mu = 0) followed
 * by the mu-columns (lambda = 0). Construction verifies that the bilinear
 * form <g, g'> = gamma_L.gamma_L' - gamma_R.gamma_R' is integral, even and
 * unimodular on the generators; with exact input arithmetic the Gram matrix
 * in this basis is identically [[0, I], [I, 0]].
 */
class NarainLattice {
 public:
  static NarainLattice from_torus(const TorusSpec& spec);

  int dim_D() const { return dim_D_; }
  std::size_t rank() const { return generators_[0].size(); }

  // 4D x 4D; columns are generators, rows 0..2D-1 hold sqrt(2)*gamma_L and
  // rows 2D..4D-1 hold sqrt(2)*gamma_R.
  const RationalMatrix& generator_matrix() const { return generators_; }

  const RationalMatrix& gram() const { return gram_; }                  // Minkowski
  const RationalMatrix& euclidean_gram() const { return euclid_gram_; }  // positive definite

  ChargeVector vector_from_coords(const std::vector<long long>& coords) const;

 private:
  NarainLattice() = default;

  int dim_D_ = 0;
  RationalMatrix generators_;
  RationalMatrix gram_;
  RationalMatrix euclid_gram_;
};

// Enumeration cap; reads K3GENUS_ENUM_CAP from the environment, default 1e7.
long long enumeration_cap();

/**
 * All lattice vectors with (gamma_L^2 + gamma_R^2)/2 <= cutoff, each exactly
 * once, in a canonical order (total norm, then coordinates). Completeness
 * comes from the coefficient box |x_i| <= sqrt(2*cutoff / lambda_min) with
 * lambda_min a certified lower bound on the smallest eigenvalue of the
 * Euclidean Gram matrix; inside the box, exact partial-sum bounds from the
 * LDL^T form prune the walk. Throws CutoffTooLarge when the predicted or
 * actual vector count exceeds the cap.
 */
std::vector<ChargeVector> enumerate_vectors(const NarainLattice& lattice,
                                            const Rational& cutoff, long long cap = 0);

/**
 * Numerator of the lattice partition sum: sum over Gamma of
 * q^(gamma_L^2/2) qbar^(gamma_R^2/2), exact for q-exp + qbar-exp <= order
 * (inclusive). The 1/|eta|^(4D) factor stays symbolic: eta_power_per_side
 * records the power of eta(tau) (and of the conjugate) to divide by.
 */
struct LatticeSumSeries {
  std::map<std::pair<Rational, Rational>, Rational> terms;  // (q-exp, qbar-exp) -> coeff
  std::optional<Rational> order;  // nullopt = exact everywhere (single monomials)
  int eta_power_per_side = 0;

  std::string canonical_text() const;
};

LatticeSumSeries lattice_sum_series(const NarainLattice& lattice, const Rational& order,
                                    long long cap = 0);

struct LatticeEvalResult {
  std::complex<double> value{0.0, 0.0};
  double tail_bound = 0.0;
};

// Numeric partition sum including the |eta(tau)|^(-4D) factor, summed over
// vectors with total norm/2 <= cutoff, with a Gaussian tail estimate. Throws
// PrecisionLoss when the tail estimate exceeds 1e-9 of the partial sum.
LatticeEvalResult lattice_sum_eval(const NarainLattice& lattice, std::complex<double> tau,
                                   const Rational& cutoff, long long cap = 0);

}  // namespace k3genus
