#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3genus/modforms.hpp"
#include "k3genus/narain.hpp"

namespace k3genus {

enum class Sector { ns, ns_tilde, r, r_tilde };
enum class TheoryKind { toroidal, z2_orbifold };

Sector sector_from_name(const std::string& name);  // "NS", "NS-tilde", "R", "R-tilde"
std::string sector_name(Sector s);

// Sector assembly is driven by this table: NS -> theta_3, NS-tilde -> theta_4,
// R -> theta_2, R-tilde -> theta_1.
int sector_theta_index(Sector s);

struct Theory {
  TheoryKind kind = TheoryKind::toroidal;
  NarainLattice lattice;
};

// ---------------------------------------------------------------------------
// Expanded sector series in the four variables (q, y, qbar, ybar).

struct SectorKey {
  Rational q;        // q-exponent
  Rational qbar;     // qbar-exponent
  long long y2 = 0;  // 2 * y-exponent
  long long ybar2 = 0;

  friend bool operator<(const SectorKey& a, const SectorKey& b) {
    if (a.q != b.q) return a.q < b.q;
    if (a.qbar != b.qbar) return a.qbar < b.qbar;
    if (a.y2 != b.y2) return a.y2 < b.y2;
    return a.ybar2 < b.ybar2;
  }
  friend bool operator==(const SectorKey& a, const SectorKey& b) {
    return a.q == b.q && a.qbar == b.qbar && a.y2 == b.y2 && a.ybar2 == b.ybar2;
  }
};

/**
 * Sparse exact series in q, y, qbar, ybar. Exactness is tracked by total
 * order: every true term with q-exponent + qbar-exponent <= total_order is
 * stored (inclusive bound), everything above may be missing.
 */
class FourVariableSeries {
 public:
  explicit FourVariableSeries(const Rational& total_order) : order_(total_order) {}

  const Rational& total_order() const { return order_; }
  const std::map<SectorKey, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const SectorKey& key, const Rational& coeff);

  Rational coefficient(const SectorKey& key) const;

  // One term per line: "q qbar y ybar coeff", all as num/den, sorted.
  std::string canonical_text() const;

 private:
  std::map<SectorKey, Rational> terms_;
  Rational order_;
};

// First key at which the two series differ, considering terms with total
// order <= through only. Throws when either series is not exact that far.
std::optional<SectorKey> first_mismatch(const FourVariableSeries& a,
                                        const FourVariableSeries& b,
                                        const Rational& through);

// Spectral-flow substitutions on expanded series. Terms map as
//   (a, b) -> (a + b/2 + D/8, b + D/2)        [NS -> R]
//   (a, b) -> (a - b/2 + D/8, b - D/2)        [R -> NS]
// on each side, and z -> z + 1/2 multiplies a term by (-1)^(b - bbar),
// which requires b - bbar to be an integer.
//
// The substitution can pull unstored terms below the old truncation. For the
// sectors built here every term obeys the width bound
//   q-exp >= (y-exp)^2 / (2D) - D/8
// on each side (theta blocks contribute at least b^2/(2D) by Cauchy-Schwarz;
// all other factors are y-free with q-exponent >= -D/8), so a series exact
// through total order M stays exact through
//   flowed_total_order(M, D) = M + D/4 - ceil_sqrt(D*(M + D/4)).
FourVariableSeries flow_ns_to_r(const FourVariableSeries& f, int dim_D);
FourVariableSeries flow_r_to_ns(const FourVariableSeries& f, int dim_D);
FourVariableSeries half_period_shift(const FourVariableSeries& f);

Rational flowed_total_order(const Rational& order, int dim_D);
// Smallest integer order M with flowed_total_order(M, D) >= through.
Rational flow_guard_order(const Rational& through, int dim_D);

// ---------------------------------------------------------------------------
// Sector functions as finite sums of factorized products.

/**
 * One summand: prefactor * lattice(q, qbar) * hol(q, y) * antihol(qbar, ybar).
 * The lattice factor couples q to qbar (it is the charge-lattice partition
 * sum, or the trivial monomial for the orbifold quotient summands); the
 * holomorphic and antiholomorphic factors carry all y-dependence.
 */
struct SectorSummand {
  Rational prefactor = 1;
  LatticeSumSeries lattice;  // empty terms map = the constant 1, exact
  PuiseuxSeries hol;
  PuiseuxSeries antihol;
  int theta_index = 0;  // metadata: theta function behind the y-dependence
  bool twisted = false;
};

struct SectorFunction {
  TheoryKind kind = TheoryKind::toroidal;
  Sector label = Sector::ns;
  int dim_D = 1;
  Rational central_charge;  // 3D
  std::vector<SectorSummand> summands;

  // Expand into the canonical four-variable form. The result's total order
  // is derived from the factor truncations and is at least the order the
  // sector was assembled at.
  FourVariableSeries expanded() const;
  // Expansion pruned at min(natural exactness, cap).
  FourVariableSeries expanded_through(const Rational& cap) const;
  Rational expanded_total_order() const;
};

// Z_NS = Z_Gamma |theta_3/eta|^(2D), and cyclically for the other sectors,
// assembled so the expanded form is exact through total order `order`.
SectorFunction torus_sector(const Theory& theory, Sector s, const Rational& order);

// Ramond-tilde sector of the Z2 orbifold of the given toroidal theory:
//   1/2 [ Z_Gamma |theta_1/eta|^(2D) + |2 theta_2(z)/theta_2(0)|^(2D)
//         + |2 theta_4(z)/theta_4(0)|^(2D) + |2 theta_3(z)/theta_3(0)|^(2D) ].
SectorFunction orbifold_rtilde(const Theory& toroidal, const Rational& order);

// Other orbifold sectors, derived from the R-tilde sector by the inverse
// spectral-flow substitutions.
SectorFunction orbifold_sector(const Theory& orbifold, Sector s, const Rational& order);

// Dispatch on the theory kind.
SectorFunction sector_function(const Theory& theory, Sector s, const Rational& order);

struct FlowCheckReport {
  Rational checked_order;
  std::string detail;  // per-identity summary lines
};

// Verifies Z_R = (q qbar)^(c/24) (y ybar)^(c/6) Z_NS(z + tau/2) and
// Z_(S-tilde) = Z_S(z + 1/2) as exact series identities through `order`.
// Throws IdentityViolation naming the first failing coefficient.
FlowCheckReport spectral_flow_check(const Theory& theory, const Rational& order);

/**
 * Conformal-field-theoretic elliptic genus: the R-tilde sector at zbar = 0.
 * Sets ybar = 1 in every summand, verifies that all qbar-dependence cancels
 * exactly (throws HolomorphyFailure otherwise) and returns the holomorphic
 * series, exact below `order`.
 */
PuiseuxSeries cft_elliptic_genus(const Theory& theory, const Rational& order);

// Same extraction applied to an arbitrary R-tilde sector function.
PuiseuxSeries elliptic_genus_from(const SectorFunction& rtilde, const Rational& order);

// 2^(2D); for D <= 2 cross-checked against the leading coefficient of the
// twisted summands of the standard-torus orbifold R-tilde sector.
long long twisted_ground_state_count(int dim_D);

// Reference closed form 8 * sum_{k=2,3,4} (theta_k(z)/theta_k(0))^2 of the
// K3 elliptic genus, as exact series and as numeric evaluator.
PuiseuxSeries k3_elliptic_genus_series(const Rational& order);
std::complex<double> k3_elliptic_genus_eval(const ComplexPoint& p);

}  // namespace k3genus
