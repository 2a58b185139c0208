#pragma once

#include <string>
#include <utility>
#include <vector>

#include "k3genus/narain.hpp"

namespace k3genus {

struct HodgeDiamond {
  int dim_D = 1;
  std::vector<std::vector<long long>> h;  // h[p][q], (D+1) x (D+1)
};

struct DiamondInvariants {
  long long euler = 0;       // sum (-1)^(p+q) h^(p,q)
  long long holo_euler = 0;  // sum (-1)^q h^(0,q)
  long long signature = 0;   // sum (-1)^q h^(p,q)
};

// All half-lattice representatives of the involution fixed points, written
// in L-basis coordinates: entries in {0, 1/2}, 2^(2D) of them, in canonical
// (lexicographic) order.
struct FixedPointSet {
  int dim_D = 1;
  std::vector<std::vector<Rational>> representatives;
};

FixedPointSet fixed_points(const TorusSpec& spec);

// h^(p,q) = C(D,p) C(D,q).
HodgeDiamond torus_hodge(int dim_D);

// The involution multiplies H^1 of the torus by -1, hence acts on H^(p,q)
// by (-1)^(p+q); the 16 exceptional curves add one (1,1)-class each. Only
// D = 2 carries this resolution data.
HodgeDiamond kummer_hodge(int dim_D = 2);

DiamondInvariants diamond_invariants(const HodgeDiamond& d);

enum class Cy2Class { torus, k3, invalid };
std::string cy2_class_name(Cy2Class c);

// Calabi-Yau twofold dichotomy: (h^(1,0), h^(1,1)) = (2,4) is the torus,
// (0,20) is K3, everything else is invalid. Requires D = 2.
Cy2Class classify_cy2(const HodgeDiamond& d);

// Exact complex rationals for the chart identities.
struct GaussianRational {
  Rational re, im;

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  bool is_zero() const { return re == 0 && im == 0; }
};

struct A1ChartReport {
  int sample_count = 0;
  bool identities_exact = false;     // u1*u2 = u3^2 and v1*v2 = v3^2, exactly
  double max_limit_deviation = 0.0;  // blow-down curve convergence, numeric
  bool passed() const { return identities_exact && max_limit_deviation < 1.0; }
};

/**
 * Verifies the A1 singularity model on the given samples z = (z1, z2):
 * the chart map u = (z1^2, z2^2, z1 z2) lands exactly on u1 u2 = u3^2, the
 * exceptional-divisor parametrization (t1 : t2) -> (t1^2 : t2^2 : t1 t2)
 * lands exactly on v1 v2 = v3^2, and the blow-down curve t -> (t u, [u])
 * approaches the exceptional divisor: |t u| decays linearly in t while [u]
 * stays constant, checked numerically against tol.
 */
A1ChartReport a1_chart_check(
    const std::vector<std::pair<GaussianRational, GaussianRational>>& samples, double tol);

}  // namespace k3genus
