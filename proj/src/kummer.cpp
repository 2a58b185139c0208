#include "k3genus/kummer.hpp"

#include <cmath>
#include <complex>

namespace k3genus {

namespace {

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

FixedPointSet fixed_points(const TorusSpec& spec) {
  spec.validate();
  const int n = 2 * spec.dim_D;
  FixedPointSet out;
  out.dim_D = spec.dim_D;
  // [z] = [-z] iff 2z in L: representatives are the half-lattice points,
  // one per class in L/2L.
  for (long long mask = 0; mask < (1LL << n); ++mask) {
    std::vector<Rational> rep(n, 0);
    for (int bit = 0; bit < n; ++bit)
      if (mask & (1LL << (n - 1 - bit))) rep[bit] = Rational(1, 2);
    out.representatives.push_back(std::move(rep));
  }
  return out;
}

HodgeDiamond torus_hodge(int dim_D) {
  if (dim_D < 1) fail(Errc::invalid_input, "dimension must be >= 1");
  HodgeDiamond d;
  d.dim_D = dim_D;
  d.h.assign(dim_D + 1, std::vector<long long>(dim_D + 1, 0));
  for (int p = 0; p <= dim_D; ++p)
    for (int q = 0; q <= dim_D; ++q) d.h[p][q] = binomial(dim_D, p) * binomial(dim_D, q);
  return d;
}

HodgeDiamond kummer_hodge(int dim_D) {
  if (dim_D != 2)
    fail(Errc::unsupported_dimension,
         "the resolved orbifold Hodge diamond is only available for D = 2");
  HodgeDiamond torus = torus_hodge(2);
  HodgeDiamond d;
  d.dim_D = 2;
  d.h.assign(3, std::vector<long long>(3, 0));
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; q <= 2; ++q) d.h[p][q] = ((p + q) % 2 == 0) ? torus.h[p][q] : 0;
  d.h[1][1] += 16;  // one (1,1)-class per exceptional curve
  return d;
}

DiamondInvariants diamond_invariants(const HodgeDiamond& d) {
  DiamondInvariants inv;
  for (int p = 0; p <= d.dim_D; ++p)
    for (int q = 0; q <= d.dim_D; ++q) {
      long long v = d.h[p][q];
      inv.euler += ((p + q) % 2 == 0) ? v : -v;
      inv.signature += (q % 2 == 0) ? v : -v;
      if (p == 0) inv.holo_euler += (q % 2 == 0) ? v : -v;
    }
  return inv;
}

std::string cy2_class_name(Cy2Class c) {
  switch (c) {
    case Cy2Class::torus: return "torus";
    case Cy2Class::k3: return "K3";
    case Cy2Class::invalid: return "invalid";
  }
  fail(Errc::invalid_input, "bad classification value");
}

Cy2Class classify_cy2(const HodgeDiamond& d) {
  if (d.dim_D != 2) fail(Errc::unsupported_dimension, "classify_cy2 needs D = 2");
  long long h10 = d.h[1][0], h11 = d.h[1][1];
  if (h10 == 2 && h11 == 4) return Cy2Class::torus;
  if (h10 == 0 && h11 == 20) return Cy2Class::k3;
  return Cy2Class::invalid;
}

A1ChartReport a1_chart_check(
    const std::vector<std::pair<GaussianRational, GaussianRational>>& samples, double tol) {
  if (!(tol > 0)) fail(Errc::invalid_input, "a1_chart_check needs tol > 0");
  A1ChartReport report;
  report.sample_count = static_cast<int>(samples.size());
  report.identities_exact = true;

  for (const auto& [z1, z2] : samples) {
    // Chart map u = (z1^2, z2^2, z1 z2) onto the double cone u1 u2 = u3^2.
    GaussianRational u1 = z1 * z1, u2 = z2 * z2, u3 = z1 * z2;
    if (!(u1 * u2 - u3 * u3).is_zero()) {
      report.identities_exact = false;
      fail(Errc::tolerance_exceeded, "u1 u2 - u3^2 != 0: chart arithmetic is broken");
    }
    // Exceptional divisor (t1 : t2) -> (t1^2 : t2^2 : t1 t2) in v1 v2 = v3^2.
    const GaussianRational& t1 = z1;
    const GaussianRational& t2 = z2;
    GaussianRational v1 = t1 * t1, v2 = t2 * t2, v3 = t1 * t2;
    if (!(v1 * v2 - v3 * v3).is_zero()) {
      report.identities_exact = false;
      fail(Errc::tolerance_exceeded, "v1 v2 - v3^2 != 0: chart arithmetic is broken");
    }

    // Blow-down curve gamma_u(t) = (t*u, [u]): the first component must
    // decay linearly in t while the projective point stays put.
    auto cplx = [](const GaussianRational& g) {
      return std::complex<double>(to_double(g.re), to_double(g.im));
    };
    std::complex<double> uc[3] = {cplx(u1), cplx(u2), cplx(u3)};
    double base_norm = std::sqrt(std::norm(uc[0]) + std::norm(uc[1]) + std::norm(uc[2]));
    if (base_norm == 0.0) continue;  // u = 0 is the singular point itself
    for (double t : {1e-1, 1e-2, 1e-3}) {
      double scaled_norm = 0;
      for (const auto& c : uc) scaled_norm += std::norm(t * c);
      scaled_norm = std::sqrt(scaled_norm);
      double linear_dev = std::abs(scaled_norm / (t * base_norm) - 1.0);
      report.max_limit_deviation = std::max(report.max_limit_deviation, linear_dev);
      if (linear_dev > tol)
        fail(Errc::tolerance_exceeded, "blow-down curve does not decay linearly");
    }
  }
  return report;
}

}  // namespace k3genus
