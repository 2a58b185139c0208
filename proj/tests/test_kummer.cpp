#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "k3genus/cft.hpp"
#include "k3genus/kummer.hpp"
#include "k3genus/verify.hpp"

using namespace k3genus;

TEST_CASE("fixed points are the half-lattice classes") {
  FixedPointSet d2 = fixed_points(sample_torus_d2_cubic());
  CHECK(d2.representatives.size() == 16);
  FixedPointSet d1 = fixed_points(sample_torus_d1_skew_basis());
  CHECK(d1.representatives.size() == 4);

  // zero vector included; all entries in {0, 1/2}; no duplicates
  std::set<std::vector<Rational>> seen;
  bool has_zero = false;
  for (const auto& rep : d2.representatives) {
    CHECK(seen.insert(rep).second);
    bool zero = true;
    for (const auto& c : rep) {
      CHECK((c == 0 || c == Rational(1, 2)));
      zero = zero && c == 0;
    }
    has_zero = has_zero || zero;
  }
  CHECK(has_zero);
}

TEST_CASE("fixed points match the twisted ground-state count") {
  for (int d = 1; d <= 2; ++d) {
    std::size_t n = 2 * static_cast<std::size_t>(d);
    TorusSpec spec{d, identity_matrix(n), RationalMatrix(n, std::vector<Rational>(n, 0))};
    CHECK(fixed_points(spec).representatives.size() ==
          static_cast<std::size_t>(twisted_ground_state_count(d)));
  }
}

TEST_CASE("torus Hodge diamonds") {
  HodgeDiamond d2 = torus_hodge(2);
  CHECK(d2.h[1][0] == 2);
  CHECK(d2.h[1][1] == 4);
  DiamondInvariants inv = diamond_invariants(d2);
  CHECK(inv.euler == 0);
  CHECK(inv.holo_euler == 0);
  CHECK(inv.signature == 0);

  HodgeDiamond d1 = torus_hodge(1);
  CHECK(d1.h == std::vector<std::vector<long long>>{{1, 1}, {1, 1}});
  CHECK(diamond_invariants(d1).euler == 0);
}

TEST_CASE("resolved orbifold diamond") {
  HodgeDiamond k3 = kummer_hodge(2);
  CHECK(k3.h[1][0] == 0);
  CHECK(k3.h[0][1] == 0);
  CHECK(k3.h[1][1] == 20);
  CHECK(k3.h[0][0] == 1);
  CHECK(k3.h[2][0] == 1);
  CHECK(k3.h[0][2] == 1);
  CHECK(k3.h[2][2] == 1);

  // symmetries h^(p,q) = h^(q,p) = h^(D-p, D-q)
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; q <= 2; ++q) {
      CHECK(k3.h[p][q] == k3.h[q][p]);
      CHECK(k3.h[p][q] == k3.h[2 - p][2 - q]);
    }

  DiamondInvariants inv = diamond_invariants(k3);
  CHECK(inv.euler == 24);
  CHECK(inv.holo_euler == 2);
  CHECK(inv.signature == -16);

  CHECK_THROWS_AS(kummer_hodge(1), Error);
  CHECK_THROWS_AS(kummer_hodge(3), Error);
}

TEST_CASE("odd-dimensional diamonds have vanishing signature") {
  for (int d : {1, 3}) {
    CHECK(diamond_invariants(torus_hodge(d)).signature == 0);
  }
}

TEST_CASE("Calabi-Yau twofold classification") {
  CHECK(classify_cy2(torus_hodge(2)) == Cy2Class::torus);
  CHECK(classify_cy2(kummer_hodge(2)) == Cy2Class::k3);

  HodgeDiamond bogus = torus_hodge(2);
  bogus.h[1][0] = 1;
  bogus.h[1][1] = 12;
  CHECK(classify_cy2(bogus) == Cy2Class::invalid);
  CHECK(cy2_class_name(Cy2Class::k3) == "K3");

  CHECK_THROWS_AS(classify_cy2(torus_hodge(1)), Error);
}

TEST_CASE("A1 chart identities") {
  // z = (1, 2): u = (1, 4, 2) and 1*4 - 2^2 = 0
  GaussianRational one{1, 0}, two{2, 0};
  A1ChartReport single = a1_chart_check({{one, two}}, 1e-9);
  CHECK(single.identities_exact);
  CHECK(single.sample_count == 1);
  CHECK(single.max_limit_deviation < 1e-9);

  // complex rational samples stay exact
  std::vector<std::pair<GaussianRational, GaussianRational>> samples;
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      samples.push_back({GaussianRational{Rational(a, 3), Rational(b, 7)},
                         GaussianRational{Rational(b, 5), Rational(a, 2)}});
  A1ChartReport grid = a1_chart_check(samples, 1e-9);
  CHECK(grid.identities_exact);
  CHECK(grid.passed());

  CHECK_THROWS_AS(a1_chart_check({}, -1.0), Error);
}
