#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "k3genus/narain.hpp"
#include "k3genus/verify.hpp"

using namespace k3genus;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Brute-force vector count: loop integer coordinates in a box and test the
// exact norm condition directly against the generator matrix.
std::size_t brute_force_count(const NarainLattice& lat, const Rational& cutoff, int box) {
  std::size_t rank = lat.rank();
  std::vector<long long> x(rank, -box);
  std::size_t count = 0;
  while (true) {
    ChargeVector v = lat.vector_from_coords(x);
    if (v.left_norm2 + v.right_norm2 <= cutoff * 2) ++count;
    std::size_t i = 0;
    while (i < rank && ++x[i] > box) x[i++] = -box;
    if (i == rank) break;
  }
  return count;
}

}  // namespace

TEST_CASE("dual lattice") {
  CHECK(dual_lattice(sample_torus_d1_cubic()) == identity_matrix(2));

  TorusSpec scaled{1, {{Rational(2), 0}, {0, Rational(1, 2)}}, RationalMatrix(2, {0, 0})};
  RationalMatrix dual = dual_lattice(scaled);
  CHECK(dual[0][0] == Rational(1, 2));
  CHECK(dual[1][1] == Rational(2));
  CHECK(dual[0][1] == 0);

  // skewed basis: verify alpha . lambda in Z on all generator pairs
  TorusSpec skew = sample_torus_d1_skew_basis();
  RationalMatrix d = dual_lattice(skew);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Rational dot = 0;
      for (int r = 0; r < 2; ++r) dot += d[r][i] * skew.basis[r][j];
      CHECK(is_integer(dot));
      CHECK(dot == (i == j ? 1 : 0));
    }

  TorusSpec singular{1, {{1, 1}, {1, 1}}, RationalMatrix(2, {0, 0})};
  CHECK_THROWS_AS(dual_lattice(singular), Error);
}

TEST_CASE("charge lattice from the cubic torus") {
  NarainLattice lat = NarainLattice::from_torus(sample_torus_d1_cubic());
  CHECK(lat.rank() == 4);
  // Gram = [[0, I], [I, 0]] in the (lambda, mu) block basis
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(lat.gram()[i][j] == ((i + 2 == j || j + 2 == i) ? 1 : 0));
  Rational det = determinant(lat.gram());
  CHECK((det == 1 || det == -1));
}

TEST_CASE("B-field drops out of the Gram matrix") {
  NarainLattice plain = NarainLattice::from_torus(sample_torus_d1_cubic());
  NarainLattice twisted = NarainLattice::from_torus(sample_torus_d1_bfield());
  CHECK(plain.gram() == twisted.gram());
  // but the embedding differs
  CHECK(plain.generator_matrix() != twisted.generator_matrix());
}

TEST_CASE("evenness identity <gamma, gamma> = 2 mu . lambda") {
  NarainLattice lat = NarainLattice::from_torus(sample_torus_d2_bfield());
  for (std::size_t i = 0; i < lat.rank(); ++i) {
    CHECK(is_integer(lat.gram()[i][i]));
    CHECK(numerator(lat.gram()[i][i]) % 2 == 0);
  }
}

TEST_CASE("enumeration: cutoff 0 yields the zero vector only") {
  NarainLattice lat = NarainLattice::from_torus(sample_torus_d1_cubic());
  auto vecs = enumerate_vectors(lat, 0);
  REQUIRE(vecs.size() == 1);
  CHECK(vecs[0].left_norm2 == 0);
  CHECK(vecs[0].right_norm2 == 0);
}

TEST_CASE("enumeration: cutoff 1/2 on the cubic D=1 torus") {
  NarainLattice lat = NarainLattice::from_torus(sample_torus_d1_cubic());
  auto vecs = enumerate_vectors(lat, Rational(1, 2));
  // zero plus (lambda, mu) with one unit entry: 1 + 8 vectors, each with
  // gamma_L^2 = gamma_R^2 = 1/2
  REQUIRE(vecs.size() == 9);
  for (std::size_t i = 1; i < vecs.size(); ++i) {
    CHECK(vecs[i].left_norm2 == Rational(1, 2));
    CHECK(vecs[i].right_norm2 == Rational(1, 2));
  }
}

TEST_CASE("enumeration is closed under negation and duplicate-free") {
  NarainLattice lat = NarainLattice::from_torus(sample_torus_d1_skew_basis());
  auto vecs = enumerate_vectors(lat, 2);
  std::set<std::vector<long long>> seen;
  for (const auto& v : vecs) {
    CHECK(seen.insert(v.coords).second);
  }
  for (const auto& v : vecs) {
    std::vector<long long> neg(v.coords);
    for (auto& c : neg) c = -c;
    CHECK(seen.count(neg) == 1);
  }
}

TEST_CASE("enumeration count matches a brute-force box scan") {
  for (const TorusSpec& spec : {sample_torus_d1_cubic(), sample_torus_d1_bfield()}) {
    NarainLattice lat = NarainLattice::from_torus(spec);
    for (Rational cutoff : {Rational(1), Rational(2)}) {
      auto vecs = enumerate_vectors(lat, cutoff);
      CHECK(vecs.size() == brute_force_count(lat, cutoff, 4));
    }
  }
}

TEST_CASE("enumeration cap") {
  NarainLattice lat = NarainLattice::from_torus(sample_torus_d2_cubic());
  CHECK_THROWS_AS(enumerate_vectors(lat, 50, 1000), Error);
  try {
    enumerate_vectors(lat, 50, 1000);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::cutoff_too_large);
  }

  // environment override
  setenv("K3GENUS_ENUM_CAP", "10", 1);
  CHECK(enumeration_cap() == 10);
  CHECK_THROWS_AS(enumerate_vectors(lat, 3), Error);
  unsetenv("K3GENUS_ENUM_CAP");
  CHECK(enumeration_cap() == 10'000'000);
}

TEST_CASE("every enumerated vector is even") {
  NarainLattice lat = NarainLattice::from_torus(sample_torus_d2_bfield());
  for (const ChargeVector& v : enumerate_vectors(lat, 2)) {
    Rational diff = v.left_norm2 - v.right_norm2;  // <gamma, gamma>
    CHECK(is_integer(diff / 2));
  }
}

TEST_CASE("numeric precision loss is reported") {
  NarainLattice lat = NarainLattice::from_torus(sample_torus_d1_cubic());
  CHECK_THROWS_AS(lattice_sum_eval(lat, std::complex<double>(0.0, 0.02), 1), Error);
}

TEST_CASE("lattice sum numerator") {
  NarainLattice lat = NarainLattice::from_torus(sample_torus_d1_cubic());
  LatticeSumSeries sum = lattice_sum_series(lat, 1);
  CHECK(sum.eta_power_per_side == 2);
  CHECK(sum.terms.at({Rational(0), Rational(0)}) == 1);
  CHECK(sum.terms.at({Rational(1, 4), Rational(1, 4)}) == 8);

  // q <-> qbar symmetry for the self-dual cubic torus without B-field
  for (const auto& [exps, coeff] : sum.terms) {
    auto it = sum.terms.find({exps.second, exps.first});
    REQUIRE(it != sum.terms.end());
    CHECK(it->second == coeff);
  }
}

TEST_CASE("lattice sum evaluation at tau = i vs brute force") {
  NarainLattice lat = NarainLattice::from_torus(sample_torus_d1_cubic());
  LatticeEvalResult z = lattice_sum_eval(lat, std::complex<double>(0.0, 1.0), 10);
  double eta_i = std::tgamma(0.25) / (2.0 * std::pow(kPi, 0.75));
  double brute = 0.0;
  for (int l1 = -6; l1 <= 6; ++l1)
    for (int l2 = -6; l2 <= 6; ++l2)
      for (int m1 = -6; m1 <= 6; ++m1)
        for (int m2 = -6; m2 <= 6; ++m2)
          brute += std::exp(-kPi * (l1 * l1 + l2 * l2 + m1 * m1 + m2 * m2));
  brute /= std::pow(eta_i, 4);
  CHECK(std::abs(z.value - brute) < 1e-9);
  CHECK(std::abs(z.value.imag()) < 1e-12);
}

TEST_CASE("lattice sum modular invariance") {
  NarainLattice lat = NarainLattice::from_torus(sample_torus_d1_cubic());
  std::complex<double> tau(1.0 / 3.0, 1.0);
  std::complex<double> base = lattice_sum_eval(lat, tau, 12).value;
  CHECK(std::abs(lattice_sum_eval(lat, tau + 1.0, 12).value - base) < 1e-8);
  CHECK(std::abs(lattice_sum_eval(lat, -1.0 / tau, 12).value - base) < 1e-8);
}

TEST_CASE("input validation") {
  TorusSpec bad = sample_torus_d1_cubic();
  bad.b_field[0][1] = 1;  // not skew without the mirror entry
  CHECK_THROWS_AS(bad.validate(), Error);

  TorusSpec wrong_shape{2, identity_matrix(2), RationalMatrix(2, {0, 0})};
  CHECK_THROWS_AS(wrong_shape.validate(), Error);
}
