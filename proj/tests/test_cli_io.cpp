#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"
#include "k3genus/json_io.hpp"
#include "k3genus/modforms.hpp"
#include "k3genus/verify.hpp"

using namespace k3genus;

TEST_CASE("torus spec JSON parsing") {
  TorusSpec spec = torus_spec_from_json_text(R"({
    "D": 1,
    "basis": [["1", "1/2"], ["0", "1"]],
    "B": [["0", "1/3"], ["-1/3", "0"]]
  })");
  CHECK(spec.dim_D == 1);
  CHECK(spec.basis[0][1] == Rational(1, 2));
  CHECK(spec.b_field[1][0] == Rational(-1, 3));

  // bare integers are accepted, B defaults to zero
  TorusSpec plain = torus_spec_from_json_text(R"({"D": 1, "basis": [[1, 0], [0, 1]]})");
  CHECK(plain.b_field[0][1] == 0);

  CHECK_THROWS_AS(torus_spec_from_json_text("{"), Error);
  CHECK_THROWS_AS(torus_spec_from_json_text(R"({"D": 1})"), Error);
  CHECK_THROWS_AS(torus_spec_from_json_text(R"({"D": 1, "basis": [[1]]})"), Error);
  CHECK_THROWS_AS(
      torus_spec_from_json_text(R"({"D": 1, "basis": [["1","0"],["0","1"]],
                                    "B": [["0","1"],["1","0"]]})"),
      Error);  // not skew
  CHECK_THROWS_AS(
      torus_spec_from_json_text(R"({"D": 1, "basis": [["1","1"],["1","1"]]})"),
      Error);  // singular
}

TEST_CASE("torus spec JSON round trip") {
  TorusSpec spec = sample_torus_d2_bfield();
  TorusSpec back = torus_spec_from_json_text(torus_spec_to_json_text(spec));
  CHECK(back.dim_D == spec.dim_D);
  CHECK(back.basis == spec.basis);
  CHECK(back.b_field == spec.b_field);
}

TEST_CASE("manifold JSON parsing") {
  ManifoldData m = manifold_from_json_text(R"({"D": 2, "chern_numbers": {"c2": 24}})");
  CHECK(m.dim_D == 2);
  CHECK(m.chern_numbers.at(parse_monomial("c2", 2)) == 24);

  ManifoldData empty = manifold_from_json_text(R"({"D": 2})");
  CHECK(empty.chern_numbers.empty());

  CHECK_THROWS_AS(manifold_from_json_text(R"({"D": 2, "chern_numbers": {"c1": 1}})"),
                  Error);  // not top degree
  CHECK_THROWS_AS(manifold_from_json_text(R"({"chern_numbers": {}})"), Error);
}

TEST_CASE("narain check report") {
  nlohmann::json j = nlohmann::json::parse(narain_check_json(sample_torus_d1_cubic()));
  CHECK(j["even"] == true);
  CHECK(j["unimodular"] == true);
  CHECK(j["rank"] == 4);
  CHECK((j["det_gram"] == "1/1" || j["det_gram"] == "-1/1"));
}

TEST_CASE("kummer report fields") {
  nlohmann::json j = nlohmann::json::parse(kummer_report_json(sample_torus_d2_cubic()));
  CHECK(j["fixed_point_count"] == 16);
  CHECK(j["verdict"] == "K3");
  CHECK(j["torus_verdict"] == "torus");
  CHECK(j["kummer_invariants"]["euler"] == 24);
  CHECK(j["kummer_invariants"]["holomorphic_euler"] == 2);
  CHECK(j["kummer_invariants"]["signature"] == -16);
  CHECK(j["kummer_diamond"][1][1] == 20);
  CHECK(j["fixed_points"].size() == 16);
}

TEST_CASE("canonical theta text, frozen") {
  // theta_3 to order 5: n in {-3..3}, exponents n^2/2
  CHECK(theta_series(3, 5).canonical_text() ==
        "0/1 0/1 1/1\n"
        "1/2 -1/1 1/1\n"
        "1/2 1/1 1/1\n"
        "2/1 -2/1 1/1\n"
        "2/1 2/1 1/1\n"
        "9/2 -3/1 1/1\n"
        "9/2 3/1 1/1\n");
}

TEST_CASE("deterministic output") {
  std::string a = kummer_report_json(sample_torus_d2_cubic());
  std::string b = kummer_report_json(sample_torus_d2_cubic());
  CHECK(a == b);
  CHECK(theta_series(2, 7).canonical_text() == theta_series(2, 7).canonical_text());
}
