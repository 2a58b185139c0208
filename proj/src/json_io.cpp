#include "k3genus/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "k3genus/kummer.hpp"

namespace k3genus {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Errc::invalid_input, "malformed JSON document");
  return j;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::invalid_input, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Rational rational_from_json(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  fail(Errc::invalid_input, "rational entries must be \"p/q\" strings or integers");
}

RationalMatrix matrix_from_json(const json& v, std::size_t n, const char* name) {
  if (!v.is_array() || v.size() != n)
    fail(Errc::invalid_input, std::string(name) + " must be a 2D x 2D array");
  RationalMatrix m(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (!v[i].is_array() || v[i].size() != n)
      fail(Errc::invalid_input, std::string(name) + " must be a 2D x 2D array");
    for (std::size_t j = 0; j < n; ++j) m[i][j] = rational_from_json(v[i][j]);
  }
  return m;
}

json matrix_to_json(const RationalMatrix& m) {
  json rows = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& v : row) r.push_back(frac_string(v));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

TorusSpec torus_spec_from_json_text(const std::string& text) {
  json j = parse(text);
  if (!j.is_object() || !j.contains("D") || !j["D"].is_number_integer())
    fail(Errc::invalid_input, "torus spec needs an integer \"D\" field");
  TorusSpec spec;
  spec.dim_D = j["D"].get<int>();
  if (spec.dim_D < 1) fail(Errc::invalid_input, "torus dimension D must be >= 1");
  std::size_t n = 2 * static_cast<std::size_t>(spec.dim_D);
  if (!j.contains("basis")) fail(Errc::invalid_input, "torus spec needs a \"basis\" field");
  spec.basis = matrix_from_json(j["basis"], n, "basis");
  if (j.contains("B"))
    spec.b_field = matrix_from_json(j["B"], n, "B");
  else
    spec.b_field.assign(n, std::vector<Rational>(n, 0));
  spec.validate();
  return spec;
}

TorusSpec torus_spec_from_file(const std::string& path) {
  return torus_spec_from_json_text(slurp(path));
}

ManifoldData manifold_from_json_text(const std::string& text) {
  json j = parse(text);
  if (!j.is_object() || !j.contains("D") || !j["D"].is_number_integer())
    fail(Errc::invalid_input, "manifold data needs an integer \"D\" field");
  ManifoldData m;
  m.dim_D = j["D"].get<int>();
  if (m.dim_D < 1) fail(Errc::invalid_input, "manifold dimension D must be >= 1");
  if (j.contains("chern_numbers")) {
    if (!j["chern_numbers"].is_object())
      fail(Errc::invalid_input, "\"chern_numbers\" must be an object");
    for (const auto& [key, value] : j["chern_numbers"].items()) {
      ChernMonomial mono = parse_monomial(key, m.dim_D);
      if (monomial_degree(mono) != m.dim_D)
        fail(Errc::invalid_input, "Chern number monomial '" + key + "' is not top degree");
      if (!value.is_number_integer())
        fail(Errc::invalid_input, "Chern numbers must be integers");
      m.chern_numbers[mono] = Integer(value.get<long long>());
    }
  }
  return m;
}

ManifoldData manifold_from_file(const std::string& path) {
  return manifold_from_json_text(slurp(path));
}

std::string torus_spec_to_json_text(const TorusSpec& spec) {
  json j;
  j["D"] = spec.dim_D;
  j["basis"] = matrix_to_json(spec.basis);
  j["B"] = matrix_to_json(spec.b_field);
  return j.dump(2) + "\n";
}

namespace {

json narain_check_report(const TorusSpec& spec) {
  NarainLattice lattice = NarainLattice::from_torus(spec);  // throws on violation
  json j;
  j["D"] = spec.dim_D;
  j["rank"] = lattice.rank();
  j["gram"] = matrix_to_json(lattice.gram());
  j["even"] = true;
  j["unimodular"] = true;
  j["det_gram"] = frac_string(determinant(lattice.gram()));
  return j;
}

}  // namespace

std::string narain_check_json(const TorusSpec& spec) {
  return narain_check_report(spec).dump(2) + "\n";
}

std::string narain_check_text(const TorusSpec& spec) {
  json j = narain_check_report(spec);
  std::ostringstream os;
  os << "charge lattice: rank " << j["rank"].get<std::size_t>() << ", even, |det Gram| = 1\n";
  return os.str();
}

std::string kummer_report_json(const TorusSpec& spec) {
  json j;
  j["D"] = spec.dim_D;

  FixedPointSet fixed = fixed_points(spec);
  j["fixed_point_count"] = fixed.representatives.size();
  json reps = json::array();
  for (const auto& rep : fixed.representatives) {
    json point = json::array();
    for (const auto& coord : rep) point.push_back(plain_string(coord));
    reps.push_back(point);
  }
  j["fixed_points"] = reps;

  auto diamond_json = [](const HodgeDiamond& d) {
    json rows = json::array();
    for (const auto& row : d.h) rows.push_back(row);
    return rows;
  };
  HodgeDiamond torus = torus_hodge(spec.dim_D);
  j["torus_diamond"] = diamond_json(torus);
  DiamondInvariants torus_inv = diamond_invariants(torus);
  j["torus_invariants"] = {{"euler", torus_inv.euler},
                           {"holomorphic_euler", torus_inv.holo_euler},
                           {"signature", torus_inv.signature}};

  if (spec.dim_D == 2) {
    HodgeDiamond resolved = kummer_hodge(2);
    j["kummer_diamond"] = diamond_json(resolved);
    DiamondInvariants inv = diamond_invariants(resolved);
    j["kummer_invariants"] = {{"euler", inv.euler},
                              {"holomorphic_euler", inv.holo_euler},
                              {"signature", inv.signature}};
    j["verdict"] = cy2_class_name(classify_cy2(resolved));
    j["torus_verdict"] = cy2_class_name(classify_cy2(torus));
  }
  return j.dump(2) + "\n";
}

}  // namespace k3genus
