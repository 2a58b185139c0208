#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "k3genus/cft.hpp"
#include "k3genus/charclass.hpp"
#include "k3genus/json_io.hpp"
#include "k3genus/kummer.hpp"
#include "k3genus/modforms.hpp"
#include "k3genus/verify.hpp"

namespace py = pybind11;
using namespace k3genus;

namespace {

// Series cross the boundary as lists of (q-exponent, y-exponent, coefficient)
// strings; exact values survive the trip and python can lift them into
// fractions.Fraction.
std::vector<std::tuple<std::string, std::string, std::string>> series_terms(
    const PuiseuxSeries& s) {
  std::vector<std::tuple<std::string, std::string, std::string>> out;
  out.reserve(s.term_count());
  for (const auto& [e, c] : s.terms())
    out.emplace_back(plain_string(Rational(e.q24, 24)), plain_string(Rational(e.y2, 2)),
                     plain_string(c));
  return out;
}

Theory make_theory(const std::string& spec_json, bool orbifold) {
  TorusSpec spec = torus_spec_from_json_text(spec_json);
  return Theory{orbifold ? TheoryKind::z2_orbifold : TheoryKind::toroidal,
                NarainLattice::from_torus(spec)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact partition functions and elliptic genera of toroidal SCFTs, "
            "their Z2 orbifolds, and K3 geometry";

  py::register_exception<Error>(m, "K3GenusError");

  m.def("theta_series_text",
        [](int k, const std::string& order) {
          return theta_series(k, parse_rational(order)).canonical_text();
        },
        py::arg("k"), py::arg("order") = "10",
        "Canonical text form of the Jacobi theta function as an exact series");

  m.def("eta_series_text",
        [](const std::string& order) {
          return eta_series(parse_rational(order)).canonical_text();
        },
        py::arg("order") = "10");

  m.def("narain_check_json",
        [](const std::string& spec_json) {
          return narain_check_json(torus_spec_from_json_text(spec_json));
        },
        py::arg("spec_json"),
        "Validate the charge lattice of a torus spec; raises on violation");

  m.def("lattice_sum_terms",
        [](const std::string& spec_json, const std::string& order) {
          TorusSpec spec = torus_spec_from_json_text(spec_json);
          LatticeSumSeries sum =
              lattice_sum_series(NarainLattice::from_torus(spec), parse_rational(order));
          std::vector<std::tuple<std::string, std::string, std::string>> out;
          for (const auto& [e, c] : sum.terms)
            out.emplace_back(plain_string(e.first), plain_string(e.second), plain_string(c));
          return out;
        },
        py::arg("spec_json"), py::arg("order") = "2",
        "Lattice partition sum numerator as (q, qbar, coeff) string triples");

  m.def("elliptic_genus_terms",
        [](const std::string& spec_json, bool orbifold, const std::string& order) {
          return series_terms(
              cft_elliptic_genus(make_theory(spec_json, orbifold), parse_rational(order)));
        },
        py::arg("spec_json"), py::arg("orbifold") = true, py::arg("order") = "10",
        "CFT elliptic genus as (q, y, coeff) string triples");

  m.def("k3_elliptic_genus_terms",
        [](const std::string& order) {
          return series_terms(k3_elliptic_genus_series(parse_rational(order)));
        },
        py::arg("order") = "10",
        "Closed form 8 sum (theta_k(z)/theta_k(0))^2 as (q, y, coeff) triples");

  m.def("geometric_genus_terms",
        [](const std::string& manifold_json, const std::string& order) {
          return series_terms(geometric_elliptic_genus(
              manifold_from_json_text(manifold_json), parse_rational(order)));
        },
        py::arg("manifold_json"), py::arg("order") = "5",
        "Geometric elliptic genus from Chern numbers as (q, y, coeff) triples");

  m.def("check_spectral_flow",
        [](const std::string& spec_json, bool orbifold, const std::string& order) {
          return spectral_flow_check(make_theory(spec_json, orbifold), parse_rational(order))
              .detail;
        },
        py::arg("spec_json"), py::arg("orbifold") = false, py::arg("order") = "3",
        "Verify the spectral-flow identities; raises K3GenusError on violation");

  m.def("todd_text", [](int dim) { return todd_class(dim).canonical_text(); },
        py::arg("dim") = 2);

  m.def("kummer_report_json",
        [](const std::string& spec_json) {
          return kummer_report_json(torus_spec_from_json_text(spec_json));
        },
        py::arg("spec_json"));

  m.def("twisted_ground_state_count", &twisted_ground_state_count, py::arg("dim"));

  m.def("verify_all", [] {
    std::vector<CriterionResult> results = run_acceptance_suite();
    py::list out;
    for (const auto& r : results) {
      py::dict d;
      d["name"] = r.name;
      d["passed"] = r.passed;
      d["detail"] = r.detail;
      d["seconds"] = r.seconds;
      out.append(d);
    }
    return out;
  });
}
