#pragma once

#include <string>

#include "k3genus/charclass.hpp"
#include "k3genus/narain.hpp"

namespace k3genus {

// {"D": int, "basis": [[rational strings]], "B": [[rational strings]]}
// Rationals are "p/q" (or "p") strings; bare JSON integers are accepted too.
// The "B" field may be omitted for a vanishing B-field.
TorusSpec torus_spec_from_json_text(const std::string& text);
TorusSpec torus_spec_from_file(const std::string& path);

// {"D": int, "chern_numbers": {"c2": 24, ...}} with monomials as sorted
// strings ("c1c1", "c2").
ManifoldData manifold_from_json_text(const std::string& text);
ManifoldData manifold_from_file(const std::string& path);

std::string torus_spec_to_json_text(const TorusSpec& spec);

// Validity report for `narain check`: gram matrix, evenness, unimodularity.
std::string narain_check_json(const TorusSpec& spec);
std::string narain_check_text(const TorusSpec& spec);

// Fixed points, diamonds, invariants and the classification verdict.
std::string kummer_report_json(const TorusSpec& spec);

}  // namespace k3genus
