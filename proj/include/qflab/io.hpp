#pragma once

// Text and JSON formats shared by the CLI and the acceptance runner.
//
// Matrices:     {"n": 4, "entries": [["1/1", "0/1", ...], ...]}
// Polynomials:  ["c0", "c1", ...] in ascending degree
// Count jobs:   {"s": [...], "T": <matrix>, "p": 3, "t": 2, "strategy": "mitm"}

#include "qflab/counting.hpp"
#include "qflab/densities.hpp"
#include "qflab/padic.hpp"
#include "qflab/quadform.hpp"
#include "qflab/whittaker.hpp"

#include <json.hpp>

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qflab::io {

using Json = nlohmann::json;

Json matrix_to_json(const SymMat& m);
/// Throws std::invalid_argument for shape errors, malformed rationals or asymmetric input.
SymMat matrix_from_json(const Json& j);

/// "d:1,1,1,3" for a diagonal, an inline JSON object, or a path to a JSON file.
SymMat parse_matrix_spec(std::string_view spec);

/// Comma-separated rationals ("1,-1,2/3").
std::vector<Rational> parse_rational_list(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);
/// Comma-separated unit classes: "+", "-", "1", "-1".
std::vector<UnitClass> parse_sign_list(std::string_view text);

Json rationals_to_json(const std::vector<Rational>& v);
Json polynomial_to_json(const RationalPolynomial& p);
Json density_polynomial_to_json(const DensityPolynomial& A);
Json places_to_json(const std::set<Place>& places);

CountJob count_job_from_json(const Json& j);
Json count_job_to_json(const CountJob& job);
Json density_result_to_json(const DensityResult& r);

Json ratio_report_to_json(const RatioReport& r);

}  // namespace qflab::io
