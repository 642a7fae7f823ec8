#include "qflab/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qflab::io {

namespace {

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> out;
  if (text.empty()) throw std::invalid_argument("empty list");
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw std::invalid_argument("rationals must be \"num/den\" strings or integers");
}

}  // namespace

Json matrix_to_json(const SymMat& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"n", m.rows()}, {"entries", std::move(rows)}};
}

SymMat matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
    throw std::invalid_argument("matrix JSON needs \"n\" and \"entries\"");
  const auto n = j.at("n").get<std::int64_t>();
  const Json& rows = j.at("entries");
  if (n < 1 || !rows.is_array() || static_cast<std::int64_t>(rows.size()) != n)
    throw std::invalid_argument("matrix JSON: \"entries\" must have n rows");
  SymMat m(n, n);
  for (std::int64_t i = 0; i < n; ++i) {
    const Json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<std::int64_t>(row.size()) != n)
      throw std::invalid_argument("matrix JSON: every row must have n entries");
    for (std::int64_t k = 0; k < n; ++k) m(i, k) = rational_from_json(row[static_cast<std::size_t>(k)]);
  }
  require_symmetric(m);
  return m;
}

SymMat parse_matrix_spec(std::string_view spec) {
  if (spec.starts_with("d:")) return diagonal_matrix(parse_rational_list(spec.substr(2)));
  if (spec.starts_with("{")) return matrix_from_json(Json::parse(spec));
  std::ifstream in{std::string(spec)};
  if (!in) throw std::invalid_argument("cannot open matrix file '" + std::string(spec) + "'");
  return matrix_from_json(Json::parse(in));
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  for (auto part : split_commas(text)) out.push_back(parse_rational(part));
  return out;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  for (auto part : split_commas(text)) {
    const Rational r = parse_rational(part);
    if (denominator_of(r) != 1) throw std::invalid_argument("expected integers, got '" + std::string(part) + "'");
    out.push_back(numerator_of(r).convert_to<int>());
  }
  return out;
}

std::vector<UnitClass> parse_sign_list(std::string_view text) {
  std::vector<UnitClass> out;
  for (auto part : split_commas(text)) {
    if (part == "+" || part == "1" || part == "+1") out.push_back(Sign::plus());
    else if (part == "-" || part == "-1") out.push_back(Sign::minus());
    else throw std::invalid_argument("expected a sign, got '" + std::string(part) + "'");
  }
  return out;
}

Json rationals_to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json polynomial_to_json(const RationalPolynomial& p) { return rationals_to_json(p.coefficients()); }

Json density_polynomial_to_json(const DensityPolynomial& A) {
  return {{"numerator", polynomial_to_json(A.numerator())}, {"denominator", polynomial_to_json(A.denominator())}};
}

Json places_to_json(const std::set<Place>& places) {
  Json out = Json::array();
  for (const auto& v : places) out.push_back(v.name());
  return out;
}

CountJob count_job_from_json(const Json& j) {
  for (const char* key : {"s", "T", "p", "t"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("count job JSON needs \"") + key + "\"");
  CountJob job{{}, matrix_from_json(j.at("T")), OddPrime(j.at("p").get<std::int64_t>()), j.at("t").get<int>(),
               Strategy::mitm};
  for (const auto& x : j.at("s")) job.s.push_back(rational_from_json(x));
  if (j.contains("strategy")) job.strategy = parse_strategy(j.at("strategy").get<std::string>());
  job.validate();
  return job;
}

Json count_job_to_json(const CountJob& job) {
  return {{"s", rationals_to_json(job.s)},
          {"T", matrix_to_json(job.T)},
          {"p", job.p.value()},
          {"t", job.t},
          {"strategy", std::string(to_string(job.strategy))}};
}

Json density_result_to_json(const DensityResult& r) {
  Json table = Json::array();
  for (const auto& [t, v] : r.table) table.push_back({{"t", t}, {"value", to_string(v)}});
  return {{"raw_count", to_string(r.raw_count)},
          {"t_used", r.t_used},
          {"exponent", r.exponent},
          {"value", to_string(r.value)},
          {"stabilized", r.stabilized},
          {"table", std::move(table)}};
}

Json ratio_report_to_json(const RatioReport& r) {
  Json out = {{"T", matrix_to_json(r.T)},
              {"p", r.p.value()},
              {"lhs_coeff", to_string(r.lhs.coeff())},
              {"rhs", to_string(r.rhs)},
              {"equal", r.equal},
              {"diff", places_to_json(r.diff)}};
  if (r.e_p_integral) out["e_p"] = numerator_of(r.e_p).convert_to<std::int64_t>();
  else out["e_p"] = to_string(r.e_p);
  return out;
}

}  // namespace qflab::io
