#include "qflab/io.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace qflab;
using io::Json;

TEST_CASE("matrix JSON round trip") {
  SymMat T(2, 2);
  T << Rational(1, 2), 3, 3, -4;
  const Json j = io::matrix_to_json(T);
  CHECK(j.dump() == R"({"entries":[["1/2","3/1"],["3/1","-4/1"]],"n":2})");
  CHECK(io::matrix_from_json(j) == T);
  CHECK(io::matrix_from_json(Json::parse(R"({"n":1,"entries":[[5]]})")) == diagonal_matrix({5}));
}

TEST_CASE("malformed matrices are rejected") {
  CHECK_THROWS_AS(io::matrix_from_json(Json::parse(R"({"n":2,"entries":[["1"]]})")), std::invalid_argument);
  CHECK_THROWS_AS(io::matrix_from_json(Json::parse(R"({"entries":[["1"]]})")), std::invalid_argument);
  CHECK_THROWS_AS(io::matrix_from_json(Json::parse(R"({"n":2,"entries":[["1","2"],["3","4"]]})")), std::invalid_argument);
  CHECK_THROWS_AS(io::matrix_from_json(Json::parse(R"({"n":1,"entries":[["x"]]})")), std::invalid_argument);
  CHECK_THROWS_AS(io::matrix_from_json(Json::parse(R"({"n":1,"entries":[[1.5]]})")), std::invalid_argument);
}

TEST_CASE("matrix specs") {
  CHECK(io::parse_matrix_spec("d:1,1,1,3") == diagonal_matrix({1, 1, 1, 3}));
  CHECK(io::parse_matrix_spec("d:1/3,-2") == diagonal_matrix({Rational(1, 3), -2}));
  CHECK(io::parse_matrix_spec(R"({"n":1,"entries":[["7/1"]]})") == diagonal_matrix({7}));
  const std::string path = "qflab_io_test_matrix.json";
  {
    std::ofstream out(path);
    out << io::matrix_to_json(diagonal_matrix({2, 3})).dump();
  }
  CHECK(io::parse_matrix_spec(path) == diagonal_matrix({2, 3}));
  std::remove(path.c_str());
  CHECK_THROWS_AS(io::parse_matrix_spec("no/such/file.json"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_matrix_spec("d:"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_matrix_spec("d:1,,2"), std::invalid_argument);
}

TEST_CASE("lists") {
  CHECK(io::parse_int_list("0,1,2") == std::vector<int>{0, 1, 2});
  CHECK_THROWS_AS(io::parse_int_list("0,1/2"), std::invalid_argument);
  CHECK(io::parse_sign_list("+,-,1,-1") == std::vector<UnitClass>{Sign::plus(), Sign::minus(), Sign::plus(), Sign::minus()});
  CHECK_THROWS_AS(io::parse_sign_list("+,2"), std::invalid_argument);
}

TEST_CASE("polynomials and places") {
  const RationalPolynomial f(std::vector<Rational>{1, 0, Rational(-1, 9)});
  CHECK(io::polynomial_to_json(f).dump() == R"(["1/1","0/1","-1/9"])");
  CHECK(io::places_to_json({Place::finite(3), Place::infinity()}).dump() == R"(["3","inf"])");
}

TEST_CASE("count jobs") {
  const Json j = Json::parse(R"({"s":["1","1","-1","1","-1"],"T":{"n":1,"entries":[["1"]]},"p":3,"t":2,"strategy":"naive"})");
  const CountJob job = io::count_job_from_json(j);
  CHECK(job.m() == 5);
  CHECK(job.t == 2);
  CHECK(job.strategy == Strategy::naive);
  CHECK(io::count_job_to_json(job)["strategy"] == "naive");
  CHECK(io::count_job_from_json(io::count_job_to_json(job)).s == job.s);
  CHECK_THROWS_AS(io::count_job_from_json(Json::parse(R"({"s":[1],"p":3,"t":1})")), std::invalid_argument);
  CHECK_THROWS_AS(io::count_job_from_json(Json::parse(R"({"s":[1],"T":{"n":1,"entries":[[1]]},"p":4,"t":1})")),
                  std::invalid_argument);
}

TEST_CASE("ratio report JSON") {
  const Json j = io::ratio_report_to_json(verify_ratio_identity(diagonal_matrix({1, 1, 1, 3}), OddPrime(3)));
  CHECK(j["lhs_coeff"] == "10/1");
  CHECK(j["rhs"] == "10/1");
  CHECK(j["equal"] == true);
  CHECK(j["e_p"] == 1);
  CHECK(j["diff"] == Json::array({"3"}));
  CHECK(j["p"] == 3);
}
