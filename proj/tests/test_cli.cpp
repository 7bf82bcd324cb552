#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "catent/cli.hpp"
#include "catent/tubular_lift.hpp"

using namespace catent;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("invariants command output is byte-stable", "[cli]") {
  const std::string expect =
      "{\n"
      "  \"a\": 30,\n"
      "  \"mu\": 9,\n"
      "  \"chi\": \"1/30\",\n"
      "  \"dynkin\": \"E8~\"\n"
      "}\n";
  const CliResult r = run_cli({"invariants"}, R"({"weights": [2, 3, 5]})");
  CHECK(r.code == 0);
  CHECK(r.out == expect);
  CHECK(r.err.empty());
  // Determinism: a second run produces identical bytes.
  CHECK(run_cli({"invariants"}, R"({"weights": [2, 3, 5]})").out == expect);
}

TEST_CASE("invariants of a tubular type omits the dynkin symbol", "[cli]") {
  const CliResult r = run_cli({"invariants"}, R"({"weights": [2, 3, 6]})");
  CHECK(r.code == 0);
  CHECK(r.out ==
        "{\n"
        "  \"a\": 6,\n"
        "  \"mu\": 10,\n"
        "  \"chi\": \"0\"\n"
        "}\n");
}

TEST_CASE("entropy command on a quasi-unipotent word", "[cli]") {
  const std::string input =
      R"({"weights": [2, 3, 5], "word": [{"twist": {"l": 0, "p": [1, 0, 0]}}, "serre"]})";
  const CliResult r = run_cli({"entropy"}, input);
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["h"] == 0.0);
  CHECK(j["rho"][0] == "1");
  CHECK(j["rho"][1] == "1");
  CHECK(j["method"] == "chi-positive");
  CHECK(j["char_poly"].size() == 10);
  CHECK(j["char_poly"][0] == "1");
  CHECK(j["n_matrix"].size() == 9);
  CHECK(!j.contains("phi"));
  CHECK(!j.contains("phi_certificate"));
}

TEST_CASE("entropy command on the tubular hyperbolic word", "[cli]") {
  // L then U on (2,2,2,2); U is passed as an explicit lattice matrix.
  const WeightData w = make_weight_data({2, 2, 2, 2});
  const IntMatrix u = tubular_u_lift(w).matrix;
  Json uj = Json::array();
  for (std::size_t i = 0; i < u.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < u.cols(); ++k) row.push_back(u(i, k).str());
    uj.push_back(std::move(row));
  }
  Json input;
  input["weights"] = {2, 2, 2, 2};
  input["word"] = Json::array();
  input["word"].push_back(Json{{"twist", Json{{"l", 0}, {"p", {1, 0, 0, 0}}}}});
  input["word"].push_back(Json{{"generic", uj}});
  const CliResult r = run_cli({"entropy"}, input.dump());
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["method"] == "tubular-phi");
  CHECK(j["h"] == Catch::Approx(std::log((3.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-14));
  REQUIRE(j.contains("phi"));
  CHECK(j["phi"] == Json::array({Json::array({"1", "1"}), Json::array({"1", "2"})}));
  REQUIRE(j.contains("phi_certificate"));
  CHECK(j["phi_certificate"]["trace"] == "3");
  CHECK(j["phi_certificate"]["disc"] == "5");
}

TEST_CASE("entropy command on a dynkin context", "[cli]") {
  const CliResult r = run_cli({"entropy"}, R"({"dynkin": "A3", "word": ["serre"]})");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["h"] == 0.0);
  CHECK(j["method"] == "hereditary-spectral");
  CHECK(j["rho"] == Json::array({"1", "1"}));
  CHECK(j["n_matrix"].size() == 3);
}

TEST_CASE("factorize command with frozen output", "[cli]") {
  const std::string expect =
      "{\n"
      "  \"m\": [\n"
      "    3,\n"
      "    2\n"
      "  ],\n"
      "  \"P\": [\n"
      "    [\n"
      "      \"1\",\n"
      "      \"0\"\n"
      "    ],\n"
      "    [\n"
      "      \"0\",\n"
      "      \"1\"\n"
      "    ]\n"
      "  ],\n"
      "  \"negated\": false,\n"
      "  \"verified\": true\n"
      "}\n";
  const CliResult r = run_cli({"factorize"}, R"({"matrix": [[1, 3], [2, 7]]})");
  CHECK(r.code == 0);
  CHECK(r.out == expect);
  // A bare array works the same as the wrapped form.
  CHECK(run_cli({"factorize"}, R"([[1, 3], [2, 7]])").out == expect);
}

TEST_CASE("factorize rejects non-hyperbolic input with exit 4", "[cli]") {
  const CliResult r = run_cli({"factorize"}, R"([[1, 1], [0, 1]])");
  CHECK(r.code == 4);
  CHECK(r.out.empty());
  CHECK(r.err.find("error:") == 0);
  // Determinant != 1 is an input problem, not a precondition violation.
  CHECK(run_cli({"factorize"}, R"([[2, 0], [0, 1]])").code == 2);
}

TEST_CASE("input errors exit 2 and print usage", "[cli]") {
  for (const CliResult& r :
       {run_cli({"invariants"}, "not json"), run_cli({"invariants"}, ""),
        run_cli({"invariants"}, R"({"weights": [2]})"),
        run_cli({"invariants"}, R"({"weights": [2, 0, 5]})"), run_cli({}, ""),
        run_cli({"frobnicate"}, ""), run_cli({"entropy", "--tol"}, ""),
        run_cli({"entropy", "--tol", "0"}, ""), run_cli({"entropy", "--n-max", "zero"}, ""),
        run_cli({"entropy", "--wat", "1"}, ""),
        run_cli({"entropy"}, R"({"dynkin": "Q5"})"),
        run_cli({"verify", "nonexistent-suite"}, "")}) {
    CHECK(r.code == 2);
    CHECK(r.err.find("usage: cat-entropy") != std::string::npos);
  }
}

TEST_CASE("generator errors exit 3", "[cli]") {
  // sigma permutes branches of different weights: inadmissible.
  const CliResult r = run_cli(
      {"entropy"}, R"({"weights": [1, 2, 3], "word": [{"auto": {"sigma": [0, 2, 1]}}]})");
  CHECK(r.code == 3);
  // A generic letter that is not an isometry of the Euler form.
  const CliResult g = run_cli(
      {"entropy"},
      R"({"weights": [2, 3, 5], "word": [{"generic": [[2,0,0,0,0,0,0,0,0],[0,1,0,0,0,0,0,0,0],[0,0,1,0,0,0,0,0,0],[0,0,0,1,0,0,0,0,0],[0,0,0,0,1,0,0,0,0],[0,0,0,0,0,1,0,0,0],[0,0,0,0,0,0,1,0,0],[0,0,0,0,0,0,0,1,0],[0,0,0,0,0,0,0,0,1]]}]})");
  CHECK(g.code == 3);
}

TEST_CASE("file input and output roundtrip", "[cli]") {
  const std::string in_path = "cli_test_input.json";
  const std::string out_path = "cli_test_output.json";
  {
    std::ofstream f(in_path);
    f << R"({"weights": [2, 3, 7]})";
  }
  const CliResult r = run_cli({"invariants", "--input", in_path, "--out", out_path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());  // payload went to the file
  const Json j = Json::parse(slurp(out_path));
  CHECK(j["a"] == 42);
  CHECK(j["mu"] == 11);
  CHECK(j["chi"] == "-1/42");
  CHECK(!j.contains("dynkin"));
  std::remove(in_path.c_str());
  std::remove(out_path.c_str());

  CHECK(run_cli({"invariants", "--input", "does_not_exist.json"}).code == 2);
}

TEST_CASE("verify command reports suite results", "[cli]") {
  const CliResult r = run_cli({"verify", "gram"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["suite"] == "gram");
  CHECK(j["passed"] == true);
  CHECK(j["failures"].empty());
}

TEST_CASE("tolerance flag reaches the spectral certificates", "[cli]") {
  // A coarse tolerance is still a valid enclosure; the radius stays exact for
  // quasi-unipotent words, so the output is identical.
  const std::string input = R"({"weights": [2, 3, 5], "word": ["serre"]})";
  const CliResult fine = run_cli({"entropy", "--tol", "1/1000000000000"}, input);
  const CliResult coarse = run_cli({"entropy", "--tol", "1/4"}, input);
  REQUIRE(fine.code == 0);
  REQUIRE(coarse.code == 0);
  CHECK(fine.out == coarse.out);
}
