#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "iqp/errors.hpp"
#include "iqp/problem_io.hpp"

using namespace iqp;

namespace fs = std::filesystem;

TEST_SUITE("problem_io") {
  TEST_CASE("round trip is bit exact") {
    for (int family : {1, 2}) {
      for (std::uint64_t seed : {0u, 17u, 123456u}) {
        const auto inst = generate_instance(family, 12, seed);
        const auto back = problem_from_json(problem_to_json(inst));
        CHECK(back.problem == inst.problem);
        CHECK(back.x0 == inst.x0);
      }
    }
  }

  TEST_CASE("round trip through a file") {
    const auto inst = generate_family1(10, 9);
    const fs::path path = fs::temp_directory_path() / "iqp_roundtrip_test.json";
    save_problem(path, inst);
    const auto back = load_problem(path);
    CHECK(back.problem == inst.problem);
    CHECK(back.x0 == inst.x0);
    fs::remove(path);
  }

  TEST_CASE("key order follows the documented schema") {
    const auto text = problem_to_json(generate_family1(2, 1));
    const auto pos = [&](const char* k) { return text.find(std::string("\"") + k + "\":"); };
    CHECK(pos("n") < pos("m"));
    CHECK(pos("m") < pos("Q"));
    CHECK(pos("Q") < pos("q"));
    CHECK(pos("q") < pos("A"));
    CHECK(pos("A") < pos("b"));
    CHECK(pos("b") < pos("x0"));
  }

  TEST_CASE("hand-written 1-D fixture") {
    const auto inst = load_problem(fs::path(IQP_FIXTURE_DIR) / "toy_1d.json");
    CHECK(inst.problem.dim() == 1);
    CHECK(inst.problem.Q(0, 0) == 2.0);
    CHECK(inst.problem.q(0) == -4.0);
    CHECK(inst.problem.C.rows() == 1);
    CHECK(inst.problem.C.a()(0, 0) == 1.0);
    CHECK(inst.problem.C.b()(0) == 0.0);
    CHECK(inst.x0(0) == 0.0);
  }

  TEST_CASE("truncated file is a parse error with position") {
    try {
      load_problem(fs::path(IQP_FIXTURE_DIR) / "truncated.json");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
  }

  TEST_CASE("field errors carry context") {
    CHECK_THROWS_WITH_AS(problem_from_json(R"({"n":1,"m":1,"Q":[[1]],"q":[0],"A":[[1]],"b":[0]})"),
                         doctest::Contains("x0"), ParseError);
    CHECK_THROWS_WITH_AS(problem_from_json(R"({"n":2,"m":1,"Q":[[1,0],[0]],"q":[0,0],"A":[[1,0]],"b":[0],"x0":[0,0]})"),
                         doctest::Contains("row 1"), DimensionMismatch);
    CHECK_THROWS_AS(problem_from_json(R"({"n":1,"m":2,"Q":[[1]],"q":[0],"A":[[1]],"b":[0],"x0":[0]})"),
                    DimensionMismatch);
    CHECK_THROWS_AS(problem_from_json(R"({"n":1,"m":1,"Q":[["a"]],"q":[0],"A":[[1]],"b":[0],"x0":[0]})"),
                    ParseError);
    CHECK_THROWS_AS(problem_from_json(R"([1,2])"), ParseError);
    CHECK_THROWS_AS(problem_from_json(R"({"n":2,"m":0,"Q":[[1,2],[3,1]],"q":[0,0],"A":[],"b":[],"x0":[0,0]})"),
                    InvalidInput);
  }
}
