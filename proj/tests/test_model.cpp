#include <doctest.h>

#include "iqp/errors.hpp"
#include "iqp/model.hpp"
#include "oracles.hpp"

using namespace iqp;

namespace {

Polyhedron nonneg(Eigen::Index n) { return Polyhedron(Matrix::Identity(n, n), Vector::Zero(n)); }

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("objective examples") {
    IqProblem zero(SymMatrix::zero(2), Vector::Zero(2), nonneg(2));
    CHECK(objective(zero, Vector::Constant(2, 3.7)) == 0.0);

    IqProblem scalar(SymMatrix(Matrix::Constant(1, 1, 2.0)), Vector::Constant(1, -4.0), nonneg(1));
    CHECK(objective(scalar, Vector::Constant(1, 2.0)) == -4.0);

    Matrix swap(2, 2);
    swap << 0, 1, 1, 0;
    IqProblem cross(SymMatrix(swap), Vector::Ones(2), nonneg(2));
    Vector x(2);
    x << 1, 2;
    CHECK(objective(cross, x) == 5.0);
    CHECK_THROWS_AS(objective(cross, Vector::Ones(3)), DimensionMismatch);
  }

  TEST_CASE("objective agrees with a double-loop evaluation") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 1 + trial % 10;
      const auto inst = generate_family1(n, static_cast<std::uint64_t>(trial));
      Vector x(n);
      for (int i = 0; i < n; ++i) x(i) = rng.uniform(-20, 20);
      const double ref = oracle::objective_loops(inst.problem.Q.dense(), inst.problem.q, x);
      CHECK(std::abs(objective(inst.problem, x) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
  }

  TEST_CASE("feasibility") {
    const auto c = nonneg(2);
    Vector x(2);
    x << 0, 1;
    CHECK(is_feasible(c, x, 0.0));
    x << -1e-3, 1;
    CHECK_FALSE(is_feasible(c, x, 1e-8));
    CHECK_THROWS_AS(is_feasible(c, Vector::Zero(3)), DimensionMismatch);
  }

  TEST_CASE("active set") {
    const auto c = nonneg(2);
    CHECK(active_set(c, Vector::Constant(2, 1.0)).empty());
    Vector x(2);
    x << 0, 5;
    CHECK(active_set(c, x) == ActiveSet{0});
    x << -1, 5;
    CHECK_THROWS_AS(active_set(c, x), Infeasible);
  }

  TEST_CASE("active set at a generated vertex matches a row scan") {
    const auto inst = generate_family1(10, 3);
    const auto& c = inst.problem.C;
    // x_i = beta_i / i is a vertex of the lower-bound rows.
    Vector v(10);
    for (int i = 0; i < 10; ++i) v(i) = c.b()(10 + i) / (i + 1);
    const auto act = active_set(c, v, kDefaultActTol);
    ActiveSet scan;
    for (Eigen::Index r = 0; r < c.rows(); ++r) {
      if (std::abs(c.a().row(r).dot(v) - c.b()(r)) <= kDefaultActTol) scan.push_back(static_cast<int>(r));
    }
    CHECK(act == scan);
    CHECK(act.size() >= 10);
  }

  TEST_CASE("polyhedron validation") {
    CHECK_THROWS_AS(Polyhedron(Matrix::Identity(2, 2), Vector::Zero(3)), DimensionMismatch);
    CHECK_THROWS_AS(Polyhedron(Matrix::Identity(2, 2), Vector::Zero(2), Vector::Constant(2, -1.0)), Infeasible);
  }

  TEST_CASE("family 1 shape and determinism") {
    const auto a = generate_family1(10, 42);
    const auto b = generate_family1(10, 42);
    CHECK(a.problem == b.problem);
    CHECK(a.x0 == b.x0);
    CHECK(a.problem.C.rows() == 21);
    CHECK(a.problem.C.dim() == 10);
    CHECK_FALSE(generate_family1(10, 43).problem == a.problem);
    CHECK_THROWS_AS(generate_family1(0, 1), InvalidInput);
  }

  TEST_CASE("family 2 shape and determinism") {
    const auto a = generate_family2(10, 42);
    const auto b = generate_family2(10, 42);
    CHECK(a.problem == b.problem);
    CHECK(a.problem.C.rows() == 22);
    REQUIRE(a.problem.C.witness().has_value());
    CHECK(is_feasible(a.problem.C, *a.problem.C.witness()));
  }

  TEST_CASE("generator postconditions over dimensions and seeds") {
    for (int n : {10, 20, 40, 60, 80}) {
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        CAPTURE(n);
        CAPTURE(seed);
        for (int family : {1, 2}) {
          const auto inst = generate_instance(family, n, seed);
          const auto& p = inst.problem;
          const auto& c = p.C;
          REQUIRE(c.rows() == 2 * n + family);
          REQUIRE(c.witness().has_value());
          CHECK(is_feasible(c, *c.witness()));

          CHECK(p.Q.dense().minCoeff() >= 0.0);
          CHECK(p.Q.dense().maxCoeff() <= 10.0);
          CHECK(p.q.minCoeff() >= 0.0);
          CHECK(p.q.maxCoeff() <= 10.0);
          CHECK(inst.x0.minCoeff() >= 0.0);
          CHECK(inst.x0.maxCoeff() <= 5.0);

          // Sign rows, then i * x_i >= beta_i with beta_i in [0, 10].
          for (int i = 0; i < n; ++i) {
            CHECK(c.a()(i, i) == 1.0);
            CHECK(c.b()(i) == 0.0);
            CHECK(c.a()(n + i, i) == static_cast<double>(i + 1));
            CHECK(c.b()(n + i) >= 0.0);
            CHECK(c.b()(n + i) <= 10.0);
          }
          if (family == 1) {
            CHECK(c.b()(2 * n) == -5000.0);
            CHECK(c.a()(2 * n, n - 1) == -static_cast<double>(n));
            // Direct substitution of max(beta_i, 0.01) / i.
            Vector w(n);
            for (int i = 0; i < n; ++i) w(i) = std::max(c.b()(n + i), 0.01) / (i + 1);
            CHECK(is_feasible(c, w));
          } else {
            CHECK(c.b()(2 * n) == 10.0);
            CHECK(c.b()(2 * n + 1) == -100.0);
            CHECK(c.a()(2 * n, 0) == 1.0);
            if (n >= 2) CHECK(c.a()(2 * n, 1) == doctest::Approx(0.2));
          }
        }
      }
    }
  }

  TEST_CASE("family 2 resampling gives up on impossible dimensions") {
    // For large n the mixed row's lower bounds alone exceed 100 for every draw.
    CHECK_THROWS_AS(generate_family2(400, 1), GenerationFailed);
  }
}
