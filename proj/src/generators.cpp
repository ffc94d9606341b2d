#include <algorithm>
#include <string>

#include "iqp/errors.hpp"
#include "iqp/model.hpp"
#include "iqp/rng.hpp"

namespace iqp {

namespace {

constexpr double kDataLo = 0.0;
constexpr double kDataHi = 10.0;
constexpr double kStartHi = 5.0;
constexpr double kBudget = 5000.0;
constexpr double kMixLo = 10.0;
constexpr double kMixHi = 100.0;
constexpr double kWitnessFloor = 0.01;
constexpr int kMaxResamples = 100;

// Draw order is part of the reproducibility contract:
// Q upper triangle row-major, then q, then beta, then x0.
struct RandomData {
  SymMatrix Q;
  Vector q;
  Vector beta;
  Vector x0;
};

RandomData draw(int n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix q_mat(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) q_mat(i, j) = q_mat(j, i) = rng.uniform(kDataLo, kDataHi);
  }
  Vector q(n), beta(n), x0(n);
  for (int i = 0; i < n; ++i) q(i) = rng.uniform(kDataLo, kDataHi);
  for (int i = 0; i < n; ++i) beta(i) = rng.uniform(kDataLo, kDataHi);
  for (int i = 0; i < n; ++i) x0(i) = rng.uniform(kDataLo, kStartHi);
  return {SymMatrix(std::move(q_mat)), std::move(q), std::move(beta), std::move(x0)};
}

// Rows 0..n-1: x_i >= 0. Rows n..2n-1: (i+1) x_i >= beta_i.
void fill_bounds(Matrix& a, Vector& b, const Vector& beta) {
  const auto n = beta.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = 1.0;
    b(i) = 0.0;
    a(n + i, i) = static_cast<double>(i + 1);
    b(n + i) = beta(i);
  }
}

Vector lower_witness(const Vector& beta) {
  Vector w(beta.size());
  for (Eigen::Index i = 0; i < beta.size(); ++i) {
    w(i) = std::max(beta(i), kWitnessFloor) / static_cast<double>(i + 1);
  }
  return w;
}

void require_positive(int n) {
  if (n < 1) throw InvalidInput("generator: dimension must be >= 1, got " + std::to_string(n));
}

}  // namespace

Instance generate_family1(int n, std::uint64_t seed) {
  require_positive(n);
  auto data = draw(n, seed);

  Matrix a = Matrix::Zero(2 * n + 1, n);
  Vector b(2 * n + 1);
  fill_bounds(a, b, data.beta);
  for (int i = 0; i < n; ++i) a(2 * n, i) = -static_cast<double>(i + 1);
  b(2 * n) = -kBudget;

  Vector witness = lower_witness(data.beta);
  Polyhedron probe(a, b);
  if (!is_feasible(probe, witness)) {
    throw GenerationFailed("generate_family1: budget row infeasible for n=" + std::to_string(n));
  }
  return {IqProblem(std::move(data.Q), std::move(data.q), probe.with_witness(std::move(witness))),
          std::move(data.x0)};
}

Instance generate_family2(int n, std::uint64_t seed) {
  require_positive(n);
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    auto data = draw(n, seed + static_cast<std::uint64_t>(attempt));

    Matrix a = Matrix::Zero(2 * n + 2, n);
    Vector b(2 * n + 2);
    fill_bounds(a, b, data.beta);
    for (int i = 0; i < n; ++i) {
      const double coef = i == 0 ? 1.0 : 0.1 * static_cast<double>(i + 1);
      a(2 * n, i) = coef;
      a(2 * n + 1, i) = -coef;
    }
    b(2 * n) = kMixLo;
    b(2 * n + 1) = -kMixHi;

    // The lower bounds fix the smallest reachable value of the mixed row;
    // raising x_1 is the only adjustment needed to meet its lower end.
    Vector witness = lower_witness(data.beta);
    const double mixed = a.row(2 * n).dot(witness);
    if (mixed < kMixLo) witness(0) += kMixLo - mixed;

    Polyhedron probe(a, b);
    if (is_feasible(probe, witness)) {
      return {IqProblem(std::move(data.Q), std::move(data.q), probe.with_witness(std::move(witness))),
              std::move(data.x0)};
    }
  }
  throw GenerationFailed("generate_family2: no feasible draw for n=" + std::to_string(n) + " after " +
                         std::to_string(kMaxResamples) + " attempts");
}

Instance generate_instance(int family, int n, std::uint64_t seed) {
  switch (family) {
    case 1:
      return generate_family1(n, seed);
    case 2:
      return generate_family2(n, seed);
    default:
      throw InvalidInput("unknown constraint family " + std::to_string(family) + " (expected 1 or 2)");
  }
}

}  // namespace iqp
