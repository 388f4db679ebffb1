#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "diamond/errors.hpp"
#include "diamond/linalg.hpp"
#include "support/fixtures.hpp"

using namespace diamond;

TEST_CASE("identity inverts to itself", "[linalg]") {
  const auto id = ComplexMatrix::identity(8);
  CHECK(invert(id) == id);
}

TEST_CASE("diagonal inverse is elementwise reciprocal", "[linalg]") {
  std::vector<cplx> d{{2, 1}, {-3, 0}, {0, 4}, {1e-3, 1e-3}, {5, -5}, {7, 0}, {0, -0.5}, {1, 1}};
  const auto inv = invert(ComplexMatrix::diagonal(d));
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      const cplx expected = i == j ? 1.0 / d[i] : 0.0;
      CHECK(std::abs(inv(i, j) - expected) <= 1e-15 * std::abs(expected) + 1e-300);
    }
  }
}

TEST_CASE("inverse matches full-pivot elimination oracle", "[linalg][oracle]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = fixtures::random_matrix(rng, 8, 4.0);
    const auto lib = invert(a);
    const auto ref = fixtures::inverse_oracle(a);
    CHECK(max_abs_diff(lib, ref) <= 1e-12 * ref.max_abs());
  }
}

TEST_CASE("inversion residual on random well-conditioned matrices", "[linalg][property]") {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = fixtures::random_matrix(rng, 8, 8.0);
    const auto r = matmul(a, invert(a)) - ComplexMatrix::identity(8);
    worst = std::max(worst, r.max_abs() / a.max_abs());
  }
  CHECK(worst <= 1e-10);
}

namespace {

ComplexMatrix conditioned(double smallest, std::uint64_t seed) {
  std::vector<cplx> d(8, 1.0);
  d[7] = smallest;
  std::mt19937_64 rng(seed);
  const auto q = fixtures::random_matrix(rng, 8, 8.0);
  return matmul(matmul(q, ComplexMatrix::diagonal(d)), invert(q));
}

}  // namespace

TEST_CASE("moderately conditioned matrix meets the 1e-10 residual bound", "[linalg]") {
  const auto a = conditioned(1e-4, 5);
  const auto r = matmul(a, invert(a)) - ComplexMatrix::identity(8);
  CHECK(r.max_abs() <= 1e-10 * a.max_abs());
}

TEST_CASE("residual at condition number 1e8 stays at the rounding floor", "[linalg]") {
  const auto a = conditioned(1e-8, 5);
  const auto inv = invert(a);
  const double kappa = 8.0 * a.max_abs() * inv.max_abs();
  REQUIRE(kappa > 1e8);
  const auto r = matmul(a, inv) - ComplexMatrix::identity(8);
  CHECK(r.max_abs() <= 64.0 * std::numeric_limits<double>::epsilon() * kappa * a.max_abs());
  const auto ref = fixtures::inverse_oracle(a);
  CHECK(max_abs_diff(inv, ref) <= 64.0 * std::numeric_limits<double>::epsilon() * kappa * ref.max_abs());
}

TEST_CASE("singular matrices are rejected", "[linalg]") {
  CHECK_THROWS_AS(invert(ComplexMatrix(3, 3)), SingularMatrix);
  std::vector<cplx> e{1, 2, 2, 4};
  CHECK_THROWS_AS(invert(ComplexMatrix(2, 2, e)), SingularMatrix);
  std::vector<cplx> tiny{1, 0, 0, 1e-16};
  CHECK_THROWS_AS(invert(ComplexMatrix(2, 2, tiny)), SingularMatrix);
}

TEST_CASE("matmul identity and dimension checks", "[linalg]") {
  std::mt19937_64 rng(3);
  const auto a = fixtures::random_matrix(rng, 8, 0.0);
  CHECK(matmul(ComplexMatrix::identity(8), a) == a);
  CHECK(matmul(a, ComplexMatrix::identity(8)) == a);
  CHECK_THROWS_AS(matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), DimensionMismatch);
  CHECK_THROWS_AS(invert(ComplexMatrix(2, 3)), DimensionMismatch);
  CHECK_THROWS_AS(ComplexMatrix(0, 3), DimensionMismatch);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<cplx>(3)), DimensionMismatch);
}

TEST_CASE("non-finite entries are rejected on construction", "[linalg]") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(ComplexMatrix(1, 1, {cplx(nan, 0)}), NonFiniteValue);
  CHECK_THROWS_AS(ComplexVector(std::vector<cplx>{cplx(0, INFINITY)}), NonFiniteValue);
}

TEST_CASE("matvec agrees with a matmul column", "[linalg]") {
  std::mt19937_64 rng(9);
  const auto a = fixtures::random_matrix(rng, 5, 1.0);
  const auto b = fixtures::random_matrix(rng, 5, 1.0);
  const auto prod = matmul(a, b);
  for (std::size_t c = 0; c < 5; ++c) {
    const auto v = matvec(a, b.column(c));
    for (std::size_t r = 0; r < 5; ++r) CHECK(std::abs(v[r] - prod(r, c)) <= 1e-14);
  }
  CHECK(a.transpose().transpose() == a);
}
