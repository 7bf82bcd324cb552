#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "catent/int_matrix.hpp"

using namespace catent;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t n, int span) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = static_cast<int>(rng() % (2 * span + 1)) - span;
  return m;
}

// Product of random elementary row operations: always determinant +-1.
IntMatrix random_unimodular(std::mt19937& rng, std::size_t n) {
  IntMatrix m = IntMatrix::identity(n);
  for (int step = 0; step < 12; ++step) {
    std::size_t i = rng() % n, j = rng() % n;
    if (i == j) continue;
    Int k = static_cast<int>(rng() % 5) - 2;
    for (std::size_t c = 0; c < n; ++c) m(i, c) += k * m(j, c);
  }
  return m;
}

}  // namespace

TEST_CASE("matrix literals validate shape", "[int_matrix]") {
  CHECK_THROWS_AS(IntMatrix({{1, 2}, {3}}), error);
  IntMatrix m{{1, 2}, {3, 4}};
  CHECK(m.rows() == 2);
  CHECK(m(1, 0) == 3);
  CHECK(m.transpose()(0, 1) == 3);
}

TEST_CASE("determinant agrees with closed forms", "[int_matrix]") {
  CHECK(det(IntMatrix{{5}}) == 5);
  CHECK(det(IntMatrix{{1, 2}, {3, 4}}) == -2);
  CHECK(det(IntMatrix{{2, 0, 1}, {1, 1, 0}, {0, 3, 1}}) == 5);
  CHECK(det(IntMatrix::identity(6)) == 1);

  std::mt19937 rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 3;
    IntMatrix a = random_matrix(rng, n, 4);
    IntMatrix b = random_matrix(rng, n, 4);
    CHECK(det(a * b) == det(a) * det(b));
    CHECK(det(a.transpose()) == det(a));
  }
}

TEST_CASE("unimodular inverse is an exact two-sided inverse", "[int_matrix]") {
  std::mt19937 rng(202);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    IntMatrix u = random_unimodular(rng, n);
    IntMatrix inv = unimodular_inverse(u);
    CHECK(u * inv == IntMatrix::identity(n));
    CHECK(inv * u == IntMatrix::identity(n));
  }
  CHECK_THROWS_AS(unimodular_inverse(IntMatrix{{2, 0}, {0, 1}}), error);
  CHECK_THROWS_AS(unimodular_inverse(IntMatrix{{1, 2}, {2, 4}}), error);
}

TEST_CASE("characteristic polynomial on frozen examples", "[int_matrix]") {
  // x^2 - 3x + 1
  CHECK(char_poly(IntMatrix{{2, 1}, {1, 1}}) == std::vector<Int>{1, -3, 1});
  // Companion matrix of x^3 - 2x - 5.
  IntMatrix companion{{0, 0, 5}, {1, 0, 2}, {0, 1, 0}};
  CHECK(char_poly(companion) == std::vector<Int>{1, 0, -2, -5});
  // Nilpotent: x^2.
  CHECK(char_poly(IntMatrix{{0, 1}, {0, 0}}) == std::vector<Int>{1, 0, 0});
  CHECK(char_poly(IntMatrix::identity(3)) == std::vector<Int>{1, -3, 3, -1});
}

TEST_CASE("characteristic polynomial is monic, similarity-invariant, and Cayley-Hamilton holds",
          "[int_matrix]") {
  std::mt19937 rng(303);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 2 + rng() % 3;
    IntMatrix m = random_matrix(rng, n, 3);
    const std::vector<Int> cp = char_poly(m);
    REQUIRE(cp.size() == n + 1);
    CHECK(cp[0] == 1);
    CHECK(cp[1] == -m.trace());
    Int sign = (n % 2 == 0) ? 1 : -1;
    CHECK(cp[n] == sign * det(m));

    IntMatrix p = random_unimodular(rng, n);
    CHECK(char_poly(p * m * unimodular_inverse(p)) == cp);

    IntMatrix acc(n, n);
    for (const Int& c : cp) acc = acc * m + c * IntMatrix::identity(n);
    CHECK(acc == IntMatrix(n, n));
  }
}

TEST_CASE("pow and apply", "[int_matrix]") {
  IntMatrix m{{1, 1}, {0, 1}};
  CHECK(m.pow(0) == IntMatrix::identity(2));
  CHECK(m.pow(5) == (IntMatrix{{1, 5}, {0, 1}}));
  CHECK(m.apply(std::vector<Int>{3, 4}) == std::vector<Int>{7, 4});
  CHECK_THROWS_AS(m.apply(std::vector<Int>{1}), error);
}
