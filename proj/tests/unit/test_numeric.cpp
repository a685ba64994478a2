#include "doctest.h"
#include "krf/numeric.hpp"
#include "test_support.hpp"

using namespace krf;

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-6/4") == make_rational(-3, 2));
  CHECK(rational_string(make_rational(4, 2)) == "2/1");
  CHECK(rational_string(make_rational(-1, 3)) == "-1/3");
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("integrality assertion") {
  CHECK(to_integer(make_rational(6, 3), "t") == 2);
  CHECK_THROWS_AS(to_integer(make_rational(1, 2), "t"), IntegralityError);
}

TEST_CASE("bareiss agrees with rational elimination") {
  for (int trial = 0; trial < 200; ++trial) {
    const int n = testing::uniform(1, 6);
    Matrix<Integer> m(n, std::vector<Integer>(n));
    Matrix<Rational> q(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        // Many zeros to exercise pivoting.
        const int v = testing::uniform(0, 2) == 0 ? 0 : testing::uniform(-5, 5);
        m[i][j] = v;
        q[i][j] = v;
      }
    CHECK(Rational(bareiss_determinant(m)) == rational_determinant(q));
  }
  CHECK(bareiss_determinant({}) == 1);
  CHECK(bareiss_determinant({{Integer(0), Integer(1)}, {Integer(1), Integer(0)}}) == -1);
}

TEST_CASE("rational inverse") {
  Matrix<Rational> c{{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}};
  auto inv = rational_inverse(c);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Rational s = 0;
      for (int k = 0; k < 3; ++k) s += c[i][k] * inv[k][j];
      CHECK(s == (i == j ? 1 : 0));
    }
  CHECK_THROWS_AS(rational_inverse({{1, 2}, {2, 4}}), std::domain_error);
}

TEST_CASE("factorial") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
  CHECK(factorial(20) == Integer("2432902008176640000"));
}
