#include "doctest.h"
#include "krf/series.hpp"
#include "test_support.hpp"

using namespace krf;
using testing::dense;
using testing::naive_product;
using testing::random_series;

namespace {

TruncatedSeries poly1(const std::vector<Rational>& coeffs, int d) {
  TruncationSpec spec({d});
  TruncatedSeries s(spec);
  for (std::size_t j = 0; j < coeffs.size(); ++j) s.add_term({static_cast<int>(j)}, coeffs[j]);
  return s;
}

}  // namespace

TEST_CASE("one-variable products") {
  CHECK(mul(poly1({1, 1}, 2), poly1({1, -1}, 2)) == poly1({1, 0, -1}, 2));
  auto geo = poly1({1, 1, 1, 1}, 3);
  CHECK(mul(geo, geo) == poly1({1, 2, 3, 4}, 3));
  CHECK(mul(geo, TruncatedSeries::one(geo.truncation())) == geo);
  CHECK_THROWS_AS(mul(poly1({1}, 2), poly1({1}, 3)), std::invalid_argument);
}

TEST_CASE("inversion") {
  CHECK(invert_unit(poly1({1, -1}, 3)) == poly1({1, 1, 1, 1}, 3));
  CHECK(invert_unit(poly1({1}, 3)) == poly1({1}, 3));
  CHECK(invert_unit(poly1({2}, 3)) == poly1({make_rational(1, 2)}, 3));
  CHECK_THROWS_AS(invert_unit(poly1({0, 1}, 3)), std::domain_error);
}

TEST_CASE("integer powers") {
  CHECK(pow_int(poly1({1, 1}, 4), 0) == poly1({1}, 4));
  CHECK(pow_int(poly1({1, -1}, 2), -2) == poly1({1, 2, 3}, 2));
  CHECK_THROWS_AS(pow_int(poly1({0, 1}, 2), -1), std::domain_error);
  TruncationSpec spec({3, 2, 2});
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_series(spec, 5, true);
    CHECK(pow_int(f, 3) == mul(mul(f, f), f));
    CHECK(pow_int(f, -3) == invert_unit(mul(mul(f, f), f)));
    CHECK(pow_int(f, 7) == mul(pow_int(f, 3), pow_int(f, 4)));
  }
}

TEST_CASE("rational powers") {
  auto f = poly1({1, -1}, 4);
  auto half = pow_rational(f, make_rational(1, 2));
  CHECK(mul(half, half) == f);
  auto third = pow_rational(f, make_rational(-1, 3));
  CHECK(pow_int(third, -3) == f);
  CHECK_THROWS_AS(pow_rational(poly1({2, 1}, 3), make_rational(1, 2)), std::domain_error);
}

TEST_CASE("multiplication matches the schoolbook product") {
  TruncationSpec spec({4, 3, 2, 1});
  for (int trial = 0; trial < 50; ++trial) {
    auto f = random_series(spec, 8);
    auto g = random_series(spec, 8);
    CHECK(dense(mul(f, g)) == naive_product(dense(f), dense(g), spec.max_degree));
  }
}

TEST_CASE("ring axioms up to truncation") {
  TruncationSpec spec({3, 3});
  for (int trial = 0; trial < 30; ++trial) {
    auto f = random_series(spec, 6);
    auto g = random_series(spec, 6);
    auto h = random_series(spec, 6);
    CHECK(mul(mul(f, g), h) == mul(f, mul(g, h)));
    CHECK(mul(f, g) == mul(g, f));
    CHECK(mul(f, g + h) == mul(f, g) + mul(f, h));
    CHECK((f - f).is_zero());
    CHECK(f + (-f) == TruncatedSeries(spec));
  }
}

TEST_CASE("double inversion is the identity on units") {
  TruncationSpec spec({3, 2, 2});
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_series(spec, 6, true);
    auto inv = invert_unit(f);
    CHECK(mul(f, inv) == TruncatedSeries::one(spec));
    CHECK(invert_unit(inv) == f);
  }
}

TEST_CASE("partial derivatives") {
  TruncationSpec spec({3});
  auto y2 = TruncatedSeries::monomial(spec, {2});
  auto d = partial_derivative(y2, 0);
  CHECK(d.truncation() == TruncationSpec({2}));
  CHECK(d == TruncatedSeries::monomial(TruncationSpec({2}), {1}, 2));
  CHECK(partial_derivative(TruncatedSeries::constant(spec, 5), 0).is_zero());
  CHECK_THROWS_AS(partial_derivative(y2, 1), std::out_of_range);
}

TEST_CASE("product rule") {
  TruncationSpec spec({3, 3, 2});
  for (int trial = 0; trial < 30; ++trial) {
    auto f = random_series(spec, 6);
    auto g = random_series(spec, 6);
    const int a = testing::uniform(0, 2);
    auto lhs = partial_derivative(mul(f, g), a);
    const TruncationSpec& low = lhs.truncation();
    auto rhs = mul(partial_derivative(f, a), g.truncated(low)) + mul(f.truncated(low), partial_derivative(g, a));
    CHECK(lhs == rhs);
    CHECK(euler_derivative(mul(f, g), a) == mul(euler_derivative(f, a), g) + mul(f, euler_derivative(g, a)));
  }
}

TEST_CASE("truncation helpers") {
  TruncationSpec spec({3, 2});
  auto f = random_series(spec, 10);
  auto m = f.mod_variable_power(0, 2);
  for (const auto& [e, c] : m.terms()) CHECK(e[0] < 2);
  CHECK(f.truncated(spec) == f);
  CHECK_THROWS_AS(TruncationSpec({-1}), std::invalid_argument);
  CHECK_THROWS_AS(TruncationSpec({128}), std::invalid_argument);
}

TEST_CASE("series determinant") {
  TruncationSpec spec({3});
  auto y = TruncatedSeries::variable(spec, 0);
  auto one = TruncatedSeries::one(spec);
  // [[1, y], [y, 1]] -> 1 - y^2
  CHECK(series_determinant({{one, y}, {y, one}}) == one - mul(y, y));
  // Scalar matrices agree with the integer determinant.
  for (int trial = 0; trial < 20; ++trial) {
    const int n = testing::uniform(1, 5);
    Matrix<Integer> m(n, std::vector<Integer>(n));
    std::vector<std::vector<TruncatedSeries>> s(n, std::vector<TruncatedSeries>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const int v = testing::uniform(-3, 3);
        m[i][j] = v;
        s[i][j] = TruncatedSeries::constant(spec, v);
      }
    CHECK(series_determinant(s) == TruncatedSeries::constant(spec, Rational(bareiss_determinant(m))));
  }
}

TEST_CASE("JSON is sorted and round-trips") {
  TruncationSpec spec({2, 2});
  TruncatedSeries s(spec);
  s.add_term({1, 0}, make_rational(-1, 2));
  s.add_term({0, 2}, 3);
  s.add_term({0, 0}, 1);
  const auto j = s.to_json();
  CHECK(j.dump() ==
        R"([{"coeff":"1/1","exponents":[0,0]},{"coeff":"3/1","exponents":[0,2]},{"coeff":"-1/2","exponents":[1,0]}])");
  CHECK(TruncatedSeries::from_json(spec, j) == s);
}

TEST_CASE("group algebra") {
  auto x = GroupAlgebraElement::exponential(Weight({1}));
  auto xi = GroupAlgebraElement::exponential(Weight({-1}));
  auto chi = x + xi;
  auto sq = chi * chi;
  CHECK(sq.coefficient(Weight({0})) == 2);
  CHECK(sq.coefficient(Weight({2})) == 1);
  CHECK(sq.total() == 4);
  CHECK((chi - chi).is_zero());
}

TEST_CASE("embedding weights into y-series") {
  auto a1 = build_cartan("A1");
  TruncationSpec t1({3});
  auto chi = GroupAlgebraElement::exponential(Weight({1})) + GroupAlgebraElement::exponential(Weight({-1}));
  CHECK(embed_weight(a1, chi, Weight({1}), t1) == TruncatedSeries::one(t1) + TruncatedSeries::variable(t1, 0));
  CHECK(embed_weight(a1, GroupAlgebraElement::exponential(Weight({4})), Weight({4}), t1) == TruncatedSeries::one(t1));
  CHECK_THROWS_AS(embed_weight(a1, chi, Weight({0}), t1), std::domain_error);
  CHECK_THROWS_AS(embed_weight(a1, chi, Weight({-1}), t1), std::domain_error);

  auto a2 = build_cartan("A2");
  TruncationSpec t2({2, 2});
  GroupAlgebraElement fund(2);
  fund.add_term(Weight({1, 0}), 1);
  fund.add_term(Weight({-1, 1}), 1);
  fund.add_term(Weight({0, -1}), 1);
  TruncatedSeries expect(t2);
  expect.add_term({0, 0}, 1);
  expect.add_term({1, 0}, 1);
  expect.add_term({1, 1}, 1);
  CHECK(embed_weight(a2, fund, Weight({1, 0}), t2) == expect);

  // Ring homomorphism on products.
  auto prod = fund * fund;
  CHECK(embed_weight(a2, prod, Weight({2, 0}), t2) ==
        mul(embed_weight(a2, fund, Weight({1, 0}), t2), embed_weight(a2, fund, Weight({1, 0}), t2)));
}
