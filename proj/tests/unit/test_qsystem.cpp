#include <set>

#include "doctest.h"
#include "krf/fermionic.hpp"
#include "krf/qsystem.hpp"
#include "test_support.hpp"

using namespace krf;

namespace {

TruncatedSeries geometric(const TruncationSpec& spec, int m) {
  TruncatedSeries s(spec);
  for (int j = 0; j <= m; ++j) s.add_term({j}, 1);
  return s;
}

}  // namespace

TEST_CASE("B-function simply-laced diagonal is delta") {
  auto c = build_cartan("A3");
  for (int a = 0; a < 3; ++a)
    for (int m = 1; m <= 8; ++m)
      for (int k = 1; k <= 8; ++k) CHECK(b_coeff(c, {a, m}, {a, k}) == (m == k ? 1 : 0));
}

TEST_CASE("B-function mixed lengths") {
  auto b2 = build_cartan("B2");
  // (t_a, t_b) = (2, 1)
  CHECK(b_coeff(b2, {1, 3}, {0, 1}) == 1);
  CHECK(b_coeff(b2, {1, 2}, {0, 1}) == 2);
  // (t_a, t_b) = (1, 2)
  CHECK(b_coeff(b2, {0, 1}, {1, 2}) == 1);
  CHECK(b_coeff(b2, {0, 1}, {1, 1}) == 0);
  auto g2 = build_cartan("G2");
  // (t_a, t_b) = (3, 1)
  CHECK(b_coeff(g2, {1, 3}, {0, 1}) == 3);
  CHECK(b_coeff(g2, {1, 4}, {0, 1}) == 2);
  CHECK(b_coeff(g2, {1, 5}, {0, 1}) == 1);
  CHECK(b_coeff(g2, {1, 5}, {0, 2}) == 2);
  CHECK(b_coeff(g2, {1, 4}, {0, 2}) == 1);
}

TEST_CASE("B-function identities on all test algebras") {
  for (const auto& name : testing::all_test_algebras()) {
    CAPTURE(name);
    auto c = build_cartan(name);
    for (int a = 0; a < c.rank(); ++a) {
      for (int m = 1; m <= 12; ++m) {
        const ModeIndex am{a, m};
        std::set<ModeIndex> support;
        for (const auto& [bk, v] : b_support(c, am)) support.insert(bk);
        std::vector<Rational> weight_sum_q(c.rank(), Rational(0));
        for (int b = 0; b < c.rank(); ++b) {
          std::int64_t sum_k = 0;
          for (int k = 1; k <= 60; ++k) {
            const auto v = b_coeff(c, am, {b, k});
            CHECK(v == b_coeff_closed_form(c, am, {b, k}));
            CHECK((v != 0) == (support.count({b, k}) == 1));
            sum_k += v * k;
          }
          CHECK(sum_k == std::int64_t(c.t(b)) * m);
          for (int k = 1; k <= 12; ++k) {
            std::int64_t s = 0;
            for (int j = 1; j <= 60; ++j) s += b_coeff(c, am, {b, j}) * std::min(j, k);
            CHECK(s == std::min(c.t(b) * m, c.t(a) * k));
          }
          weight_sum_q[b] = c.form(a, b) * sum_k;
        }
        // sum (alpha_a|alpha_b) B k Lambda_b = m alpha_a
        const Weight target = m * c.simple_root(a);
        for (int b = 0; b < c.rank(); ++b) CHECK(weight_sum_q[b] == Rational(target[b]));
      }
    }
  }
}

TEST_CASE("B vanishes from H_l to its complement") {
  for (const auto& name : testing::all_test_algebras()) {
    auto c = build_cartan(name);
    for (int l = 1; l <= 4; ++l)
      for (const auto& am : level_set(c, l))
        for (const auto& [bk, v] : b_support(c, am)) CHECK(in_level_set(c, l, bk));
  }
}

TEST_CASE("A1 forward recursion reproduces the geometric sums") {
  auto c = build_cartan("A1");
  const int l = 5;
  const auto spec = TruncationSpec::for_level(c, l);
  auto table = q_forward(c, {geometric(spec, 1)}, l);
  for (int m = 1; m <= l + 1; ++m) CHECK(table.get({0, m}) == geometric(spec, m));
  CHECK(check_qsystem(c, table).clean());
  CHECK(check_qsystem(c, table).checked == l);
  CHECK(check_convergence(table) == std::vector<bool>{true});
}

TEST_CASE("constant term of Q_m is the m-th power") {
  for (const std::string name : {"A2", "B2", "G2"}) {
    auto c = build_cartan(name);
    const auto spec = TruncationSpec::for_level(c, 2);
    std::vector<TruncatedSeries> q1;
    for (int a = 0; a < c.rank(); ++a) {
      auto s = testing::random_series(spec, 4);
      s.add_term(std::vector<int>(c.rank(), 0), a + 2 - s.constant_term());
      q1.push_back(s);
    }
    auto table = q_forward(c, q1, 2);
    for (const auto& [am, q] : table.entries()) {
      Rational expect = 1;
      for (int i = 0; i < am.m; ++i) expect *= (am.a + 2);
      CHECK(q.constant_term() == expect);
    }
  }
}

TEST_CASE("non-solutions are detected") {
  auto c = build_cartan("A1");
  const auto spec = TruncationSpec::for_level(c, 3);
  auto table = q_forward(c, {geometric(spec, 1)}, 3);
  auto bad = table;
  bad.set({0, 1}, table.get({0, 1}) + TruncatedSeries::monomial(spec, {2}));
  auto report = check_qsystem(c, bad);
  REQUIRE_FALSE(report.clean());
  CHECK(report.residuals.front().first == ModeIndex{0, 1});

  auto bad2 = table;
  bad2.set({0, 2}, table.get({0, 1}) + TruncatedSeries::variable(spec, 0));
  CHECK(check_convergence(bad2) == std::vector<bool>{false});
}

TEST_CASE("forward recursion from the fermionic Q_1 matches the fermionic table") {
  for (const std::string name : {"A2", "B2", "C2", "G2"}) {
    CAPTURE(name);
    auto c = build_cartan(name);
    const int l = name == "G2" ? 1 : 2;
    auto fermionic = fermionic_qtable(c, l);
    std::vector<TruncatedSeries> q1;
    for (int a = 0; a < c.rank(); ++a) q1.push_back(fermionic.get({a, 1}));
    auto forward = q_forward(c, q1, l);
    for (const auto& [am, q] : fermionic.entries()) CHECK(forward.get(am) == q);
    CHECK(check_qsystem(c, fermionic).clean());
    for (bool ok : check_convergence(fermionic)) CHECK(ok);
  }
}

TEST_CASE("B2 fermionic table at level 3") {
  auto c = build_cartan("B2");
  auto table = fermionic_qtable(c, 3);
  CHECK(check_qsystem(c, table).clean());
  CHECK(check_convergence(table) == std::vector<bool>{true, true});
}

TEST_CASE("q_forward rejects non-units") {
  auto c = build_cartan("A1");
  const auto spec = TruncationSpec::for_level(c, 2);
  CHECK_THROWS_AS(q_forward(c, {TruncatedSeries::variable(spec, 0)}, 2), std::domain_error);
  CHECK_THROWS_AS(q_forward(c, {}, 2), std::invalid_argument);
}

TEST_CASE("library B-identity report") {
  for (const auto& name : testing::all_test_algebras()) {
    const auto report = verify_b_identities(build_cartan(name), 12);
    CHECK(report.clean());
    CHECK(report.checked > 0);
  }
}
