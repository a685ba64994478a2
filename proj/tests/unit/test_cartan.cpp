#include <set>

#include "doctest.h"
#include "krf/cartan.hpp"
#include "test_support.hpp"

using namespace krf;

namespace {

const std::vector<std::string> kAllAlgebras{"A1", "A2", "A3", "A8", "B2", "B3", "B8", "C2", "C3", "C8",
                                            "D3", "D4", "D5", "D8", "E6", "E7", "E8", "F4", "G2"};

std::set<Weight> weyl_orbit(const CartanData& c, const Weight& lambda) {
  std::set<Weight> seen{lambda};
  std::vector<Weight> frontier{lambda};
  while (!frontier.empty()) {
    Weight w = frontier.back();
    frontier.pop_back();
    for (int a = 0; a < c.rank(); ++a) {
      Weight r = simple_reflection(c, a, w);
      if (seen.insert(r).second) frontier.push_back(r);
    }
  }
  return seen;
}

}  // namespace

TEST_CASE("A1 data") {
  auto c = build_cartan("A1");
  CHECK(c.cartan(0, 0) == 2);
  CHECK(c.t(0) == 1);
  CHECK(c.form(0, 0) == 2);
}

TEST_CASE("B2 has the second vertex short") {
  auto c = build_cartan("B2");
  CHECK(c.t_vector() == std::vector<int>{1, 2});
  CHECK(c.cartan(0, 1) == -1);
  CHECK(c.cartan(1, 0) == -2);
}

TEST_CASE("C3 has the first two vertices short") {
  auto c = build_cartan("C3");
  CHECK(c.t_vector() == std::vector<int>{2, 2, 1});
  CHECK(c.form(0, 1) == make_rational(-1, 2));
  CHECK(c.cartan(1, 2) == -2);
  CHECK(c.cartan(2, 1) == -1);
}

TEST_CASE("G2 data") {
  auto c = build_cartan("G2");
  CHECK(c.t_vector() == std::vector<int>{1, 3});
  CHECK(c.cartan(0, 1) == -1);
  CHECK(c.cartan(1, 0) == -3);
  CHECK(c.form(1, 1) == make_rational(2, 3));
}

TEST_CASE("D4 spin nodes hang off vertex 2") {
  auto c = build_cartan("D4");
  CHECK(c.cartan(1, 2) == -1);
  CHECK(c.cartan(1, 3) == -1);
  CHECK(c.cartan(2, 3) == 0);
}

TEST_CASE("invalid algebra ids") {
  CHECK_THROWS_AS(build_cartan("E9"), std::invalid_argument);
  CHECK_THROWS_AS(build_cartan("F3"), std::invalid_argument);
  CHECK_THROWS_AS(build_cartan("D2"), std::invalid_argument);
  CHECK_THROWS_AS(build_cartan("B1"), std::invalid_argument);
  CHECK_THROWS_AS(build_cartan("A0"), std::invalid_argument);
  CHECK_THROWS_AS(build_cartan("A9"), std::invalid_argument);
  CHECK_THROWS_AS(build_cartan("X2"), std::invalid_argument);
  CHECK_THROWS_AS(build_cartan("A"), std::invalid_argument);
  CHECK(AlgebraId::parse("d4").name() == "D4");
}

TEST_CASE("structural invariants for every family") {
  for (const auto& name : kAllAlgebras) {
    CAPTURE(name);
    auto c = build_cartan(name);
    for (int a = 0; a < c.rank(); ++a) {
      CHECK(c.cartan(a, a) == 2);
      CHECK(c.form(a, a) == make_rational(2, c.t(a)));
      for (int b = 0; b < c.rank(); ++b) {
        CHECK(Rational(c.cartan(a, b)) == c.t(a) * c.form(a, b));
        CHECK(c.form(a, b) == c.form(b, a));
        if (a != b) CHECK(c.cartan(a, b) <= 0);
        for (int m = 1; m <= 20; ++m)
          for (int k = 1; k <= 20; ++k) {
            const std::int64_t x = std::min(c.t(b) * m, c.t(a) * k);
            CHECK(is_integer(c.form(a, b) * x));
          }
      }
    }
    CHECK(c.positive_roots().size() == expected_positive_root_count(c.id()));
  }
}

TEST_CASE("positive roots of rank two") {
  using R = std::vector<RootCoords>;
  CHECK(positive_roots(build_cartan("A1")) == R{{1}});
  auto a2 = positive_roots(build_cartan("A2"));
  CHECK(std::set<RootCoords>(a2.begin(), a2.end()) == std::set<RootCoords>{{1, 0}, {0, 1}, {1, 1}});
  auto b2 = positive_roots(build_cartan("B2"));
  CHECK(std::set<RootCoords>(b2.begin(), b2.end()) == std::set<RootCoords>{{1, 0}, {0, 1}, {1, 1}, {1, 2}});
  auto g2 = positive_roots(build_cartan("G2"));
  CHECK(std::set<RootCoords>(g2.begin(), g2.end()) ==
        std::set<RootCoords>{{1, 0}, {0, 1}, {1, 1}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(build_cartan("E8").positive_roots().size() == 120);
}

TEST_CASE("roots are nonnegative and sorted by height") {
  for (const auto& name : kAllAlgebras) {
    auto c = build_cartan(name);
    std::int64_t prev = 0;
    for (const auto& r : c.positive_roots()) {
      std::int64_t h = 0;
      for (auto x : r) {
        CHECK(x >= 0);
        h += x;
      }
      CHECK(h >= prev);
      prev = h;
    }
  }
}

TEST_CASE("simple reflections") {
  auto a1 = build_cartan("A1");
  CHECK(simple_reflection(a1, 0, Weight({1})) == Weight({-1}));
  auto a2 = build_cartan("A2");
  CHECK(simple_reflection(a2, 0, Weight({1, 1})) == Weight({-1, 2}));
  CHECK(a2.simple_root(0) == Weight({2, -1}));
  CHECK_THROWS_AS(simple_reflection(a2, 2, Weight({1, 1})), std::out_of_range);
  for (const auto& name : kAllAlgebras) {
    auto c = build_cartan(name);
    for (int trial = 0; trial < 10; ++trial) {
      Weight w = Weight::zero(c.rank());
      for (int b = 0; b < c.rank(); ++b) w[b] = testing::uniform(-3, 3);
      for (int a = 0; a < c.rank(); ++a) {
        CHECK(simple_reflection(c, a, simple_reflection(c, a, w)) == w);
        Weight s = simple_reflection(c, a, c.fundamental(a));
        CHECK(s == c.fundamental(a) - c.simple_root(a));
      }
    }
  }
}

TEST_CASE("Weyl orbits divide the group order") {
  for (const std::string name : {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2"}) {
    CAPTURE(name);
    auto c = build_cartan(name);
    for (int trial = 0; trial < 4; ++trial) {
      Weight w = Weight::zero(c.rank());
      for (int b = 0; b < c.rank(); ++b) w[b] = testing::uniform(0, 2);
      const auto orbit = weyl_orbit(c, w);
      CHECK(c.weyl_group_order() % orbit.size() == 0);
      CHECK(orbit.count(c.dominant_conjugate(*orbit.rbegin())) == 1);
      CHECK(c.dominant_conjugate(*orbit.begin()) == w);
    }
    CHECK(weyl_orbit(c, c.rho()).size() == c.weyl_group_order());
  }
}

TEST_CASE("root and weight coordinates round-trip") {
  for (const auto& name : kAllAlgebras) {
    auto c = build_cartan(name);
    for (const auto& r : c.positive_roots()) {
      auto back = c.weight_to_root(c.root_to_weight(r));
      REQUIRE(back.has_value());
      CHECK(*back == r);
    }
  }
  auto a1 = build_cartan("A1");
  CHECK_FALSE(a1.weight_to_root(Weight({1})).has_value());
}

TEST_CASE("weight form matches the root form") {
  for (const auto& name : kAllAlgebras) {
    auto c = build_cartan(name);
    for (int a = 0; a < c.rank(); ++a)
      for (int b = 0; b < c.rank(); ++b) {
        CHECK(c.weight_form(c.simple_root(a), c.simple_root(b)) == c.form(a, b));
        // (Lambda_a | alpha_b) = delta_ab / t_b
        CHECK(c.weight_form(c.fundamental(a), c.simple_root(b)) == (a == b ? make_rational(1, c.t(b)) : 0));
      }
  }
}
