#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ohol/group.hpp"

using namespace ohol;

TEST_CASE("jandl group") {
  auto g = jandl_group();
  REQUIRE(g.size() == 2);
  const int k = 1 - g.identity();
  CHECK(g.mul(k, k) == g.identity());
  CHECK(g.epsilon(k) == -1);
  CHECK_FALSE(g.epsilonTrivial());
  CHECK(g.kernel() == std::vector<int>{g.identity()});
  CHECK(twisted_action_on_phase(g, k, Phase::fromFraction(1, 3)) == Phase::fromFraction(2, 3));
  CHECK(twisted_action_on_phase(g, g.identity(), Phase::fromFraction(1, 3)) == Phase::fromFraction(1, 3));
}

TEST_CASE("twisted action is an action") {
  auto z4 = cyclic_group(4).withEpsilon({1, -1, 1, -1});
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int p = 0; p < 12; ++p) {
        Phase x = Phase::fromFraction(p, 12);
        CHECK(twisted_action_on_phase(z4, z4.mul(a, b), x) ==
              twisted_action_on_phase(z4, a, twisted_action_on_phase(z4, b, x)));
      }
}

TEST_CASE("quotient group") {
  auto jandl = jandl_group();
  auto v = direct_product(cyclic_group(2), jandl);
  auto q = quotient_group(v);
  CHECK(q.group.size() == 2);
  REQUIRE(q.projection.size() == 4u);
  for (int a = 0; a < 4; ++a) CHECK(q.group.epsilon(q.projection[a]) == v.epsilon(a));
  auto t = quotient_group(cyclic_group(3));
  CHECK(t.group.size() == 1);
  CHECK(t.projection == std::vector<int>{0, 0, 0});
}

TEST_CASE("constructors satisfy the axioms and have the right orders") {
  CHECK(trivial_group().size() == 1);
  CHECK(cyclic_group(6).size() == 6);
  CHECK(dihedral_group(4).size() == 8);
  CHECK(quaternion_group().size() == 8);
  auto q8 = quaternion_group();
  int involutions = 0;
  for (int a = 0; a < 8; ++a) involutions += (a != q8.identity() && q8.mul(a, a) == q8.identity());
  CHECK(involutions == 1);
  auto d4 = dihedral_group(4);
  involutions = 0;
  for (int a = 0; a < 8; ++a) involutions += (a != d4.identity() && d4.mul(a, a) == d4.identity());
  CHECK(involutions == 5);
}

TEST_CASE("sign characters count homomorphisms to Z2") {
  CHECK(sign_characters(cyclic_group(3)).size() == 1);
  CHECK(sign_characters(cyclic_group(4)).size() == 2);
  CHECK(sign_characters(direct_product(cyclic_group(2), cyclic_group(2))).size() == 4);
  CHECK(sign_characters(dihedral_group(4)).size() == 4);
  CHECK(sign_characters(quaternion_group()).size() == 4);
  CHECK(sign_characters(dihedral_group(3)).size() == 2);
  auto z2cubed = direct_product(direct_product(cyclic_group(2), cyclic_group(2)), cyclic_group(2));
  auto chars = sign_characters(z2cubed);
  CHECK(chars.size() == 8);
  CHECK(std::set<std::vector<int>>(chars.begin(), chars.end()).size() == 8);
  for (const auto& e : chars) CHECK_NOTHROW(z2cubed.withEpsilon(e));
}

TEST_CASE("invalid tables are input errors") {
  CHECK_THROWS_AS(OrientifoldGroup({"a", "b"}, {{0, 1}, {1, 1}}, {1, 1}), InputError);
  CHECK_THROWS_AS(OrientifoldGroup({"a", "b"}, {{0, 1}, {1, 0}}, {1, 1, 1}), InputError);
  CHECK_THROWS_AS(OrientifoldGroup({"a", "b"}, {{0, 1}, {1, 2}}, {1, 1}), InputError);
  CHECK_THROWS_AS(OrientifoldGroup({"a", "b"}, {{0, 1}, {1, 0}}, {-1, 1}), InputError);
  CHECK_THROWS_AS(OrientifoldGroup({"a", "b"}, {{0, 1}, {1, 0}}, {1, 2}), InputError);
  // Z3 admits no nontrivial sign.
  CHECK_THROWS_AS(cyclic_group(3).withEpsilon({1, -1, -1}), InputError);
  // Not associative: a 3-element loop.
  CHECK_THROWS_AS(OrientifoldGroup({"e", "a", "b"}, {{0, 1, 2}, {1, 0, 0}, {2, 0, 0}}, {1, 1, 1}), InputError);
}

TEST_CASE("actions") {
  auto v = direct_product(cyclic_group(2), jandl_group());
  auto reg = regular_action(v);
  CHECK_NOTHROW(check_action(v, reg));
  CHECK(kernel_acts_freely(v, reg));
  IndexAction trivial{3, std::vector<std::vector<int>>(4, {0, 1, 2})};
  CHECK_NOTHROW(check_action(v, trivial));
  CHECK_FALSE(kernel_acts_freely(v, trivial));
  CHECK(kernel_acts_freely(jandl_group(), IndexAction{1, {{0}, {0}}}));
  IndexAction broken = reg;
  std::swap(broken.act[1][0], broken.act[1][1]);
  CHECK_THROWS_AS(check_action(v, broken), SemanticError);
}
