#include <doctest.h>

#include <algorithm>

#include "support.hpp"

using namespace xcomplex;

TEST_CASE("Klein four-group") {
  FiniteGroup v = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  CHECK(v.order() == 4);
  CHECK(v.is_abelian());
  CHECK(testing::order_profile(v) == std::vector<int>{1, 2, 2, 2});
  CHECK(v.subgroups().size() == 5);
  CHECK(v.closure({}).size() == 1);
}

TEST_CASE("symmetric group S3") {
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  CHECK(s3.order() == 6);
  CHECK(!s3.is_abelian());
  CHECK(testing::order_profile(s3) == std::vector<int>{1, 2, 2, 2, 3, 3});
  CHECK(s3.subgroups().size() == 6);
  FiniteGroup p = FiniteGroup::from_permutations(3, {{1, 2, 0}, {1, 0, 2}});
  CHECK(p.order() == 6);
  CHECK(testing::order_profile(p) == testing::order_profile(s3));
  for (int a = 0; a < s3.order(); ++a) {
    CHECK(s3.mul(a, s3.inv(a)) == s3.identity());
    CHECK(s3.element_order(a) == s3.element_order(s3.inv(a)));
  }
}

TEST_CASE("Z/3 semidirect Z/2 is S3") {
  FiniteGroup g = semidirect(testing::z2_on_z3());
  CHECK(g.order() == 6);
  CHECK(!g.is_abelian());
  CHECK(testing::order_profile(g) == testing::order_profile(FiniteGroup::symmetric(3)));
  // trivial action gives the cyclic group of order 6
  FiniteGroup c = semidirect(PiModule::trivial_action(FiniteGroup::cyclic(2), FgAbelianGroup::cyclic(3)));
  CHECK(c.is_abelian());
  CHECK(testing::order_profile(c) == testing::order_profile(FiniteGroup::cyclic(6)));
}

TEST_CASE("tables that are not groups are rejected") {
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), ValidationError);
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}), ValidationError);
  CHECK_THROWS_AS(FiniteGroup::cyclic(6).with_generators({2}), ValidationError);
  CHECK(FiniteGroup::cyclic(6).with_generators({5}).generators() == std::vector<int>{5});
}

TEST_CASE("module actions must be homomorphisms") {
  IntMatrix two(1, 1);
  two(0, 0) = 2;
  CHECK_THROWS_AS(PiModule(FiniteGroup::cyclic(2), FgAbelianGroup::cyclic(5), {two}), ValidationError);
  PiModule m = testing::s3_on_z7();
  for (int g = 0; g < m.pi().order(); ++g)
    for (int a = 0; a < m.module_size(); ++a) {
      int sign = m.pi().element_order(g) == 2 ? -1 : 1;
      CHECK(m.act_index(g, a) == ((sign * a) % 7 + 7) % 7);
    }
}

TEST_CASE("action groupoid of S3 on three points") {
  // S3 acting on the cosets of an order-2 subgroup
  FiniteGroup reg = FiniteGroup::symmetric(3);
  std::vector<std::vector<int>> subs = reg.subgroups();
  std::vector<int> h = subs[1];  // an order-2 subgroup
  std::vector<std::vector<int>> cosets;
  for (int a = 0; a < reg.order(); ++a) {
    std::vector<int> cs;
    for (int y : h) cs.push_back(reg.mul(a, y));
    std::sort(cs.begin(), cs.end());
    if (std::find(cosets.begin(), cosets.end(), cs) == cosets.end()) cosets.push_back(cs);
  }
  REQUIRE(cosets.size() == 3);
  std::vector<std::vector<int>> act(reg.order(), std::vector<int>(3));
  for (int a = 0; a < reg.order(); ++a)
    for (int i = 0; i < 3; ++i) {
      std::vector<int> cs;
      for (int y : cosets[i]) cs.push_back(reg.mul(a, y));
      std::sort(cs.begin(), cs.end());
      act[a][i] = static_cast<int>(std::find(cosets.begin(), cosets.end(), cs) - cosets.begin());
    }
  GroupAction ga(reg, 3, act);
  Groupoid gd = action_groupoid(ga);
  gd.validate();
  CHECK(gd.num_objects() == 3);
  CHECK(gd.num_morphisms() == 18);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) CHECK(gd.hom(x, y).size() == 2);
  CHECK(!gd.is_totally_disconnected());
  std::vector<int> proj = action_groupoid_projection(ga);
  Groupoid one = Groupoid::from_group(reg);
  validate_functor(gd, one, {0, 0, 0}, proj);
  CHECK(star_surjective(gd, one, {0, 0, 0}, proj));
  CHECK(testing::brute_star_surjective(gd, one, {0, 0, 0}, proj));
}

TEST_CASE("discrete groupoid into a nontrivial group is not star-surjective") {
  Groupoid d = Groupoid::discrete(2);
  Groupoid g = Groupoid::from_group(FiniteGroup::cyclic(3));
  std::vector<int> f1{0, 0};
  validate_functor(d, g, {0, 0}, f1);
  CHECK(!star_surjective(d, g, {0, 0}, f1));
  CHECK(!testing::brute_star_surjective(d, g, {0, 0}, f1));
}

TEST_CASE("property: star-surjectivity agrees with the brute-force oracle") {
  CHECK_MESSAGE(testing::suite_star_surjectivity(testing::seed(), testing::kCases) == "", "seed ", testing::seed());
}
