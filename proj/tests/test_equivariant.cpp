#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace xcomplex;

namespace {

FgAbelianGroup oracle_group(const GSimplicialSet& x, int n) {
  auto [rank, torsion] = testing::orbit_cohomology(x, n);
  return FgAbelianGroup::canonical(rank, torsion);
}

// The 4-gon with edges i -> i+1, covered by the arcs 0-1-2 and 2-3-0.
GSimplicialSet square() { return GSimplicialSet::trivial(SimplicialSet::polygon(4), FiniteGroup::trivial()); }
const std::vector<std::vector<bool>> kArcA{{true, true, true, false}, {true, true, false, false}};
const std::vector<std::vector<bool>> kArcB{{true, false, true, true}, {false, false, true, true}};

// Covers of the reflection square through its fixed vertices 0 and 2.
const std::vector<std::vector<bool>> kHalfA{{true, true, false, true}, {true, true, false, false}};
const std::vector<std::vector<bool>> kHalfB{{false, true, true, true}, {false, false, true, true}};

}  // namespace

TEST_CASE("orbit category of Z/2") {
  OrbitCategory oc(FiniteGroup::cyclic(2));
  CHECK(oc.num_objects() == 2);
  CHECK(oc.num_morphisms() == 4);
  CHECK(oc.hom(0, 0).size() == 2);
  CHECK(oc.hom(0, 1).size() == 1);
  CHECK(oc.hom(1, 0).empty());
  CHECK(oc.hom(1, 1).size() == 1);
}

TEST_CASE("orbit category of S3 against coset enumeration") {
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  OrbitCategory oc(s3);
  CHECK(oc.num_objects() == 6);
  CHECK(oc.subgroup(oc.trivial_subgroup()).size() == 1);
  CHECK(oc.subgroup(oc.whole_group()).size() == 6);
  int total = 0;
  for (int h = 0; h < oc.num_objects(); ++h)
    for (int k = 0; k < oc.num_objects(); ++k) {
      int expected = testing::orbit_hom_count(s3, oc.subgroup(h), oc.subgroup(k));
      CHECK(static_cast<int>(oc.hom(h, k).size()) == expected);
      total += expected;
    }
  CHECK(oc.num_morphisms() == total);
  // identities and associativity
  for (int a = 0; a < oc.num_morphisms(); ++a) {
    CHECK(oc.compose(oc.identity(oc.source(a)), a) == a);
    CHECK(oc.compose(a, oc.identity(oc.target(a))) == a);
    for (int b : oc.hom(oc.target(a), oc.target(a)))
      for (int c = 0; c < oc.num_morphisms(); ++c)
        if (oc.source(c) == oc.target(b)) CHECK(oc.compose(oc.compose(a, b), c) == oc.compose(a, oc.compose(b, c)));
  }
}

TEST_CASE("fixed points") {
  GSimplicialSet rc = testing::reflection_circle();
  Subcomplex all = fixed_points(rc, {0});
  CHECK(all.set.count(0) == 2);
  CHECK(all.set.count(1) == 2);
  Subcomplex fixed = fixed_points(rc, {0, 1});
  CHECK(fixed.set.count(0) == 2);
  CHECK(fixed.set.count(1) == 0);
  CHECK(fixed_points(testing::free_zero_sphere(), {0, 1}).set.count(0) == 0);
  Subcomplex sq = fixed_points(testing::reflection_square(), {0, 1});
  CHECK(sq.set.count(0) == 2);
  CHECK(sq.contains(0, 0));
  CHECK(sq.contains(0, 2));
}

TEST_CASE("actions must commute with faces") {
  SimplicialSet s = SimplicialSet::points(2);
  s.add_simplex_by_ids(1, {1, 0});
  // swapping the endpoints while fixing the edge reverses it
  CHECK_THROWS_AS(GSimplicialSet::from_generators(s, FiniteGroup::cyclic(2), {{{1, 0}, {0}}}), ValidationError);
}

TEST_CASE("omega must be compatible with the action") {
  GSimplicialSet rc = testing::reflection_circle();
  OrbitCategory oc(rc.group());
  EquivariantLocalSystem l = testing::shared_labels(oc, rc, testing::z2_on_z4(), {1, 1});
  l.omega[0][1] = 0;
  CHECK_THROWS_AS(l.validate(oc, rc), ValidationError);
}

TEST_CASE("constant coefficients against the orbit-space oracle") {
  for (const GSimplicialSet& x : {testing::reflection_circle(), testing::free_zero_sphere(),
                                  testing::reflection_square()}) {
    OrbitCategory oc(x.group());
    EquivariantLocalSystem l = EquivariantLocalSystem::constant(oc, x, FgAbelianGroup::free(1));
    for (int n = 0; n <= 2; ++n) CHECK(bredon_h(x, l, n) == oracle_group(x, n));
  }
  GSimplicialSet rc = testing::reflection_circle();
  OrbitCategory oc(rc.group());
  EquivariantLocalSystem l = EquivariantLocalSystem::constant(oc, rc, FgAbelianGroup::free(1));
  CHECK(bredon_h(rc, l, 0) == FgAbelianGroup::free(1));
  CHECK(bredon_h(rc, l, 1).is_trivial());
  GSimplicialSet fs = testing::free_zero_sphere();
  OrbitCategory ofs(fs.group());
  CHECK(bredon_h(fs, EquivariantLocalSystem::constant(ofs, fs, FgAbelianGroup::free(1)), 0) ==
        FgAbelianGroup::free(1));
}

TEST_CASE("property: constant coefficients on random doubled spaces") {
  std::mt19937_64 rng(testing::seed());
  for (int k = 0; k < testing::kCases; ++k) {
    SimplicialSet y = testing::random_complex(rng, 4);
    SimplicialSet z = testing::random_complex(rng, 3);
    GSimplicialSet x = testing::doubled(y, z);
    OrbitCategory oc(x.group());
    EquivariantLocalSystem l = EquivariantLocalSystem::constant(oc, x, FgAbelianGroup::free(1));
    INFO("case " << k << " seed " << testing::seed());
    for (int n = 0; n <= x.set().dimension(); ++n) CHECK(bredon_h(x, l, n) == oracle_group(x, n));
  }
}

TEST_CASE("property: trivial G recovers local coefficients") {
  std::mt19937_64 rng(testing::seed());
  std::vector<PiModule> modules = testing::grid_modules();
  for (int k = 0; k < testing::kCases; ++k) {
    SimplicialSet y = testing::random_complex(rng, 5);
    const PiModule& m = modules[k % modules.size()];
    std::vector<int> labels = testing::random_labels(rng, y, m.pi());
    GSimplicialSet x = GSimplicialSet::trivial(y, FiniteGroup::trivial());
    OrbitCategory oc(x.group());
    EquivariantLocalSystem l = testing::shared_labels(oc, x, m, labels);
    LocalSystem plain = LocalSystem::from_labels(y, m, labels);
    INFO("case " << k << " seed " << testing::seed());
    for (int n = 0; n <= y.dimension(); ++n) CHECK(bredon_h(x, l, n) == local_h(y, plain, n));
  }
}

TEST_CASE("property: Bredon coboundary squares to zero") {
  CHECK(testing::suite_delta_squared(testing::seed(), testing::kCases) == "");
}

TEST_CASE("suspension isomorphism") {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  SimplicialSet circle = SimplicialSet::minimal_circle();

  SUBCASE("reflection circle over a point, constant Z") {
    GSimplicialSet x = testing::reflection_circle();
    GSimplicialSet k = GSimplicialSet::trivial(SimplicialSet::point(), z2);
    OrbitCategory oc(z2);
    auto l = EquivariantLocalSystem::constant(oc, k, FgAbelianGroup::free(1));
    for (int n = 1; n <= 2; ++n) CHECK(verify_suspension_iso(x, k, SimplicialMap::constant(x.set(), 0), l, n).pass);
  }
  SUBCASE("reflection circle over the circle, Z/4 twisted by -1") {
    GSimplicialSet x = testing::reflection_circle();
    GSimplicialSet k = GSimplicialSet::trivial(circle, z2);
    SimplicialMap p;
    p.images = {{SimplexRef::nondegenerate(0, 0), SimplexRef::nondegenerate(0, 0)},
                {SimplexRef::nondegenerate(1, 0), SimplexRef::nondegenerate(1, 0)}};
    validate_equivariant(x, k, p);
    OrbitCategory oc(z2);
    auto l = testing::shared_labels(oc, k, testing::z2_on_z4(), {1});
    SuspensionCheck c1 = verify_suspension_iso(x, k, p, l, 1);
    CHECK(c1.pass);
    CHECK(c1.suspension == FgAbelianGroup({2, 4}));
    CHECK(verify_suspension_iso(x, k, p, l, 2).pass);
  }
  SUBCASE("double cover of the circle, trivial G, twisted Z/4") {
    GSimplicialSet x = GSimplicialSet::trivial(SimplicialSet::polygon(2), FiniteGroup::trivial());
    GSimplicialSet k = GSimplicialSet::trivial(circle, FiniteGroup::trivial());
    SimplicialMap p;
    p.images = {{SimplexRef::nondegenerate(0, 0), SimplexRef::nondegenerate(0, 0)},
                {SimplexRef::nondegenerate(1, 0), SimplexRef::nondegenerate(1, 0)}};
    OrbitCategory oc(FiniteGroup::trivial());
    auto l = testing::shared_labels(oc, k, testing::z2_on_z4(), {1});
    for (int n = 1; n <= 2; ++n) CHECK(verify_suspension_iso(x, k, p, l, n).pass);
  }
  SUBCASE("free 0-sphere over a point, constant Z/3") {
    GSimplicialSet x = testing::free_zero_sphere();
    GSimplicialSet k = GSimplicialSet::trivial(SimplicialSet::point(), z2);
    OrbitCategory oc(z2);
    auto l = EquivariantLocalSystem::constant(oc, k, FgAbelianGroup::cyclic(3));
    for (int n = 1; n <= 2; ++n) CHECK(verify_suspension_iso(x, k, SimplicialMap::constant(x.set(), 0), l, n).pass);
  }
  SUBCASE("X = K") {
    GSimplicialSet k = GSimplicialSet::trivial(circle, FiniteGroup::trivial());
    OrbitCategory oc(FiniteGroup::trivial());
    auto l = testing::shared_labels(oc, k, testing::z2_on_z3(), {1});
    for (int n = 1; n <= 2; ++n) CHECK(verify_suspension_iso(k, k, SimplicialMap::identity(circle), l, n).pass);
  }
  SUBCASE("degree zero is rejected") {
    GSimplicialSet k = GSimplicialSet::trivial(SimplicialSet::point(), z2);
    OrbitCategory oc(z2);
    auto l = EquivariantLocalSystem::constant(oc, k, FgAbelianGroup::free(1));
    CHECK_THROWS(verify_suspension_iso(k, k, SimplicialMap::identity(k.set()), l, 0));
  }
}

TEST_CASE("fibrewise suspension over a point is the unreduced suspension with poles glued") {
  GSimplicialSet x = GSimplicialSet::trivial(SimplicialSet::point(), FiniteGroup::trivial());
  FibrewiseSuspension s = fibrewise_suspension(x, x, SimplicialMap::identity(x.set()));
  s.set.set().validate();
  CHECK(s.set.set().count(0) == 1);
  CHECK(s.set.set().count(1) == 1);
  OrbitCategory oc(FiniteGroup::trivial());
  auto l = EquivariantLocalSystem::constant(oc, s.set, FgAbelianGroup::free(1));
  CHECK(bredon_h(s.set, l, 1) == FgAbelianGroup::free(1));
}

TEST_CASE("Mayer-Vietoris on the classical circle cover") {
  GSimplicialSet x = square();
  OrbitCategory oc(x.group());
  auto l = EquivariantLocalSystem::constant(oc, x, FgAbelianGroup::free(1));
  MayerVietorisCheck mv = mayer_vietoris_check(x, l, kArcA, kArcB, 0, 2);
  CHECK(mv.pass);
  CHECK(mv.nodes.size() == 9);
  for (const auto& node : mv.nodes) CHECK(node.pass);
  // twisted coefficients on the same cover
  auto lt = testing::shared_labels(oc, x, testing::z2_on_z4(), {1, 0, 0, 0});
  CHECK(mayer_vietoris_check(x, lt, kArcA, kArcB, 0, 1).pass);
}

TEST_CASE("Mayer-Vietoris on the reflection square") {
  GSimplicialSet x = testing::reflection_square();
  OrbitCategory oc(x.group());
  auto l = EquivariantLocalSystem::constant(oc, x, FgAbelianGroup::free(1));
  MayerVietorisCheck mv = mayer_vietoris_check(x, l, kHalfA, kHalfB, 0, 1);
  CHECK(mv.pass);
  CHECK(mv.nodes.size() == 6);
}

TEST_CASE("a cover that misses a simplex is rejected") {
  GSimplicialSet x = square();
  OrbitCategory oc(x.group());
  auto l = EquivariantLocalSystem::constant(oc, x, FgAbelianGroup::free(1));
  std::vector<std::vector<bool>> b{{true, false, true, true}, {false, false, true, false}};
  CHECK_THROWS(mayer_vietoris_check(x, l, kArcA, b, 0, 1));
}

TEST_CASE("bar construction components") {
  SUBCASE("trivial group") {
    OrbitCategory oc(FiniteGroup::trivial());
    OGDiagram u = OGDiagram::constant(oc, SimplicialSet::points(3));
    BarDiagonal b = elmendorf_bar(oc, u, 0, 1);
    b.validate();
    CHECK(b.components == 3);
    CHECK(b.pi0_bijective);
  }
  SUBCASE("reflection circle") {
    GSimplicialSet x = testing::reflection_circle();
    OrbitCategory oc(x.group());
    OGDiagram u = OGDiagram::fixed_point_diagram(oc, x);
    u.validate(oc);
    BarDiagonal be = elmendorf_bar(oc, u, oc.trivial_subgroup(), 1);
    be.validate();
    CHECK(be.components == 1);
    CHECK(be.pi0_bijective);
    BarDiagonal bg = elmendorf_bar(oc, u, oc.whole_group(), 2);
    bg.validate();
    CHECK(bg.components == 2);
    CHECK(bg.pi0_bijective);
  }
  SUBCASE("free 0-sphere") {
    GSimplicialSet x = testing::free_zero_sphere();
    OrbitCategory oc(x.group());
    OGDiagram u = OGDiagram::fixed_point_diagram(oc, x);
    BarDiagonal be = elmendorf_bar(oc, u, oc.trivial_subgroup(), 1);
    CHECK(be.components == 2);
    CHECK(be.pi0_bijective);
    BarDiagonal bg = elmendorf_bar(oc, u, oc.whole_group(), 1);
    CHECK(bg.components == 0);
    CHECK(bg.pi0_bijective);
  }
  SUBCASE("constant point diagram") {
    OrbitCategory oc(FiniteGroup::cyclic(2));
    OGDiagram u = OGDiagram::constant(oc, SimplicialSet::point());
    for (int h = 0; h < oc.num_objects(); ++h) {
      BarDiagonal b = elmendorf_bar(oc, u, h, 2);
      b.validate();
      CHECK(b.components == 1);
      CHECK(b.pi0_bijective);
    }
  }
  SUBCASE("only degrees 1 and 2") {
    OrbitCategory oc(FiniteGroup::trivial());
    OGDiagram u = OGDiagram::constant(oc, SimplicialSet::point());
    CHECK_THROWS(elmendorf_bar(oc, u, 0, 3));
  }
}
