#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "plfg/catengine.hpp"
#include "plfg/corpus.hpp"
#include "plfg/homology.hpp"
#include "plfg/nerve.hpp"

using namespace plfg;

namespace {

CatPtr point_cat() {
  auto c = std::make_shared<FinCategory>();
  int o = c->add_object("*");
  c->add_identity(o);
  c->finalize();
  return c;
}

CatPtr b_group(const FiniteGroup& G) {
  auto c = std::make_shared<FinCategory>();
  int o = c->add_object("*");
  std::vector<int> m(G.order());
  for (int g = 0; g < G.order(); ++g) m[g] = c->add_morphism(o, o);
  c->set_identity(o, m[0]);
  for (int a = 0; a < G.order(); ++a)
    for (int b = 0; b < G.order(); ++b)
      c->set_compose(m[a], m[b], m[G.mul(a, b)]);
  c->finalize();
  return c;
}

CatPtr arrow_cat() {
  auto c = std::make_shared<FinCategory>();
  int a = c->add_object("0"), b = c->add_object("1");
  c->add_identity(a);
  c->add_identity(b);
  c->add_morphism(a, b, "le");
  c->finalize();
  return c;
}

CatPtr discrete_cat(int n) {
  auto c = std::make_shared<FinCategory>();
  for (int i = 0; i < n; ++i) c->add_identity(c->add_object());
  c->finalize();
  return c;
}

// functor between discrete categories from an object map
FinFunctor discrete_functor(CatPtr src, CatPtr dst, std::vector<int> omap) {
  std::vector<int> mmap(src->num_morphisms());
  for (int m = 0; m < src->num_morphisms(); ++m)
    mmap[m] = dst->identity_of(omap[src->src(m)]);
  return FinFunctor(src, dst, std::move(omap), std::move(mmap));
}

// the action of C_2 on a two-point set by the swap, as a diagram over BC_2
CatDiagram swap_diagram() {
  CatDiagram U;
  U.base = b_group(corpus::c2());
  auto X = discrete_cat(2);
  U.value = {X};
  U.action = {FinFunctor::identity(X), discrete_functor(X, X, {1, 0})};
  return U;
}

CatDiagram constant_diagram(CatPtr base, CatPtr fiber) {
  CatDiagram U;
  U.base = base;
  U.value.assign(base->num_objects(), fiber);
  U.action.assign(base->num_morphisms(), FinFunctor::identity(fiber));
  return U;
}

FinFunctor constant_functor(CatPtr src, CatPtr dst, int obj) {
  std::vector<int> omap(src->num_objects(), obj);
  std::vector<int> mmap(src->num_morphisms(), dst->identity_of(obj));
  return FinFunctor(src, dst, std::move(omap), std::move(mmap));
}

// inclusion of the point at a chosen object
FinFunctor point_at(CatPtr pt, CatPtr dst, int obj) {
  return FinFunctor(pt, dst, {obj}, {dst->identity_of(obj)});
}

}  // namespace

TEST_CASE("translation category of the constant point diagram is the base") {
  for (CatPtr base : {b_group(corpus::s3()), arrow_cat(), point_cat()}) {
    auto U = constant_point_diagram(base);
    auto T = grothendieck(U);
    CHECK(T.cat->num_objects() == base->num_objects());
    CHECK(T.cat->num_morphisms() == base->num_morphisms());
    // the projection is bijective and composition agrees through it
    for (int m0 = 0; m0 < T.cat->num_morphisms(); ++m0)
      for (int m1 = 0; m1 < T.cat->num_morphisms(); ++m1) {
        if (T.cat->dst(m0) != T.cat->src(m1)) continue;
        CHECK(T.projection.on_mor(T.cat->compose(m1, m0)) ==
              base->compose(T.projection.on_mor(m1), T.projection.on_mor(m0)));
      }
  }
}

TEST_CASE("translation groupoid of a group action") {
  // free transitive action: contractible quotient
  auto U = swap_diagram();
  auto T = grothendieck(U);
  CHECK(T.cat->num_objects() == 2);
  CHECK(T.cat->num_morphisms() == 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) CHECK(T.cat->hom(a, b).size() == 1);
  auto bv = betti(chains_of(nerve_truncated(*T.cat, 4), 2));
  CHECK(bv == std::vector<long>{1, 0, 0, 0});

  // trivial action on a point: the translation category is the base group
  auto BC2 = b_group(corpus::c2());
  auto U2 = constant_diagram(BC2, point_cat());
  auto T2 = grothendieck(U2);
  auto bv2 = betti(chains_of(nerve_truncated(*T2.cat, 4), 2));
  CHECK(bv2 == std::vector<long>{1, 1, 1, 1});
}

TEST_CASE("cone inclusion composes to the constant functor") {
  auto U = swap_diagram();
  auto T = grothendieck(U);
  for (int K = 0; K < U.base->num_objects(); ++K) {
    auto inc = cone_inclusion(T, U, K);
    CHECK(functors_equal(compose(T.projection, inc),
                         constant_functor(U.value[K], U.base, K)));
  }
}

TEST_CASE("natural transformations induce functors between translations") {
  auto U = swap_diagram();
  auto U2 = constant_diagram(U.base, point_cat());
  auto T = grothendieck(U);
  auto T2 = grothendieck(U2);
  // collapse of the two-point set to the point is equivariant
  auto collapse = constant_functor(U.value[0], U2.value[0], 0);
  auto ind = grothendieck_nat(T, U, T2, U2, {collapse});
  CHECK(ind.source == T.cat);
  CHECK(ind.target == T2.cat);

  // a non-equivariant map (identity vs swap) is rejected
  CatDiagram U3;
  U3.base = U.base;
  U3.value = {U.value[0]};
  U3.action = {FinFunctor::identity(U.value[0]),
               FinFunctor::identity(U.value[0])};
  auto T3 = grothendieck(U3);
  auto not_equivariant = FinFunctor::identity(U.value[0]);
  CHECK_THROWS_AS(grothendieck_nat(T, U, T3, U3, {not_equivariant}),
                  CategoryError);
}

TEST_CASE("comma categories over the arrow poset") {
  auto A = arrow_cat();
  auto Id = FinFunctor::identity(A);
  {
    auto C = comma_category(Id, 0, CommaSide::Under);
    CHECK(C.cat->num_objects() == 2);  // (0,id) and (1, 0->1)
    int init = find_initial_object(*C.cat);
    REQUIRE(init >= 0);
    CHECK(C.obj_pair[init].first == 0);
  }
  {
    auto C = comma_category(Id, 1, CommaSide::Under);
    CHECK(C.cat->num_objects() == 1);
  }
  {
    auto C = comma_category(Id, 1, CommaSide::Over);
    CHECK(C.cat->num_objects() == 2);  // (0, 0->1) and (1, id)
    int init = find_initial_object(*C.cat);
    REQUIRE(init >= 0);
    CHECK(C.obj_pair[init].first == 0);
  }
  {
    // no morphisms into the initial object from below: empty comma
    auto pt = point_cat();
    auto J = point_at(pt, A, 0);
    auto C = comma_category(J, 1, CommaSide::Under);
    CHECK(C.cat->num_objects() == 0);
  }
}

TEST_CASE("comma category of a point in a group is the group's underlying set") {
  auto BS3 = b_group(corpus::s3());
  auto pt = point_cat();
  auto J = point_at(pt, BS3, 0);
  auto C = comma_category(J, 0, CommaSide::Under);
  CHECK(C.cat->num_objects() == 6);
  CHECK(C.cat->num_morphisms() == 6);  // identities only
}

TEST_CASE("Kan extension along the identity keeps fiber homotopy") {
  auto A = arrow_cat();
  auto U = constant_diagram(A, b_group(corpus::c2()));
  auto E = kan_extension_cat(FinFunctor::identity(A), U);
  // value at 0: comma is the single object (0,id); value at 1: contractible
  // two-object comma; both carry the homotopy type of BC_2
  CHECK(E.comma[0].cat->num_objects() == 1);
  CHECK(E.comma[1].cat->num_objects() == 2);
  for (int l = 0; l < 2; ++l) {
    auto bv = betti(chains_of(nerve_truncated(*E.tr[l].cat, 4), 2));
    CHECK(bv == std::vector<long>{1, 1, 1, 1});
  }
}

TEST_CASE("pushforward/pulldown functors along a point inclusion") {
  auto A = arrow_cat();
  auto pt = point_cat();
  auto F = point_at(pt, A, 0);

  // F_!: diagram over the arrow, restricted to the point
  auto U = constant_diagram(A, b_group(corpus::c2()));
  auto trL = grothendieck(U);
  auto trK = grothendieck(restrict_diagram(F, U));
  auto shriek = f_shriek(F, U, trK, trL);
  CHECK(shriek.source == trK.cat);
  CHECK(shriek.target == trL.cat);

  // F_#: Kan extension of a diagram over the point, pushed back down
  auto UK = constant_diagram(pt, b_group(corpus::c2()));
  auto E = kan_extension_cat(F, UK);
  auto trE = grothendieck(E.diagram);
  auto trUK = grothendieck(UK);
  auto sharp = f_sharp(F, UK, E, trE, trUK);

  // F_# is a homology equivalence here: both sides are BC_2
  auto X = nerve_truncated(*trE.cat, 4);
  auto Y = nerve_truncated(*trUK.cat, 4);
  auto img = simplicial_map_of_functor(sharp, X, Y);
  auto rep = induced_map(chains_of(X, 2), chains_of(Y, 2), img, 2);
  CHECK(rep.all_iso());
  auto bv = betti(chains_of(X, 2));
  CHECK(bv == std::vector<long>{1, 1, 1, 1});
}

TEST_CASE("right cofinality detection") {
  auto A = arrow_cat();
  auto pt = point_cat();
  // the terminal object is right cofinal
  auto rep = check_right_cofinal(point_at(pt, A, 1), 2, 2);
  CHECK(rep.all_ok);
  CHECK(rep.necessary_condition_only);
  // the initial object is not: (1 ↓ F) is empty
  auto rep2 = check_right_cofinal(point_at(pt, A, 0), 2, 2);
  CHECK(!rep2.all_ok);
  CHECK(rep2.object_ok[0]);
  CHECK(!rep2.object_ok[1]);
  // two disconnected candidates: comma not connected
  auto two = discrete_cat(2);
  auto G = discrete_functor(two, discrete_cat(1), {0, 0});
  auto rep3 = check_right_cofinal(G, 2, 2);
  CHECK(!rep3.all_ok);
}

TEST_CASE("homotopy colimit homology: two computations agree") {
  // constant point over BC_2: classifying space of C_2
  {
    auto U = constant_diagram(b_group(corpus::c2()), point_cat());
    auto tw = hocolim_homology_two_ways(U, 4, 2);
    CHECK(tw.agree());
    CHECK(tw.via_grothendieck == std::vector<long>{1, 1, 1, 1});
  }
  // free swap action: contractible quotient
  {
    auto tw = hocolim_homology_two_ways(swap_diagram(), 3, 2);
    CHECK(tw.agree());
    CHECK(tw.via_grothendieck == std::vector<long>{1, 0, 0});
  }
  // pushout-shaped poset gluing two points along two points: a circle
  {
    auto c = std::make_shared<FinCategory>();
    int mid = c->add_object(), l = c->add_object(), r = c->add_object();
    c->add_identity(mid);
    c->add_identity(l);
    c->add_identity(r);
    c->add_morphism(mid, l);
    c->add_morphism(mid, r);
    c->finalize();
    CatDiagram U;
    U.base = c;
    auto two = discrete_cat(2), one = discrete_cat(1);
    U.value = {two, one, one};
    U.action = {FinFunctor::identity(two), FinFunctor::identity(one),
                FinFunctor::identity(one), discrete_functor(two, one, {0, 0}),
                discrete_functor(two, one, {0, 0})};
    auto tw = hocolim_homology_two_ways(U, 3, 2);
    CHECK(tw.agree());
    CHECK(tw.via_grothendieck == std::vector<long>{1, 1, 0});
  }
}

TEST_CASE("two-way homology agreement on random set diagrams") {
  std::mt19937 rng(20260823);
  for (int trial = 0; trial < 6; ++trial) {
    // random height-1 poset: 2 sources, 2 sinks, random covering relations
    auto c = std::make_shared<FinCategory>();
    for (int i = 0; i < 4; ++i) c->add_identity(c->add_object());
    std::vector<std::pair<int, int>> arrows;
    for (int s = 0; s < 2; ++s)
      for (int t = 2; t < 4; ++t)
        if (rng() % 2) {
          c->add_morphism(s, t);
          arrows.emplace_back(s, t);
        }
    c->finalize();
    CatDiagram U;
    U.base = c;
    std::vector<int> sizes(4);
    for (int i = 0; i < 4; ++i) {
      sizes[i] = 1 + static_cast<int>(rng() % 3);
      U.value.push_back(discrete_cat(sizes[i]));
    }
    for (int i = 0; i < 4; ++i)
      U.action.push_back(FinFunctor::identity(U.value[i]));
    for (auto [s, t] : arrows) {
      std::vector<int> omap(sizes[s]);
      for (int& v : omap) v = static_cast<int>(rng() % sizes[t]);
      U.action.push_back(discrete_functor(U.value[s], U.value[t], omap));
    }
    auto tw = hocolim_homology_two_ways(U, 3, 2);
    CHECK(tw.agree());
    auto tw3 = hocolim_homology_two_ways(U, 3, 3);
    CHECK(tw3.agree());
  }
}

TEST_CASE("adjoint cofinality certificate") {
  auto A = arrow_cat();
  auto pt = point_cat();
  int f = 2;  // the non-identity morphism 0 -> 1
  REQUIRE(A->src(f) == 0);
  REQUIRE(A->dst(f) == 1);

  // J = terminal point, L = collapse, unit 0 -> 1, 1 -> 1
  auto J = point_at(pt, A, 1);
  auto L = constant_functor(A, pt, 0);
  NatTrans unit{{f, A->identity_of(1)}};
  CHECK(check_adjoint_cofinality(J, L, unit));

  // wrong unit component: not even a natural transformation
  NatTrans bad{{A->identity_of(0), A->identity_of(1)}};
  CHECK(!check_adjoint_cofinality(J, L, bad));

  // initial point has no adjoint witness: unit components cannot exist
  auto J0 = point_at(pt, A, 0);
  NatTrans bad2{{A->identity_of(0), A->identity_of(1)}};
  CHECK(!check_adjoint_cofinality(J0, L, bad2));
}
