#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "plfg/corpus.hpp"
#include "plfg/fincategory.hpp"
#include "plfg/nerve.hpp"

using namespace plfg;

namespace {

// one object, identity only
CatPtr point_cat() {
  auto c = std::make_shared<FinCategory>();
  int o = c->add_object("*");
  c->add_identity(o);
  c->finalize();
  return c;
}

// one-object groupoid on a finite group
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

// poset 0 < 1
CatPtr arrow_cat() {
  auto c = std::make_shared<FinCategory>();
  int a = c->add_object("0"), b = c->add_object("1");
  c->add_identity(a);
  c->add_identity(b);
  c->add_morphism(a, b, "le");
  c->finalize();
  return c;
}

}  // namespace

TEST_CASE("category construction and composition") {
  auto BC2 = b_group(corpus::c2());
  CHECK(BC2->num_objects() == 1);
  CHECK(BC2->num_morphisms() == 2);
  CHECK(BC2->compose(1, 1) == BC2->identity_of(0));
  CHECK(BC2->is_iso(1));
  CHECK(BC2->inverse_of(1) == 1);
}

TEST_CASE("finalize rejects broken data") {
  {
    FinCategory c;
    c.add_object();
    CHECK_THROWS_AS(c.finalize(), CategoryError);  // no identity
  }
  {
    FinCategory c;
    int o = c.add_object();
    c.add_identity(o);
    c.add_morphism(o, o);
    CHECK_THROWS_AS(c.finalize(), CategoryError);  // missing composite 1∘1
  }
  {
    // non-associative 'composition' on a three-arrow chain with fake shortcuts
    FinCategory c;
    int o = c.add_object();
    int e = c.add_identity(o);
    int f = c.add_morphism(o, o);
    int g = c.add_morphism(o, o);
    // f∘f = g, f∘g = e, g∘f = f (inconsistent), rest to e
    c.set_compose(f, f, g);
    c.set_compose(f, g, e);
    c.set_compose(g, f, f);
    c.set_compose(g, g, e);
    CHECK_THROWS_AS(c.finalize(), CategoryError);
  }
}

TEST_CASE("functor validation") {
  auto BC2 = b_group(corpus::c2());
  auto pt = point_cat();
  // collapse to a point is a functor
  FinFunctor collapse(BC2, pt, {0}, {0, 0});
  CHECK(collapse.on_mor(1) == 0);
  // swapping identity and involution is not
  CHECK_THROWS_AS(FinFunctor(BC2, BC2, {0}, {1, 0}), CategoryError);
  // endpoint mismatch
  auto arr = arrow_cat();
  CHECK_THROWS_AS(FinFunctor(arr, arr, {1, 0}, {0, 1, 2}), CategoryError);
  // identity functor composes to itself
  auto id = FinFunctor::identity(BC2);
  CHECK(functors_equal(compose(id, id), id));
}

TEST_CASE("opposite category") {
  auto arr = arrow_cat();
  auto op = opposite(arr);
  CHECK(op->src(2) == 1);
  CHECK(op->dst(2) == 0);
  CHECK(op->hom(1, 0).size() == 1);
  CHECK(op->hom(0, 1).empty());
  // opposite of a groupoid: composition reversed
  auto BS3 = b_group(corpus::s3());
  auto opS3 = opposite(BS3);
  auto S3 = corpus::s3();
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      CHECK(opS3->compose(a, b) == S3.mul(b, a));
}

TEST_CASE("diagram validation") {
  auto arr = arrow_cat();
  auto D = constant_point_diagram(arr);
  D.validate();
  // break functoriality: nontrivial diagram BC2 -> BC2 over the arrow poset
  auto BC2 = b_group(corpus::c2());
  CatDiagram E;
  E.base = arr;
  E.value = {BC2, BC2};
  E.action.resize(3);
  E.action[0] = FinFunctor::identity(BC2);
  E.action[1] = FinFunctor::identity(BC2);
  E.action[2] = FinFunctor(BC2, BC2, {0}, {0, 1});
  E.validate();
}

TEST_CASE("natural transformations") {
  auto BC2 = b_group(corpus::c2());
  auto id = FinFunctor::identity(BC2);
  // id => id with component the involution is natural (C_2 abelian)
  CHECK(natural_transformation_valid(id, id, NatTrans{{1}}));
  CHECK(natural_transformation_valid(id, id, NatTrans{{0}}));
  // on BS3, conjugation by a transposition is not central
  auto BS3 = b_group(corpus::s3());
  auto idS3 = FinFunctor::identity(BS3);
  CHECK(!natural_transformation_valid(idS3, idS3, NatTrans{{1}}));
}

TEST_CASE("nerve of a point") {
  auto X = nerve_truncated(*point_cat(), 3);
  CHECK(X.count(0) == 1);
  CHECK(X.count(1) == 0);
  CHECK(X.count(2) == 0);
  CHECK(X.count(3) == 0);
}

TEST_CASE("nerve of BC2 has one cell per dimension") {
  auto BC2 = b_group(corpus::c2());
  auto X = nerve_truncated(*BC2, 3);
  for (int n = 0; n <= 3; ++n) CHECK(X.count(n) == 1);
  // inner face of (g,g) is degenerate, outer faces are the 1-cell
  CHECK(X.face(2, 0, 0) == 0);
  CHECK(X.face(2, 0, 1) == -1);
  CHECK(X.face(2, 0, 2) == 0);
  check_simplicial_identities(X, *BC2);
}

TEST_CASE("nerve of the arrow poset") {
  auto arr = arrow_cat();
  auto X = nerve_truncated(*arr, 2);
  CHECK(X.count(0) == 2);
  CHECK(X.count(1) == 1);
  CHECK(X.count(2) == 0);
}

TEST_CASE("nerve cell counts match chain-counting oracle") {
  // nondegenerate n-cells = chains of n non-identity composable morphisms
  auto BS3 = b_group(corpus::s3());
  auto X = nerve_truncated(*BS3, 3);
  CHECK(X.count(0) == 1);
  CHECK(X.count(1) == 5);
  CHECK(X.count(2) == 25);
  CHECK(X.count(3) == 125);
  check_simplicial_identities(X, *BS3);
}

TEST_CASE("nerve budget enforced") {
  auto BS3 = b_group(corpus::s3());
  CHECK_THROWS_AS(nerve_truncated(*BS3, 3, 100), SimplexBudgetExceeded);
}

TEST_CASE("simplicial map of a functor") {
  auto BC2 = b_group(corpus::c2());
  auto pt = point_cat();
  auto X = nerve_truncated(*BC2, 3);
  auto Y = nerve_truncated(*pt, 3);
  FinFunctor collapse(BC2, pt, {0}, {0, 0});
  auto img = simplicial_map_of_functor(collapse, X, Y);
  CHECK(img[0][0] == 0);
  for (int n = 1; n <= 3; ++n) CHECK(img[n][0] == -1);  // all collapse
  // identity functor maps cells to themselves
  auto idimg = simplicial_map_of_functor(FinFunctor::identity(BC2), X, X);
  for (int n = 0; n <= 3; ++n)
    for (long i = 0; i < X.count(n); ++i) CHECK(idimg[n][i] == i);
}
