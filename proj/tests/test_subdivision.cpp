#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "plfg/catengine.hpp"
#include "plfg/corpus.hpp"
#include "plfg/subdivision.hpp"

using namespace plfg;

namespace {

Subgroup find_normal_klein(const FusionSystem& F) {
  const FiniteGroup& G = F.group();
  for (const auto& P : F.subgroups_of_s())
    if (P.order() == 4 && normalizer(G, P).order() == G.order() &&
        is_elementary_abelian(P, 2))
      return P;
  REQUIRE(false);
  return {};
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

}  // namespace

TEST_CASE("chain enumeration") {
  auto G = corpus::s4();
  FusionSystem F(G, 2);
  {
    // single-member collection: one vertex chain
    Collection C = build_collection(F, CollectionKind::Custom,
                                    {F.sylow_subgroup()});
    auto chains = enumerate_chains(C);
    REQUIRE(chains.size() == 1);
    CHECK(chains[0].length() == 0);
  }
  {
    Collection C = build_collection(F, CollectionKind::Centric);
    auto chains = enumerate_chains(C);
    // independent nested-loop oracle
    size_t oracle = C.members.size();
    for (size_t i = 0; i < C.members.size(); ++i)
      for (size_t j = 0; j < C.members.size(); ++j) {
        if (!C.members[i].proper_subgroup_of(C.members[j])) continue;
        ++oracle;
        for (size_t l = 0; l < C.members.size(); ++l)
          if (C.members[j].proper_subgroup_of(C.members[l])) ++oracle;
      }
    CHECK(chains.size() == oracle);
    CHECK(chains.size() == 7);  // 4 vertices, 3 edges, no 2-chains
    for (const auto& c : chains) CHECK(c.length() <= 2);
    // bound: chain length < log_2 |S| + 1
    for (const auto& c : chains) CHECK((1 << c.length()) < 8 * 2);
  }
  {
    auto chains = enumerate_chains(Collection{});
    CHECK(chains.empty());
  }
}

TEST_CASE("conjugacy classes of chains and the class poset") {
  {
    auto G = corpus::s3();
    FusionSystem F(G, 2);
    auto bar = conj_classes_of_chains(
        F, enumerate_chains(build_collection(F, CollectionKind::Centric)));
    CHECK(bar.classes.size() == 1);
    CHECK(bar.poset->num_morphisms() == 1);
  }
  {
    auto G = corpus::s4();
    FusionSystem F(G, 2);
    auto chains =
        enumerate_chains(build_collection(F, CollectionKind::Centric));
    auto bar = conj_classes_of_chains(F, chains);
    CHECK(bar.classes.size() == 7);
    int vertex_classes = 0;
    for (const auto& cls : bar.classes)
      if (cls.representative.length() == 0) ++vertex_classes;
    CHECK(vertex_classes == 4);
    // oracle: pairwise conjugacy partition
    std::set<int> seen;
    for (const auto& a : chains) {
      int cnt = 0;
      for (const auto& b : chains)
        if (chains_conjugate(F, a, b)) ++cnt;
      CHECK(cnt == 1);  // every class is a singleton here
      seen.insert(bar.class_of(a));
    }
    CHECK(seen.size() == 7);
    // poset property: at most one morphism per ordered pair
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        CHECK(bar.poset->hom(i, j).size() <= 1);
    // each edge class maps to exactly its two vertex classes
    int proper_arrows = bar.poset->num_morphisms() - 7;
    CHECK(proper_arrows == 6);
    // class representatives are reproducible from any member
    for (const auto& cls : bar.classes)
      for (const auto& m : cls.members) {
        SimplexChain best = m;
        for (const auto& m2 : cls.members)
          if (m2 < best) best = m2;
        CHECK(best == cls.representative);
      }
  }
}

TEST_CASE("chain automorphism groups") {
  {
    auto G = corpus::s3();
    FusionSystem F(G, 2);
    LinkingSystem L(F, build_collection(F, CollectionKind::Centric));
    SimplexChain c{{F.sylow_subgroup()}};
    auto A = aut_l_chain(L, c);
    CHECK(A.group.group.order() == 2);
    CHECK(A.tuples.size() == 2);
  }
  auto G = corpus::s4();
  FusionSystem F(G, 2);
  LinkingSystem L(F, build_collection(F, CollectionKind::Centric));
  auto V = find_normal_klein(F);
  const auto& S = F.sylow_subgroup();
  {
    // k = 0: all of Aut_L
    auto A = aut_l_chain(L, SimplexChain{{V}});
    CHECK(A.group.group.order() == 24);
    CHECK(A.baut->num_morphisms() == 24);
  }
  {
    auto A = aut_l_chain(L, SimplexChain{{V, S}});
    CHECK(A.group.group.order() == 8);  // |N_G(V) ∩ N_G(S)| / |C'_G(V)|
    // every tuple's first component restricts the second (ladder commutes)
    for (const auto& t : A.tuples) {
      CHECK(restrict_lift(L, t[1], V, V) == t[0]);
    }
  }
}

TEST_CASE("restriction maps between chain automorphism groups") {
  auto G = corpus::s4();
  FusionSystem F(G, 2);
  LinkingSystem L(F, build_collection(F, CollectionKind::Centric));
  auto V = find_normal_klein(F);
  const auto& S = F.sylow_subgroup();
  SimplexChain VS{{V, S}};
  {
    // identity restriction
    auto r = restriction_map(L, VS, VS);
    for (size_t i = 0; i < r.size(); ++i) CHECK(r[i] == static_cast<int>(i));
  }
  {
    // into Aut_L(V) of order 24: image has order 8
    auto r = restriction_map(L, VS, SimplexChain{{V}});
    std::set<int> image(r.begin(), r.end());
    CHECK(r.size() == 8);
    CHECK(image.size() == 8);
    auto AV = aut_l_chain(L, SimplexChain{{V}});
    CHECK(AV.group.group.order() == 24);
  }
  {
    // into Aut_L(S): bijective here
    auto r = restriction_map(L, VS, SimplexChain{{S}});
    std::set<int> image(r.begin(), r.end());
    CHECK(image.size() == 8);
    auto AS = aut_l_chain(L, SimplexChain{{S}});
    CHECK(AS.group.group.order() == 8);
  }
  CHECK_THROWS_AS(restriction_map(L, SimplexChain{{V}}, SimplexChain{{S}}),
                  NotASubsimplex);
}

TEST_CASE("subdivision category of small heighted categories") {
  {
    // one object: s(A) = A
    HeightedEICategory A{b_group(corpus::c2()), {0}};
    auto sA = subdivision_category(A);
    CHECK(sA.cat->num_objects() == 1);
    CHECK(sA.cat->num_morphisms() == 2);
  }
  {
    // arrow poset: three chains
    HeightedEICategory A{arrow_cat(), {0, 1}};
    auto sA = subdivision_category(A);
    CHECK(sA.cat->num_objects() == 3);
    CHECK(check_free_transitive(*sA.cat));
    auto proj = projection_pi(sA);
    // trivial isomorphisms: the projection is bijective on objects
    CHECK(proj.poset->num_objects() == 3);
    auto p = first_vertex_functor(sA, A);
    CHECK(p.on_obj(sA.obj_index({0}, {})) == 0);
    CHECK(p.on_obj(sA.obj_index({0, 1}, {2})) == 0);
  }
  {
    auto G = corpus::s3();
    FusionSystem F(G, 2);
    LinkingSystem L(F, build_collection(F, CollectionKind::Centric));
    auto A = heighted_linking(L);
    auto sA = subdivision_category(A);
    CHECK(sA.cat->num_objects() == 1);  // s(L^C) = BC_2
    CHECK(sA.cat->num_morphisms() == 2);
  }
}

TEST_CASE("skeletal subdivision and skeletality") {
  auto G = corpus::d8();
  FusionSystem F(G, 2);
  LinkingSystem L(F, build_collection(F, CollectionKind::Centric));
  auto A = heighted_linking(L);
  auto sA = subdivision_category(A);
  auto sIA = skeletal_subdivision(A, iota_subcategory(L));
  // 4 centrics (two Kleins, C_4, S), all normal, three edges to S
  CHECK(sIA.cat->num_objects() == 7);
  CHECK(sA.cat->num_objects() == 28);  // 4 vertices + 24 morphism chains
  CHECK(verify_skeletality(sA, sIA));
  CHECK(check_free_transitive(*sA.cat));
  CHECK(check_free_transitive(*sIA.cat));
  // the two bar-poset models agree
  auto bar = conj_classes_of_chains(
      F, enumerate_chains(build_collection(F, CollectionKind::Centric)));
  auto proj = projection_pi(sIA);
  CHECK(bar_posets_isomorphic(bar, proj, sIA, L));
}

TEST_CASE("factorization hypothesis is enforced") {
  HeightedEICategory A{arrow_cat(), {0, 1}};
  // identities alone cannot factor the arrow
  std::vector<int> I{A.cat->identity_of(0), A.cat->identity_of(1)};
  CHECK_THROWS_AS(skeletal_subdivision(A, I), FactorizationHypothesisFails);
  // with the arrow included the hypothesis holds
  I.push_back(2);
  auto sIA = skeletal_subdivision(A, I);
  CHECK(sIA.cat->num_objects() == 3);
}

TEST_CASE("bar projection and first vertex on the S_4 system") {
  auto G = corpus::s4();
  FusionSystem F(G, 2);
  LinkingSystem L(F, build_collection(F, CollectionKind::Centric));
  auto A = heighted_linking(L);
  auto sIA = skeletal_subdivision(A, iota_subcategory(L));
  CHECK(sIA.cat->num_objects() == 7);
  CHECK(check_free_transitive(*sIA.cat));

  auto bar = conj_classes_of_chains(
      F, enumerate_chains(build_collection(F, CollectionKind::Centric)));
  auto proj = projection_pi(sIA);
  CHECK(proj.poset->num_objects() == 7);
  CHECK(bar_posets_isomorphic(bar, proj, sIA, L));

  // automorphism identification: Aut in the subdivision equals the chain
  // automorphism group
  for (const auto& cls : bar.classes) {
    const auto& rep = cls.representative;
    std::vector<int> vs, as;
    for (const auto& P : rep.entries) vs.push_back(L.obj_index(P));
    for (size_t t = 0; t + 1 < rep.entries.size(); ++t)
      as.push_back(L.mor_index(L.iota(rep.entries[t], rep.entries[t + 1])));
    int o = sIA.obj_index(vs, as);
    auto CA = aut_l_chain(L, rep);
    CHECK(sIA.cat->hom(o, o).size() == CA.tuples.size());
  }

  // first vertex functor is right cofinal (necessary condition at d = 3)
  auto p = first_vertex_functor(sIA, A);
  auto rep = check_right_cofinal(p, 3, 2, 50'000'000);
  CHECK(rep.all_ok);
}

TEST_CASE("transported automorphism maps") {
  auto G = corpus::s4();
  FusionSystem F(G, 2);
  LinkingSystem L(F, build_collection(F, CollectionKind::Centric));
  auto A = heighted_linking(L);
  auto sIA = skeletal_subdivision(A, iota_subcategory(L));
  const FinCategory& c = *sIA.cat;
  for (int psi = 0; psi < c.num_morphisms(); ++psi) {
    auto map = phi_star(sIA, psi);
    // identity goes to identity; homomorphism property
    std::map<int, int> f(map.begin(), map.end());
    CHECK(f.at(c.identity_of(c.src(psi))) == c.identity_of(c.dst(psi)));
    for (auto [a1, b1] : map)
      for (auto [a2, b2] : map)
        if (c.has_compose(a1, a2))
          CHECK(f.at(c.compose(a1, a2)) == c.compose(b1, b2));
    // identity morphism induces the identity map
    if (c.is_identity(psi))
      for (auto [a, b] : map) CHECK(a == b);
  }
}
