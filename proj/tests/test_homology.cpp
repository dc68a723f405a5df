#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "plfg/corpus.hpp"
#include "plfg/homology.hpp"

using namespace plfg;

namespace {

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

CatPtr point_cat() {
  auto c = std::make_shared<FinCategory>();
  c->add_identity(c->add_object());
  c->finalize();
  return c;
}

// poset category from a strict order relation on n elements
CatPtr poset_cat(int n, const std::vector<std::pair<int, int>>& lt) {
  // transitive closure
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) le[i][i] = true;
  for (auto [a, b] : lt) le[a][b] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = true;
  auto c = std::make_shared<FinCategory>();
  std::vector<std::vector<int>> mor(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i) c->add_object(std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (le[i][j]) mor[i][j] = c->add_morphism(i, j);
  for (int i = 0; i < n; ++i) c->set_identity(i, mor[i][i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (le[i][j] && le[j][k]) c->set_compose(mor[j][k], mor[i][j], mor[i][k]);
  c->finalize();
  return c;
}

// independent dense-matrix betti oracle on the same complex
std::vector<long> betti_dense_oracle(const ChainComplexFp& cx) {
  int d = cx.top();
  std::vector<long> r(d + 2, 0);
  for (int n = 1; n <= d; ++n) r[n] = rank_fp_dense(cx.bnd[n]);
  std::vector<long> b(d);
  for (int n = 0; n < d; ++n) b[n] = cx.dims[n] - r[n] - r[n + 1];
  return b;
}

}  // namespace

TEST_CASE("point complex") {
  auto X = nerve_truncated(*point_cat(), 3);
  auto cx = chains_of(X, 2);
  CHECK(cx.dims == std::vector<long>{1, 0, 0, 0});
  CHECK(betti(cx) == std::vector<long>{1, 0, 0});
  CHECK(reduced_vanishing(X, 2, 2));
}

TEST_CASE("BC2 mod 2: all boundaries vanish, betti all 1") {
  auto BC2 = b_group(corpus::c2());
  auto X = nerve_truncated(*BC2, 4);
  auto cx = chains_of(X, 2);
  CHECK(cx.dims == std::vector<long>{1, 1, 1, 1, 1});
  for (int n = 1; n <= 4; ++n) CHECK(cx.bnd[n].col[0].empty());
  CHECK(betti(cx) == std::vector<long>{1, 1, 1, 1});
  CHECK(betti(cx) == betti_dense_oracle(cx));
  CHECK(!reduced_vanishing(X, 2, 2));
}

TEST_CASE("BC2 mod odd prime: trivial reduced homology") {
  auto BC2 = b_group(corpus::c2());
  auto X = nerve_truncated(*BC2, 4);
  auto cx = chains_of(X, 3);
  CHECK(betti(cx) == std::vector<long>{1, 0, 0, 0});
}

TEST_CASE("circle as a poset: two vertices, two parallel edges") {
  // synthetic complex: 2 vertices, 2 edges both from v0 to v1
  TruncatedSSet X(2, {1, 2, 2});
  int v0 = 0, v1 = 1;
  X.add_cell(0, &v0);
  X.add_cell(0, &v1);
  int e0[] = {0, 0}, e1[] = {1, 1};
  X.add_cell(1, e0);
  X.add_cell(1, e1);
  X.freeze();
  X.allocate_faces();
  for (long e = 0; e < 2; ++e) {
    X.set_face(1, e, 0, 1);  // d_0 = target
    X.set_face(1, e, 1, 0);  // d_1 = source
  }
  auto cx = chains_of(X, 2);
  CHECK(rank_fp(cx.bnd[1]) == 1);
  CHECK(rank_fp(cx.bnd[1]) == rank_fp_dense(cx.bnd[1]));
  CHECK(betti(cx) == std::vector<long>{1, 1});
}

TEST_CASE("three isolated points") {
  auto c = std::make_shared<FinCategory>();
  for (int i = 0; i < 3; ++i) c->add_identity(c->add_object());
  c->finalize();
  auto X = nerve_truncated(*c, 2);
  auto b = betti(chains_of(X, 2));
  CHECK(b[0] == 3);
  CHECK(b[1] == 0);
  CHECK(!reduced_vanishing(X, 2, 1));
}

TEST_CASE("poset with initial object is acyclic") {
  // 0 < 1, 0 < 2, 0 < 3, 1 < 3
  auto P = poset_cat(4, {{0, 1}, {0, 2}, {0, 3}, {1, 3}});
  auto X = nerve_truncated(*P, 3);
  check_simplicial_identities(X, *P);
  CHECK(reduced_vanishing(X, 2, 2));
  CHECK(reduced_vanishing(X, 3, 2));
}

TEST_CASE("boundary composition is asserted") {
  // corrupt a complex: circle with one face entry flipped
  TruncatedSSet X(2, {1, 2, 2});
  int v = 0;
  X.add_cell(0, &v);
  int e[] = {0, 0};
  X.add_cell(1, e);
  int t[] = {0, 0};
  X.add_cell(2, t);
  X.freeze();
  X.allocate_faces();
  X.set_face(1, 0, 0, 0);
  X.set_face(1, 0, 1, -1);  // lopsided edge: d(e) = v, not zero
  X.set_face(2, 0, 0, 0);
  X.set_face(2, 0, 1, -1);
  X.set_face(2, 0, 2, -1);  // d(t) = e, so dd(t) = v != 0 over F_3
  auto cx = chains_of(X, 3);
  CHECK_THROWS_AS(betti(cx), BoundaryCompositionNonzero);
}

TEST_CASE("empty complex rejected") {
  TruncatedSSet X(1, {1, 2});
  X.freeze();
  X.allocate_faces();
  CHECK_THROWS_AS(reduced_vanishing(X, 2, 0), EmptyComplex);
}

TEST_CASE("sparse and dense ranks agree on nerve boundaries") {
  auto BS3 = b_group(corpus::s3());
  auto X = nerve_truncated(*BS3, 3);
  auto cx2 = chains_of(X, 2);
  auto cx3 = chains_of(X, 3);
  for (auto* cx : {&cx2, &cx3})
    for (int n = 1; n <= cx->top(); ++n)
      if (cx->bnd[n].cols <= 2000)
        CHECK(rank_fp(cx->bnd[n]) == rank_fp_dense(cx->bnd[n]));
  // BS3 mod 3 carries the C_3 homology: H_* (S_3; F_3) = F_3 in * = 0, 3, ...
  CHECK(betti(cx3) == std::vector<long>{1, 0, 0});
  CHECK(betti(cx2) == std::vector<long>{1, 1, 1});
}

TEST_CASE("homology solver expresses cycles correctly") {
  auto BC2 = b_group(corpus::c2());
  auto X = nerve_truncated(*BC2, 3);
  auto cx = chains_of(X, 2);
  HomologySolver H(cx, 2);
  CHECK(H.dim_h(0) == 1);
  CHECK(H.dim_h(1) == 1);
  CHECK(H.dim_h(2) == 1);
  // the unique 1-cell is a cycle generating H_1
  auto coords = H.express(1, {{0, 1}});
  CHECK(coords == std::vector<int>{1});
  // a non-cycle is rejected in a complex with nonzero boundary
  auto arrowP = poset_cat(2, {{0, 1}});
  auto Y = nerve_truncated(*arrowP, 2);
  auto cy = chains_of(Y, 2);
  HomologySolver HY(cy, 1);
  CHECK(HY.dim_h(0) == 1);
  CHECK(HY.dim_h(1) == 0);
  // v0 + v1 is a boundary mod 2: coordinates all zero
  CHECK(HY.express(0, {{0, 1}, {1, 1}}) == std::vector<int>{0});
  // the edge itself has nonzero boundary: not a cycle
  CHECK_THROWS_AS(HY.express(1, {{0, 1}}), NotAChainMap);
}

TEST_CASE("induced maps on homology") {
  auto BC2 = b_group(corpus::c2());
  auto pt = point_cat();
  auto X = nerve_truncated(*BC2, 3);
  auto Y = nerve_truncated(*pt, 3);
  auto cx = chains_of(X, 2);
  auto cy = chains_of(Y, 2);
  // identity
  auto idimg = simplicial_map_of_functor(FinFunctor::identity(BC2), X, X);
  auto repid = induced_map(cx, cx, idimg, 2);
  CHECK(repid.all_iso());
  for (int n = 0; n <= 2; ++n) {
    CHECK(repid.matrices[n].size() == 1);
    CHECK(repid.matrices[n][0] == std::vector<int>{1});
  }
  // collapse to a point: iso in degree 0 only
  FinFunctor collapse(BC2, pt, {0}, {0, 0});
  auto img = simplicial_map_of_functor(collapse, X, Y);
  auto rep = induced_map(cx, cy, img, 2);
  CHECK(rep.iso[0]);
  CHECK(!rep.iso[1]);
  CHECK(!rep.iso[2]);
  CHECK(!rep.all_iso());
  // a fake cell image that is not a chain map is rejected
  auto bad = img;
  bad[1][0] = 0;  // the point nerve has no 1-cells at all
  CHECK_THROWS_AS(induced_map(cx, cy, bad, 2), NotAChainMap);
  // mod 3 the inner degeneracies do not cancel: collapsing only the 1-cell
  // of BC2 while keeping the 2-cell breaks boundary commutation
  auto cx3 = chains_of(X, 3);
  auto bad3 = idimg;
  bad3[1][0] = -1;
  CHECK_THROWS_AS(induced_map(cx3, cx3, bad3, 2), NotAChainMap);
}

TEST_CASE("induced map functoriality: composite = product") {
  // BC4 -> BC2 (quotient) -> point
  auto C4 = corpus::c4();
  auto BC4 = b_group(C4);
  auto BC2 = b_group(corpus::c2());
  auto pt = point_cat();
  // quotient map C4 -> C2: element -> parity of its discrete log; the functor
  // constructor's composition check is the oracle that this is a hom
  std::vector<int> mmap(4);
  int gen = -1;
  for (int g = 0; g < 4; ++g)
    if (C4.element_order(g) == 4) {
      gen = g;
      break;
    }
  std::vector<int> dlog(4, -1);
  int cur = 0;
  for (int k = 0; k < 4; ++k) {
    dlog[cur] = k;
    cur = C4.mul(cur, gen);
  }
  for (int g = 0; g < 4; ++g) mmap[g] = dlog[g] % 2;
  FinFunctor F(BC4, BC2, {0}, mmap);
  FinFunctor G(BC2, pt, {0}, {0, 0});
  auto X = nerve_truncated(*BC4, 3);
  auto Y = nerve_truncated(*BC2, 3);
  auto Z = nerve_truncated(*pt, 3);
  auto cx = chains_of(X, 2), cy = chains_of(Y, 2), cz = chains_of(Z, 2);
  auto repF = induced_map(cx, cy, simplicial_map_of_functor(F, X, Y), 2);
  auto repG = induced_map(cy, cz, simplicial_map_of_functor(G, Y, Z), 2);
  auto repGF = induced_map(
      cx, cz, simplicial_map_of_functor(compose(G, F), X, Z), 2);
  for (int n = 0; n <= 2; ++n) {
    // multiply repG.matrices[n] * repF.matrices[n] mod 2
    auto& A = repG.matrices[n];
    auto& B = repF.matrices[n];
    auto& C = repGF.matrices[n];
    size_t rows = A.size(), mid = B.size(), cols = mid ? B[0].size() : 0;
    REQUIRE(C.size() == rows);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) {
        int s = 0;
        for (size_t k = 0; k < mid; ++k) s = (s + A[i][k] * B[k][j]) % 2;
        CHECK(C[i][j] == s);
      }
  }
}

TEST_CASE("euler characteristic consistency on truncation-stable complexes") {
  auto P = poset_cat(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  auto X = nerve_truncated(*P, 3);
  CHECK(X.count(3) == 0);  // longest chain has 2 non-identity arrows
  auto cx = chains_of(X, 2);
  auto b = betti(cx);
  long chi_cells = 0, chi_betti = 0;
  for (int n = 0; n <= cx.top(); ++n)
    chi_cells += (n % 2 ? -1 : 1) * cx.dims[n];
  for (size_t n = 0; n < b.size(); ++n)
    chi_betti += (n % 2 ? -1 : 1) * b[n];
  CHECK(chi_cells == chi_betti);
}

TEST_CASE("group homology via bar complex") {
  auto C2 = corpus::c2();
  auto H2 = group_homology_fp(full_subgroup(C2), 2, 2);
  CHECK(H2 == std::vector<long>{1, 1, 1});
  auto S3 = corpus::s3();
  CHECK(group_homology_fp(full_subgroup(S3), 3, 2) ==
        std::vector<long>{1, 0, 0});
  // H_*(C_3; F_3) = F_3 in every degree
  auto C3 = subgroup_generated_by(S3, {[&] {
               for (int g = 0; g < 6; ++g)
                 if (S3.element_order(g) == 3) return g;
               return -1;
             }()});
  CHECK(group_homology_fp(C3, 3, 2) == std::vector<long>{1, 1, 1});
  // trivial group
  CHECK(group_homology_fp(trivial_subgroup(S3), 2, 2) ==
        std::vector<long>{1, 0, 0});
}
