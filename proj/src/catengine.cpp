#include "plfg/catengine.hpp"

#include <algorithm>

namespace plfg {

int Grothendieck::obj_index(int K, int X) const {
  auto it = obj_idx.find({K, X});
  if (it == obj_idx.end()) throw CategoryError("grothendieck: unknown object");
  return it->second;
}

int Grothendieck::mor_index(int k, int X0, int x) const {
  auto it = mor_idx.find({k, X0, x});
  if (it == mor_idx.end()) throw CategoryError("grothendieck: unknown morphism");
  return it->second;
}

Grothendieck grothendieck(const CatDiagram& U) {
  U.validate();
  const FinCategory& B = *U.base;
  Grothendieck T;
  auto cat = std::make_shared<FinCategory>();

  for (int K = 0; K < B.num_objects(); ++K)
    for (int X = 0; X < U.value[K]->num_objects(); ++X) {
      int o = cat->add_object();
      T.obj_pair.emplace_back(K, X);
      T.obj_idx[{K, X}] = o;
    }

  // morphisms (k: K0 -> K1, x: U(k)(X0) -> X1)
  for (int k = 0; k < B.num_morphisms(); ++k) {
    int K0 = B.src(k), K1 = B.dst(k);
    const FinFunctor& Uk = U.action[k];
    const FinCategory& V1 = *U.value[K1];
    for (int X0 = 0; X0 < U.value[K0]->num_objects(); ++X0) {
      int mid = Uk.on_obj(X0);
      for (int x = 0; x < V1.num_morphisms(); ++x) {
        if (V1.src(x) != mid) continue;
        int src = T.obj_idx.at({K0, X0});
        int dst = T.obj_idx.at({K1, V1.dst(x)});
        int m = cat->add_morphism(src, dst);
        T.mor_data.emplace_back(k, X0, x);
        T.mor_idx[{k, X0, x}] = m;
        if (B.is_identity(k) && V1.is_identity(x)) cat->set_identity(src, m);
      }
    }
  }

  int nm = cat->num_morphisms();
  std::vector<std::vector<int>> by_src(T.obj_pair.size());
  for (int m = 0; m < nm; ++m) by_src[cat->src(m)].push_back(m);
  for (int m0 = 0; m0 < nm; ++m0) {
    auto [k0, X00, x0] = T.mor_data[m0];
    for (int m1 : by_src[cat->dst(m0)]) {
      auto [k1, X01, x1] = T.mor_data[m1];
      int k = B.compose(k1, k0);
      int x = U.value[B.dst(k1)]->compose(x1, U.action[k1].on_mor(x0));
      cat->set_compose(m1, m0, T.mor_idx.at({k, X00, x}));
      (void)X01;
    }
  }
  cat->finalize();
  T.cat = std::move(cat);

  std::vector<int> omap(T.obj_pair.size()), mmap(T.mor_data.size());
  for (size_t i = 0; i < T.obj_pair.size(); ++i) omap[i] = T.obj_pair[i].first;
  for (size_t i = 0; i < T.mor_data.size(); ++i)
    mmap[i] = std::get<0>(T.mor_data[i]);
  T.projection = FinFunctor(T.cat, U.base, std::move(omap), std::move(mmap));
  return T;
}

FinFunctor cone_inclusion(const Grothendieck& T, const CatDiagram& U, int K) {
  const FinCategory& V = *U.value[K];
  int idK = U.base->identity_of(K);
  std::vector<int> omap(V.num_objects()), mmap(V.num_morphisms());
  for (int X = 0; X < V.num_objects(); ++X) omap[X] = T.obj_index(K, X);
  for (int x = 0; x < V.num_morphisms(); ++x)
    mmap[x] = T.mor_index(idK, V.src(x), x);
  return FinFunctor(U.value[K], T.cat, std::move(omap), std::move(mmap));
}

FinFunctor grothendieck_nat(const Grothendieck& T, const CatDiagram& U,
                            const Grothendieck& T2, const CatDiagram& U2,
                            const std::vector<FinFunctor>& comp) {
  if (U.base != U2.base)
    throw CategoryError("grothendieck_nat: diagrams over different bases");
  const FinCategory& B = *U.base;
  // naturality: comp[K1] ∘ U(k) = U2(k) ∘ comp[K0] for every base k
  for (int k = 0; k < B.num_morphisms(); ++k) {
    if (!functors_equal(compose(comp[B.dst(k)], U.action[k]),
                        compose(U2.action[k], comp[B.src(k)])))
      throw CategoryError("grothendieck_nat: transformation not natural");
  }
  std::vector<int> omap(T.obj_pair.size()), mmap(T.mor_data.size());
  for (size_t i = 0; i < T.obj_pair.size(); ++i) {
    auto [K, X] = T.obj_pair[i];
    omap[i] = T2.obj_index(K, comp[K].on_obj(X));
  }
  for (size_t i = 0; i < T.mor_data.size(); ++i) {
    auto [k, X0, x] = T.mor_data[i];
    mmap[i] =
        T2.mor_index(k, comp[B.src(k)].on_obj(X0), comp[B.dst(k)].on_mor(x));
  }
  return FinFunctor(T.cat, T2.cat, std::move(omap), std::move(mmap));
}

int Comma::obj_index(int K, int f) const {
  auto it = obj_idx.find({K, f});
  if (it == obj_idx.end()) throw CategoryError("comma: unknown object");
  return it->second;
}

int Comma::mor_index(int src_obj, int dst_obj, int k) const {
  auto it = mor_idx.find({src_obj, dst_obj, k});
  if (it == mor_idx.end()) throw CategoryError("comma: unknown morphism");
  return it->second;
}

Comma comma_category(const FinFunctor& F, int d, CommaSide side) {
  const FinCategory& K = *F.source;
  const FinCategory& L = *F.target;
  Comma C;
  auto cat = std::make_shared<FinCategory>();

  for (int o = 0; o < K.num_objects(); ++o) {
    int Fo = F.on_obj(o);
    const auto& fs =
        (side == CommaSide::Under) ? L.hom(d, Fo) : L.hom(Fo, d);
    for (int f : fs) {
      int i = cat->add_object();
      C.obj_pair.emplace_back(o, f);
      C.obj_idx[{o, f}] = i;
    }
  }

  int nobj = static_cast<int>(C.obj_pair.size());
  for (int i = 0; i < nobj; ++i)
    for (int j = 0; j < nobj; ++j) {
      auto [o, f] = C.obj_pair[i];
      auto [o2, f2] = C.obj_pair[j];
      for (int k : K.hom(o, o2)) {
        int Fk = F.on_mor(k);
        bool commutes = (side == CommaSide::Under)
                            ? (L.compose(Fk, f) == f2)
                            : (L.compose(f2, Fk) == f);
        if (!commutes) continue;
        int m = cat->add_morphism(i, j);
        C.mor_k.push_back(k);
        C.mor_idx[{i, j, k}] = m;
        if (i == j && K.is_identity(k)) cat->set_identity(i, m);
      }
    }

  int nm = cat->num_morphisms();
  std::vector<std::vector<int>> by_src(nobj);
  for (int m = 0; m < nm; ++m) by_src[cat->src(m)].push_back(m);
  for (int m0 = 0; m0 < nm; ++m0)
    for (int m1 : by_src[cat->dst(m0)]) {
      int k = K.compose(C.mor_k[m1], C.mor_k[m0]);
      cat->set_compose(m1, m0,
                       C.mor_idx.at({cat->src(m0), cat->dst(m1), k}));
    }
  cat->finalize();
  C.cat = std::move(cat);

  std::vector<int> omap(nobj), mmap(nm);
  for (int i = 0; i < nobj; ++i) omap[i] = C.obj_pair[i].first;
  for (int m = 0; m < nm; ++m) mmap[m] = C.mor_k[m];
  C.projection = FinFunctor(C.cat, F.source, std::move(omap), std::move(mmap));
  return C;
}

int find_initial_object(const FinCategory& cat) {
  for (int o = 0; o < cat.num_objects(); ++o) {
    bool ok = true;
    for (int o2 = 0; o2 < cat.num_objects() && ok; ++o2)
      ok = cat.hom(o, o2).size() == 1;
    if (ok) return o;
  }
  return -1;
}

CatDiagram restrict_diagram(const FinFunctor& F, const CatDiagram& U) {
  if (U.base != F.target)
    throw CategoryError("restrict_diagram: diagram not over the functor target");
  CatDiagram R;
  R.base = F.source;
  R.value.reserve(F.source->num_objects());
  for (int o = 0; o < F.source->num_objects(); ++o)
    R.value.push_back(U.value[F.on_obj(o)]);
  R.action.reserve(F.source->num_morphisms());
  for (int m = 0; m < F.source->num_morphisms(); ++m)
    R.action.push_back(U.action[F.on_mor(m)]);
  return R;
}

KanExtension kan_extension_cat(const FinFunctor& F, const CatDiagram& U) {
  if (U.base != F.source)
    throw CategoryError("kan_extension_cat: diagram not over the functor source");
  const FinCategory& L = *F.target;
  KanExtension E;
  E.comma.reserve(L.num_objects());
  E.restricted.reserve(L.num_objects());
  E.tr.reserve(L.num_objects());
  for (int l = 0; l < L.num_objects(); ++l) {
    E.comma.push_back(comma_category(F, l, CommaSide::Over));
    const Comma& C = E.comma.back();
    CatDiagram R;
    R.base = C.cat;
    for (auto [o, f] : C.obj_pair) {
      R.value.push_back(U.value[o]);
      (void)f;
    }
    for (int m = 0; m < C.cat->num_morphisms(); ++m)
      R.action.push_back(U.action[C.mor_k[m]]);
    E.restricted.push_back(std::move(R));
    E.tr.push_back(grothendieck(E.restricted.back()));
  }

  E.diagram.base = F.target;
  for (int l = 0; l < L.num_objects(); ++l)
    E.diagram.value.push_back(E.tr[l].cat);
  for (int lam = 0; lam < L.num_morphisms(); ++lam) {
    int l = L.src(lam), l2 = L.dst(lam);
    const Comma& Cl = E.comma[l];
    const Comma& Cl2 = E.comma[l2];
    // postcomposition (K, f: FK -> l) -> (K, lam∘f) on the comma level
    int ncobj = static_cast<int>(Cl.obj_pair.size());
    std::vector<int> cobj(ncobj);
    for (int i = 0; i < ncobj; ++i) {
      auto [o, f] = Cl.obj_pair[i];
      cobj[i] = Cl2.obj_index(o, L.compose(lam, f));
    }
    int ncm = Cl.cat->num_morphisms();
    std::vector<int> cmor(ncm);
    for (int m = 0; m < ncm; ++m)
      cmor[m] = Cl2.mor_index(cobj[Cl.cat->src(m)], cobj[Cl.cat->dst(m)],
                              Cl.mor_k[m]);
    // lift to the translation categories: same fiber data
    const Grothendieck& Tl = E.tr[l];
    const Grothendieck& Tl2 = E.tr[l2];
    std::vector<int> omap(Tl.obj_pair.size()), mmap(Tl.mor_data.size());
    for (size_t i = 0; i < Tl.obj_pair.size(); ++i)
      omap[i] = Tl2.obj_index(cobj[Tl.obj_pair[i].first],
                              Tl.obj_pair[i].second);
    for (size_t i = 0; i < Tl.mor_data.size(); ++i) {
      auto [cm, X0, x] = Tl.mor_data[i];
      mmap[i] = Tl2.mor_index(cmor[cm], X0, x);
    }
    E.diagram.action.emplace_back(Tl.cat, Tl2.cat, std::move(omap),
                                  std::move(mmap));
  }
  E.diagram.validate();
  return E;
}

FinFunctor f_shriek(const FinFunctor& F, const CatDiagram& U,
                    const Grothendieck& trK, const Grothendieck& trL) {
  if (U.base != F.target)
    throw CategoryError("f_shriek: diagram not over the functor target");
  std::vector<int> omap(trK.obj_pair.size()), mmap(trK.mor_data.size());
  for (size_t i = 0; i < trK.obj_pair.size(); ++i)
    omap[i] =
        trL.obj_index(F.on_obj(trK.obj_pair[i].first), trK.obj_pair[i].second);
  for (size_t i = 0; i < trK.mor_data.size(); ++i) {
    auto [k, X0, x] = trK.mor_data[i];
    mmap[i] = trL.mor_index(F.on_mor(k), X0, x);
  }
  return FinFunctor(trK.cat, trL.cat, std::move(omap), std::move(mmap));
}

FinFunctor f_sharp(const FinFunctor& F, const CatDiagram& U,
                   const KanExtension& FstarU, const Grothendieck& trL,
                   const Grothendieck& trK) {
  if (U.base != F.source)
    throw CategoryError("f_sharp: diagram not over the functor source");
  std::vector<int> omap(trL.obj_pair.size()), mmap(trL.mor_data.size());
  for (size_t i = 0; i < trL.obj_pair.size(); ++i) {
    auto [l, A] = trL.obj_pair[i];
    auto [c, X] = FstarU.tr[l].obj_pair[A];
    omap[i] = trK.obj_index(FstarU.comma[l].obj_pair[c].first, X);
  }
  for (size_t i = 0; i < trL.mor_data.size(); ++i) {
    auto [lam, A0, xi] = trL.mor_data[i];
    (void)A0;
    int l2 = F.target->dst(lam);
    auto [cm, X0, x] = FstarU.tr[l2].mor_data[xi];
    mmap[i] = trK.mor_index(FstarU.comma[l2].mor_k[cm], X0, x);
  }
  return FinFunctor(trL.cat, trK.cat, std::move(omap), std::move(mmap));
}

CofinalityReport check_right_cofinal(const FinFunctor& F, int d, int p,
                                     long budget) {
  CofinalityReport rep;
  const FinCategory& L = *F.target;
  rep.object_ok.resize(L.num_objects(), false);
  for (int l = 0; l < L.num_objects(); ++l) {
    Comma C = comma_category(F, l, CommaSide::Under);
    bool ok = C.cat->num_objects() > 0;
    if (ok) {
      TruncatedSSet X = nerve_truncated(*C.cat, d, budget);
      ok = reduced_vanishing(X, p, d - 1);
    }
    rep.object_ok[l] = ok;
    if (!ok) rep.all_ok = false;
  }
  return rep;
}

TruncatedSSet simplicial_replacement_diagonal(const CatDiagram& U, int d,
                                              long budget) {
  U.validate();
  const FinCategory& B = *U.base;
  std::vector<int> lens(d + 1);
  lens[0] = 2;
  for (int n = 1; n <= d; ++n) lens[n] = 2 * n;
  TruncatedSSet X(d, lens);
  long total = 0;

  // 0-cells (K, fiber object of U(K))
  for (int K = 0; K < B.num_objects(); ++K)
    for (int x = 0; x < U.value[K]->num_objects(); ++x) {
      int t[2] = {K, x};
      if (++total > budget) throw SimplexBudgetExceeded("diagonal 0-cells");
      X.add_cell(0, t);
    }

  // n-cells: base chain f_1..f_n (identities allowed), fiber chain u_1..u_n
  // in U(K_0) (identities allowed), no slot with identities in both
  auto last_base_obj = [&](int n, const int* t) {
    return n == 0 ? t[0] : B.dst(t[n - 1]);
  };
  auto first_base_obj = [&](int n, const int* t) {
    return n == 0 ? t[0] : B.src(t[0]);
  };
  auto last_fiber_obj = [&](int n, const int* t) {
    if (n == 0) return t[1];
    const FinCategory& V = *U.value[first_base_obj(n, t)];
    return V.dst(t[2 * n - 1]);
  };

  std::vector<int> buf;
  for (int n = 1; n <= d; ++n) {
    long prev = X.count(n - 1);
    buf.assign(2 * n, 0);
    for (long i = 0; i < prev; ++i) {
      const int* t = X.cell(n - 1, i);
      int K0 = first_base_obj(n - 1, t);
      const FinCategory& V = *U.value[K0];
      int bK = last_base_obj(n - 1, t);
      int fX = last_fiber_obj(n - 1, t);
      // copy prefix: base morphisms then fiber morphisms
      for (int j = 0; j < n - 1; ++j) {
        buf[j] = t[j];
        buf[n + j] = t[(n - 1) + j];
      }
      for (int f = 0; f < B.num_morphisms(); ++f) {
        if (B.src(f) != bK) continue;
        for (int u = 0; u < V.num_morphisms(); ++u) {
          if (V.src(u) != fX) continue;
          if (B.is_identity(f) && V.is_identity(u)) continue;
          buf[n - 1] = f;
          buf[2 * n - 1] = u;
          if (++total > budget) throw SimplexBudgetExceeded("diagonal cells");
          X.add_cell(n, buf.data());
        }
      }
    }
  }
  X.freeze();
  X.allocate_faces();

  // faces: componentwise nerve faces; d_0 additionally transports the fiber
  // chain along U(f_1); a face with identities in both components of some
  // slot is degenerate
  std::vector<int> fb;
  for (int n = 1; n <= d; ++n) {
    long cnt = X.count(n);
    for (long c = 0; c < cnt; ++c) {
      const int* t = X.cell(n, c);
      int K0 = B.src(t[0]);
      const FinCategory& V0 = *U.value[K0];
      for (int k = 0; k <= n; ++k) {
        if (n == 1) {
          int out[2];
          if (k == 0) {
            out[0] = B.dst(t[0]);
            out[1] = U.action[t[0]].on_obj(V0.dst(t[1]));
          } else {
            out[0] = K0;
            out[1] = V0.src(t[1]);
          }
          long idx = X.index_of(0, out);
          if (idx < 0) throw CategoryError("diagonal face missing");
          X.set_face(1, c, k, idx);
          continue;
        }
        fb.assign(2 * (n - 1), 0);
        if (k == 0) {
          const FinFunctor& Uf = U.action[t[0]];
          for (int j = 0; j < n - 1; ++j) {
            fb[j] = t[1 + j];
            fb[(n - 1) + j] = Uf.on_mor(t[n + 1 + j]);
          }
        } else if (k == n) {
          for (int j = 0; j < n - 1; ++j) {
            fb[j] = t[j];
            fb[(n - 1) + j] = t[n + j];
          }
        } else {
          int bcomp = B.compose(t[k], t[k - 1]);
          int fcomp = V0.compose(t[n + k], t[n + k - 1]);
          int w = 0;
          for (int j = 0; j < n; ++j) {
            if (j == k - 1) {
              fb[w] = bcomp;
              fb[(n - 1) + w] = fcomp;
              ++w;
              ++j;  // skip slot k
            } else {
              fb[w] = t[j];
              fb[(n - 1) + w] = t[n + j];
              ++w;
            }
          }
        }
        // joint degeneracy of the face
        int fK0 = B.src(fb[0]);
        const FinCategory& FV = *U.value[fK0];
        bool degen = false;
        for (int j = 0; j < n - 1; ++j)
          if (B.is_identity(fb[j]) && FV.is_identity(fb[(n - 1) + j])) {
            degen = true;
            break;
          }
        if (degen) {
          X.set_face(n, c, k, -1);
        } else {
          long idx = X.index_of(n - 1, fb.data());
          if (idx < 0) throw CategoryError("diagonal face missing");
          X.set_face(n, c, k, idx);
        }
      }
    }
  }
  return X;
}

TwoWayHomology hocolim_homology_two_ways(const CatDiagram& U, int d, int p,
                                         long budget) {
  TwoWayHomology out;
  Grothendieck T = grothendieck(U);
  TruncatedSSet N = nerve_truncated(*T.cat, d, budget);
  out.via_grothendieck = betti(chains_of(N, p));
  TruncatedSSet D = simplicial_replacement_diagonal(U, d, budget);
  out.via_diagonal = betti(chains_of(D, p));
  return out;
}

bool check_adjoint_cofinality(const FinFunctor& J, const FinFunctor& L,
                              const NatTrans& unit) {
  if (J.target != L.source || L.target != J.source) return false;
  const FinCategory& C = *J.source;
  const FinCategory& D = *J.target;
  if (static_cast<int>(unit.comp.size()) != D.num_objects()) return false;
  // L ∘ J = Id strictly
  if (!functors_equal(compose(L, J), FinFunctor::identity(J.source)))
    return false;
  // unit Id_D => J∘L natural
  if (!natural_transformation_valid(FinFunctor::identity(J.target),
                                    compose(J, L), unit))
    return false;
  // triangle identities
  for (int o = 0; o < D.num_objects(); ++o)
    if (!C.is_identity(L.on_mor(unit.comp[o]))) return false;
  for (int c = 0; c < C.num_objects(); ++c)
    if (!D.is_identity(unit.comp[J.on_obj(c)])) return false;
  return true;
}

SkeletonRetract skeleton_retract(const CatPtr& c) {
  const FinCategory& C = *c;
  int n = C.num_objects();
  // representative = least object of each isomorphism class; w[o] is a
  // chosen isomorphism o -> rep(o), the identity on representatives
  std::vector<int> rep(n, -1), w(n, -1);
  std::vector<int> reps;
  for (int o = 0; o < n; ++o) {
    for (int r : reps) {
      for (int m : C.hom(o, r))
        if (C.is_iso(m)) {
          rep[o] = r;
          w[o] = m;
          break;
        }
      if (rep[o] >= 0) break;
    }
    if (rep[o] < 0) {
      rep[o] = o;
      w[o] = C.identity_of(o);
      reps.push_back(o);
    }
  }

  SkeletonRetract S;
  auto k = std::make_shared<FinCategory>();
  std::vector<int> kobj_of(n, -1);  // original object -> skeleton object
  for (size_t i = 0; i < reps.size(); ++i) kobj_of[reps[i]] = k->add_object();
  std::vector<int> jm;                      // original morphism per K morphism
  std::vector<int> kmor_of(C.num_morphisms(), -1);
  for (int a : reps)
    for (int b : reps)
      for (int m : C.hom(a, b)) {
        int km = k->add_morphism(kobj_of[a], kobj_of[b]);
        jm.push_back(m);
        kmor_of[m] = km;
        if (a == b && C.is_identity(m)) k->set_identity(kobj_of[a], km);
      }
  for (size_t a = 0; a < jm.size(); ++a)
    for (size_t b = 0; b < jm.size(); ++b)
      if (C.dst(jm[b]) == C.src(jm[a]))
        k->set_compose(static_cast<int>(a), static_cast<int>(b),
                       kmor_of[C.compose(jm[a], jm[b])]);
  k->finalize();
  S.cat = k;

  std::vector<int> jo(reps);
  S.J = FinFunctor(S.cat, c, std::move(jo), std::vector<int>(jm));

  std::vector<int> ro(n), rm(C.num_morphisms());
  for (int o = 0; o < n; ++o) ro[o] = kobj_of[rep[o]];
  for (int m = 0; m < C.num_morphisms(); ++m) {
    int winv = C.inverse_of(w[C.src(m)]);
    rm[m] = kmor_of[C.compose(w[C.dst(m)], C.compose(m, winv))];
  }
  S.R = FinFunctor(c, S.cat, std::move(ro), std::move(rm));
  S.unit.comp = w;
  if (!check_adjoint_cofinality(S.J, S.R, S.unit))
    throw CategoryError("skeleton: adjunction certificate failed");
  return S;
}

}  // namespace plfg
