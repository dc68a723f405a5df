#include "plfg/subdivision.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace plfg {

bool is_subchain(const SimplexChain& sub, const SimplexChain& chain) {
  size_t j = 0;
  for (const auto& e : chain.entries)
    if (j < sub.entries.size() && e == sub.entries[j]) ++j;
  return j == sub.entries.size() && !sub.entries.empty();
}

std::vector<SimplexChain> enumerate_chains(const Collection& C) {
  std::vector<SimplexChain> out;
  const auto& mem = C.members;  // sorted by (order, elems)
  std::vector<int> stack;
  auto emit = [&]() {
    SimplexChain c;
    for (int i : stack) c.entries.push_back(mem[i]);
    out.push_back(std::move(c));
  };
  // depth-first over strictly increasing proper inclusions
  std::function<void(int)> extend = [&](int last) {
    emit();
    for (int j = last + 1; j < static_cast<int>(mem.size()); ++j)
      if (mem[last].proper_subgroup_of(mem[j])) {
        stack.push_back(j);
        extend(j);
        stack.pop_back();
      }
  };
  for (int i = 0; i < static_cast<int>(mem.size()); ++i) {
    stack.assign(1, i);
    extend(i);
  }
  std::sort(out.begin(), out.end(), [](const SimplexChain& a,
                                       const SimplexChain& b) {
    if (a.entries.size() != b.entries.size())
      return a.entries.size() < b.entries.size();
    return a < b;
  });
  return out;
}

bool chains_conjugate(const FusionSystem& F, const SimplexChain& a,
                      const SimplexChain& b) {
  if (a.entries.size() != b.entries.size()) return false;
  const FiniteGroup& G = F.group();
  int k = a.length();
  for (const auto& f : F.isos(a.entries[k], b.entries[k])) {
    bool ok = true;
    for (int i = 0; i < k && ok; ++i)
      ok = conjugate_subgroup(G, f.rep, a.entries[i]) == b.entries[i];
    if (ok) return true;
  }
  return false;
}

int BarSubdivision::class_of(const SimplexChain& c) const {
  for (int i = 0; i < static_cast<int>(classes.size()); ++i)
    for (const auto& m : classes[i].members)
      if (m == c) return i;
  return -1;
}

BarSubdivision conj_classes_of_chains(const FusionSystem& F,
                                      const std::vector<SimplexChain>& chains) {
  BarSubdivision bar;
  for (const auto& c : chains) {
    bool placed = false;
    for (auto& cls : bar.classes)
      if (chains_conjugate(F, cls.members[0], c)) {
        cls.members.push_back(c);
        placed = true;
        break;
      }
    if (!placed) bar.classes.push_back({c, {c}});
  }
  for (auto& cls : bar.classes) {
    std::sort(cls.members.begin(), cls.members.end());
    cls.representative = cls.members[0];
  }
  std::sort(bar.classes.begin(), bar.classes.end(),
            [](const ConjClass& a, const ConjClass& b) {
              if (a.representative.entries.size() !=
                  b.representative.entries.size())
                return a.representative.entries.size() <
                       b.representative.entries.size();
              return a.representative < b.representative;
            });

  int n = static_cast<int>(bar.classes.size());
  // arrow [P] -> [P'] when a subchain of a member of [P] lies in [P']
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (const auto& m : bar.classes[i].members) {
      int len = static_cast<int>(m.entries.size());
      for (int mask = 1; mask < (1 << len); ++mask) {
        SimplexChain sub;
        for (int t = 0; t < len; ++t)
          if (mask & (1 << t)) sub.entries.push_back(m.entries[t]);
        int j = bar.class_of(sub);
        if (j < 0) throw CategoryError("subchain missing from chain list");
        rel[i][j] = true;
      }
    }
  // transitive closure (the relation is already transitive; closure is a
  // cheap safety net for the composition table)
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (rel[i][k])
        for (int j = 0; j < n; ++j)
          if (rel[k][j]) rel[i][j] = true;

  auto cat = std::make_shared<FinCategory>();
  for (int i = 0; i < n; ++i) cat->add_object();
  std::vector<std::vector<int>> arrow(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i) arrow[i][i] = cat->add_identity(i);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && rel[i][j]) arrow[i][j] = cat->add_morphism(i, j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (arrow[i][j] >= 0)
        for (int l = 0; l < n; ++l)
          if (arrow[j][l] >= 0)
            cat->set_compose(arrow[j][l], arrow[i][j], arrow[i][l]);
  cat->finalize();
  bar.poset = std::move(cat);
  return bar;
}

ChainAut aut_l_chain(const LinkingSystem& L, const SimplexChain& P) {
  const FiniteGroup& G = L.fusion().group();
  int k = P.length();
  std::vector<std::vector<LinkMorphism>> tuples;

  // ladder oracle: tuples (phi_0..phi_k) with iota ∘ phi_i = phi_{i+1} ∘ iota
  std::vector<LinkMorphism> cur;
  std::function<void(int)> extend = [&](int i) {
    if (i > k) {
      tuples.push_back(cur);
      return;
    }
    for (const auto& phi : L.hom(P.entries[i], P.entries[i])) {
      if (i > 0) {
        auto io = L.iota(P.entries[i - 1], P.entries[i]);
        if (!(L.compose(io, cur.back()) == L.compose(phi, io))) continue;
      }
      cur.push_back(phi);
      extend(i + 1);
      cur.pop_back();
    }
  };
  extend(0);

  // the first-component embedding is injective
  {
    std::set<int> firsts;
    for (const auto& t : tuples) firsts.insert(t[0].rep);
    if (firsts.size() != tuples.size())
      throw CategoryError("chain automorphisms: first component not injective");
  }

  // group formula (∩ N_G(P_i)) / C'_G(P_0), cross-asserted against the ladder
  Subgroup H = normalizer(G, P.entries[0]);
  for (int i = 1; i <= k; ++i) H = intersect(H, normalizer(G, P.entries[i]));
  const Subgroup& Cp = L.cprime(P.entries[0]);
  if (!H.contains(Cp))
    throw CategoryError("chain automorphisms: group formula inapplicable");
  QuotientGroup Q = quotient_group(H, Cp);
  if (static_cast<size_t>(Q.group.order()) != tuples.size())
    throw CategoryError("chain automorphisms: formula and ladder disagree");
  // align tuple order with the quotient's coset order
  std::sort(tuples.begin(), tuples.end(),
            [&](const auto& a, const auto& b) {
              return Q.of_elem[a[0].rep] < Q.of_elem[b[0].rep];
            });
  for (size_t q = 0; q < tuples.size(); ++q)
    if (tuples[q][0].rep !=
        canonical_coset_rep(G, Q.reps[q], Cp))
      throw CategoryError("chain automorphisms: formula and ladder disagree");
  // tuple composition matches the quotient multiplication
  int n = Q.group.order();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ab = Q.group.mul(a, b);
      for (int i = 0; i <= k; ++i)
        if (!(L.compose(tuples[a][i], tuples[b][i]) == tuples[ab][i]))
          throw CategoryError("chain automorphisms: not a homomorphism");
    }

  auto c = std::make_shared<FinCategory>();
  int o = c->add_object();
  std::vector<int> m(n);
  for (int g = 0; g < n; ++g) m[g] = c->add_morphism(o, o);
  c->set_identity(o, m[0]);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      c->set_compose(m[a], m[b], m[Q.group.mul(a, b)]);
  c->finalize();
  return ChainAut{std::move(tuples), std::move(Q), std::move(c)};
}

std::vector<int> restriction_map(const LinkingSystem& L, const SimplexChain& P,
                                 const SimplexChain& Pp) {
  if (!is_subchain(Pp, P))
    throw NotASubsimplex("restriction_map: not a subchain");
  std::vector<int> pos;  // positions of Pp's entries inside P
  {
    size_t j = 0;
    for (size_t i = 0; i < P.entries.size(); ++i)
      if (j < Pp.entries.size() && P.entries[i] == Pp.entries[j]) {
        pos.push_back(static_cast<int>(i));
        ++j;
      }
  }
  ChainAut A = aut_l_chain(L, P);
  ChainAut Ap = aut_l_chain(L, Pp);
  std::vector<int> out(A.tuples.size(), -1);
  for (size_t a = 0; a < A.tuples.size(); ++a) {
    for (size_t b = 0; b < Ap.tuples.size(); ++b) {
      bool match = true;
      for (size_t j = 0; j < pos.size() && match; ++j)
        match = A.tuples[a][pos[j]] == Ap.tuples[b][j];
      if (match) {
        out[a] = static_cast<int>(b);
        break;
      }
    }
    if (out[a] < 0)
      throw CategoryError("restriction_map: restricted tuple missing");
  }
  // homomorphism and injectivity
  int n = A.group.group.order();
  for (int a = 0; a < n; ++a) {
    if (a != 0 && out[a] == 0)
      throw CategoryError("restriction_map: kernel is nontrivial");
    for (int b = 0; b < n; ++b)
      if (out[A.group.group.mul(a, b)] !=
          Ap.group.group.mul(out[a], out[b]))
        throw CategoryError("restriction_map: not a homomorphism");
  }
  return out;
}

void validate_heighted_ei(const HeightedEICategory& A) {
  const FinCategory& c = *A.cat;
  if (static_cast<int>(A.height.size()) != c.num_objects())
    throw CategoryError("height function has wrong size");
  for (int m = 0; m < c.num_morphisms(); ++m) {
    int hs = A.height[c.src(m)], hd = A.height[c.dst(m)];
    if (hs > hd) throw CategoryError("height decreases along a morphism");
    if ((hs == hd) != c.is_iso(m))
      throw CategoryError("height equality does not match isomorphy");
  }
}

HeightedEICategory heighted_linking(const LinkingSystem& L) {
  HeightedEICategory A;
  A.cat = L.category();
  for (const auto& P : L.objects()) A.height.push_back(P.order());
  validate_heighted_ei(A);
  return A;
}

std::vector<int> iota_subcategory(const LinkingSystem& L) {
  std::vector<int> I;
  for (int m = 0; m < L.category()->num_morphisms(); ++m)
    if (L.mor_of(m).rep == 0) I.push_back(m);
  return I;
}

int SubdivisionCategory::obj_index(const std::vector<int>& vertices,
                                   const std::vector<int>& arrows) const {
  auto it = obj_idx.find({vertices, arrows});
  if (it == obj_idx.end()) throw CategoryError("subdivision: unknown chain");
  return it->second;
}

int SubdivisionCategory::mor_index(int src, int dst,
                                   const std::vector<int>& eps,
                                   const std::vector<int>& phi) const {
  auto it = mor_idx.find({src, dst, eps, phi});
  if (it == mor_idx.end()) throw CategoryError("subdivision: unknown morphism");
  return it->second;
}

namespace {

// shared builder: arrow_ok filters which A-morphisms may appear inside chains
SubdivisionCategory build_subdivision(const HeightedEICategory& A,
                                      const std::function<bool(int)>& arrow_ok,
                                      long budget) {
  validate_heighted_ei(A);
  const FinCategory& base = *A.cat;
  SubdivisionCategory S;
  long total = 0;

  // chains with strictly increasing heights
  std::vector<int> vs, as;
  std::function<void()> extend = [&]() {
    if (++total > budget) throw SimplexBudgetExceeded("subdivision chains");
    S.obj_idx[{vs, as}] = static_cast<int>(S.obj_vertices.size());
    S.obj_vertices.push_back(vs);
    S.obj_arrows.push_back(as);
    S.height.push_back(static_cast<int>(as.size()));
    int last = vs.back();
    for (int f = 0; f < base.num_morphisms(); ++f) {
      if (base.src(f) != last || base.is_iso(f) || !arrow_ok(f)) continue;
      vs.push_back(base.dst(f));
      as.push_back(f);
      extend();
      vs.pop_back();
      as.pop_back();
    }
  };
  for (int o = 0; o < base.num_objects(); ++o) {
    vs.assign(1, o);
    as.clear();
    extend();
  }

  int nobj = static_cast<int>(S.obj_vertices.size());
  auto cat = std::make_shared<FinCategory>();
  for (int i = 0; i < nobj; ++i) cat->add_object();

  // isomorphism lists of A per object pair
  int na = base.num_objects();
  std::vector<std::vector<std::vector<int>>> isos(
      na, std::vector<std::vector<int>>(na));
  for (int m = 0; m < base.num_morphisms(); ++m)
    if (base.is_iso(m)) isos[base.src(m)][base.dst(m)].push_back(m);

  // composite of arrows a..b-1 of a chain (identity when a == b)
  auto chain_comp = [&](int obj, int a, int b) {
    int m = base.identity_of(S.obj_vertices[obj][a]);
    for (int t = a; t < b; ++t) m = base.compose(S.obj_arrows[obj][t], m);
    return m;
  };

  // morphisms (eps, phi)
  for (int src = 0; src < nobj; ++src) {
    int k = static_cast<int>(S.obj_arrows[src].size());
    for (int dst = 0; dst < nobj; ++dst) {
      int kp = static_cast<int>(S.obj_arrows[dst].size());
      if (kp > k) continue;
      // strictly increasing eps: {0..kp} -> {0..k}
      std::vector<int> eps(kp + 1);
      std::function<void(int, int)> pick = [&](int i, int from) {
        if (i > kp) {
          // natural isomorphism components by depth-first search
          std::vector<int> phi(kp + 1);
          std::function<void(int)> choose = [&](int j) {
            if (j > kp) {
              if (++total > budget)
                throw SimplexBudgetExceeded("subdivision morphisms");
              int m = cat->add_morphism(src, dst);
              S.mor_data.emplace_back(eps, phi);
              S.mor_idx[{src, dst, eps, phi}] =
                  static_cast<int>(S.mor_data.size()) - 1;
              if (src == dst) {
                bool is_id = true;
                for (int t = 0; t <= kp && is_id; ++t)
                  is_id = eps[t] == t &&
                          base.is_identity(phi[t]);
                if (is_id) cat->set_identity(src, m);
              }
              return;
            }
            for (int cand :
                 isos[S.obj_vertices[src][eps[j]]][S.obj_vertices[dst][j]]) {
              if (j > 0) {
                int lhs = base.compose(cand, chain_comp(src, eps[j - 1], eps[j]));
                int rhs = base.compose(S.obj_arrows[dst][j - 1], phi[j - 1]);
                if (lhs != rhs) continue;
              }
              phi[j] = cand;
              choose(j + 1);
            }
          };
          choose(0);
          return;
        }
        for (int v = from; v <= k - (kp - i); ++v) {
          eps[i] = v;
          pick(i + 1, v + 1);
        }
      };
      pick(0, 0);
    }
  }

  // composition: (eps', phi') ∘ (eps, phi) = (eps ∘ eps', eps'^*(phi) ∘ phi')
  int nm = cat->num_morphisms();
  std::vector<std::vector<int>> by_src(nobj);
  for (int m = 0; m < nm; ++m) by_src[cat->src(m)].push_back(m);
  for (int m0 = 0; m0 < nm; ++m0) {
    const auto& [e0, p0] = S.mor_data[m0];
    for (int m1 : by_src[cat->dst(m0)]) {
      const auto& [e1, p1] = S.mor_data[m1];
      std::vector<int> e(e1.size()), p(e1.size());
      for (size_t i = 0; i < e1.size(); ++i) {
        e[i] = e0[e1[i]];
        p[i] = base.compose(p1[i], p0[e1[i]]);
      }
      cat->set_compose(m1, m0,
                       S.mor_idx.at({cat->src(m0), cat->dst(m1), e, p}));
    }
  }
  cat->finalize();
  S.cat = std::move(cat);
  return S;
}

}  // namespace

SubdivisionCategory subdivision_category(const HeightedEICategory& A,
                                         long budget) {
  return build_subdivision(A, [](int) { return true; }, budget);
}

SubdivisionCategory skeletal_subdivision(const HeightedEICategory& A,
                                         const std::vector<int>& I,
                                         long budget) {
  const FinCategory& base = *A.cat;
  std::vector<bool> in_I(base.num_morphisms(), false);
  for (int m : I) in_I[m] = true;
  for (int o = 0; o < base.num_objects(); ++o)
    if (!in_I[base.identity_of(o)])
      throw FactorizationHypothesisFails("inclusions must contain identities");
  // poset: at most one inclusion per object pair; closed under composition
  for (int a : I)
    for (int b : I) {
      if (base.src(a) != base.src(b) || base.dst(a) != base.dst(b)) continue;
      if (a != b)
        throw FactorizationHypothesisFails("parallel inclusions");
    }
  for (int a : I)
    for (int b : I)
      if (base.dst(a) == base.src(b) && !in_I[base.compose(b, a)])
        throw FactorizationHypothesisFails("inclusions not closed");
  // unique factorization: every morphism = inclusion ∘ isomorphism
  for (int m = 0; m < base.num_morphisms(); ++m) {
    int count = 0;
    for (int e = 0; e < base.num_morphisms(); ++e) {
      if (!base.is_iso(e) || base.src(e) != base.src(m)) continue;
      for (int i : I)
        if (base.src(i) == base.dst(e) && base.dst(i) == base.dst(m) &&
            base.compose(i, e) == m)
          ++count;
    }
    if (count != 1)
      throw FactorizationHypothesisFails(
          "morphism without unique iso-then-inclusion factorization");
  }
  return build_subdivision(A, [&](int f) { return in_I[f]; }, budget);
}

bool verify_skeletality(const SubdivisionCategory& sA,
                        const SubdivisionCategory& sIA) {
  std::vector<int> reps;  // sIA objects located inside sA
  for (size_t o = 0; o < sIA.obj_vertices.size(); ++o)
    reps.push_back(sA.obj_index(sIA.obj_vertices[o], sIA.obj_arrows[o]));
  for (int o = 0; o < sA.cat->num_objects(); ++o) {
    int hits = 0;
    for (int r : reps)
      if (sA.height[o] == sA.height[r] && !sA.cat->hom(o, r).empty()) ++hits;
    if (hits != 1) return false;
  }
  return true;
}

BarProjection projection_pi(const SubdivisionCategory& sA) {
  const FinCategory& c = *sA.cat;
  int n = c.num_objects();
  BarProjection B;
  B.class_of_obj.assign(n, -1);
  for (int o = 0; o < n; ++o) {
    if (B.class_of_obj[o] >= 0) continue;
    int cls = static_cast<int>(B.class_rep.size());
    B.class_rep.push_back(o);
    for (int o2 = o; o2 < n; ++o2)
      if (B.class_of_obj[o2] < 0 && sA.height[o2] == sA.height[o] &&
          !c.hom(o, o2).empty())
        B.class_of_obj[o2] = cls;
  }
  int ncls = static_cast<int>(B.class_rep.size());
  std::vector<std::vector<bool>> rel(ncls, std::vector<bool>(ncls, false));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!c.hom(a, b).empty())
        rel[B.class_of_obj[a]][B.class_of_obj[b]] = true;

  auto poset = std::make_shared<FinCategory>();
  for (int i = 0; i < ncls; ++i) poset->add_object();
  std::vector<std::vector<int>> arrow(ncls, std::vector<int>(ncls, -1));
  for (int i = 0; i < ncls; ++i) arrow[i][i] = poset->add_identity(i);
  for (int i = 0; i < ncls; ++i)
    for (int j = 0; j < ncls; ++j)
      if (i != j && rel[i][j]) arrow[i][j] = poset->add_morphism(i, j);
  for (int i = 0; i < ncls; ++i)
    for (int j = 0; j < ncls; ++j)
      if (arrow[i][j] >= 0)
        for (int l = 0; l < ncls; ++l)
          if (arrow[j][l] >= 0)
            poset->set_compose(arrow[j][l], arrow[i][j], arrow[i][l]);
  poset->finalize();
  B.poset = std::move(poset);

  std::vector<int> omap(B.class_of_obj), mmap(c.num_morphisms());
  for (int m = 0; m < c.num_morphisms(); ++m)
    mmap[m] = arrow[B.class_of_obj[c.src(m)]][B.class_of_obj[c.dst(m)]];
  B.pi = FinFunctor(sA.cat, B.poset, std::move(omap), std::move(mmap));
  return B;
}

bool bar_posets_isomorphic(const BarSubdivision& bar,
                           const BarProjection& proj,
                           const SubdivisionCategory& sIA,
                           const LinkingSystem& L) {
  int n = static_cast<int>(bar.classes.size());
  if (n != static_cast<int>(proj.class_rep.size())) return false;
  std::vector<int> match(n, -1);
  for (int i = 0; i < n; ++i) {
    const SimplexChain& rep = bar.classes[i].representative;
    std::vector<int> vs, as;
    for (const auto& P : rep.entries) vs.push_back(L.obj_index(P));
    for (size_t t = 0; t + 1 < rep.entries.size(); ++t)
      as.push_back(L.mor_index(L.iota(rep.entries[t], rep.entries[t + 1])));
    match[i] = proj.class_of_obj[sIA.obj_index(vs, as)];
  }
  std::vector<int> seen(n, 0);
  for (int m : match)
    if (m < 0 || seen[m]++) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool a = !bar.poset->hom(i, j).empty();
      bool b = !proj.poset->hom(match[i], match[j]).empty();
      if (a != b) return false;
    }
  return true;
}

FinFunctor first_vertex_functor(const SubdivisionCategory& sA,
                                const HeightedEICategory& A) {
  const FinCategory& base = *A.cat;
  const FinCategory& c = *sA.cat;
  std::vector<int> omap(c.num_objects()), mmap(c.num_morphisms());
  for (int o = 0; o < c.num_objects(); ++o) omap[o] = sA.obj_vertices[o][0];
  for (int m = 0; m < c.num_morphisms(); ++m) {
    int src = c.src(m);
    const auto& [eps, phi] = sA.mor_data[m];
    int comp = base.identity_of(sA.obj_vertices[src][0]);
    for (int t = 0; t < eps[0]; ++t)
      comp = base.compose(sA.obj_arrows[src][t], comp);
    mmap[m] = base.compose(phi[0], comp);
  }
  return FinFunctor(sA.cat, A.cat, std::move(omap), std::move(mmap));
}

std::vector<std::pair<int, int>> phi_star(const SubdivisionCategory& sA,
                                          int psi) {
  const FinCategory& c = *sA.cat;
  int a = c.src(psi), b = c.dst(psi);
  std::vector<std::pair<int, int>> out;
  for (int alpha : c.hom(a, a)) {
    int lhs = c.compose(psi, alpha);
    int found = -1;
    for (int beta : c.hom(b, b))
      if (c.compose(beta, psi) == lhs) {
        if (found >= 0)
          throw CategoryError("phi_star: transported automorphism not unique");
        found = beta;
      }
    if (found < 0)
      throw CategoryError("phi_star: transported automorphism missing");
    out.emplace_back(alpha, found);
  }
  return out;
}

bool check_free_transitive(const FinCategory& cat) {
  for (int a = 0; a < cat.num_objects(); ++a)
    for (int b = 0; b < cat.num_objects(); ++b) {
      const auto& H = cat.hom(a, b);
      if (H.empty()) continue;
      const auto& auts = cat.hom(b, b);
      if (H.size() != auts.size()) return false;
      for (int beta : auts) {
        if (cat.is_identity(beta)) continue;
        for (int f : H)
          if (cat.compose(beta, f) == f) return false;
      }
    }
  return true;
}

}  // namespace plfg
