#include "plfg/fincategory.hpp"

#include <algorithm>

namespace plfg {

int FinCategory::add_object(std::string label) {
  if (finalized_) throw CategoryError("add_object after finalize");
  obj_label_.push_back(std::move(label));
  identity_.push_back(-1);
  return nobj_++;
}

int FinCategory::add_morphism(int src, int dst, std::string label) {
  if (finalized_) throw CategoryError("add_morphism after finalize");
  if (src < 0 || src >= nobj_ || dst < 0 || dst >= nobj_)
    throw CategoryError("morphism endpoint out of range");
  mors_.push_back({src, dst});
  mor_label_.push_back(std::move(label));
  return static_cast<int>(mors_.size()) - 1;
}

void FinCategory::set_identity(int obj, int mor) {
  if (mors_[mor].src != obj || mors_[mor].dst != obj)
    throw CategoryError("identity must be an endomorphism of its object");
  identity_[obj] = mor;
}

int FinCategory::add_identity(int obj, std::string label) {
  int m = add_morphism(obj, obj, std::move(label));
  set_identity(obj, m);
  return m;
}

void FinCategory::set_compose(int g, int f, int gf) {
  if (finalized_) throw CategoryError("set_compose after finalize");
  if (mors_[f].dst != mors_[g].src)
    throw CategoryError("set_compose: domains do not match");
  if (mors_[gf].src != mors_[f].src || mors_[gf].dst != mors_[g].dst)
    throw CategoryError("set_compose: composite has wrong endpoints");
  auto [it, inserted] = comp_.emplace(key(g, f), gf);
  if (!inserted && it->second != gf)
    throw CategoryError("set_compose: conflicting composite");
}

int FinCategory::compose(int g, int f) const {
  auto it = comp_.find(key(g, f));
  if (it == comp_.end()) throw CategoryError("compose: pair not composable");
  return it->second;
}

bool FinCategory::has_compose(int g, int f) const {
  return comp_.count(key(g, f)) != 0;
}

const std::vector<int>& FinCategory::hom(int a, int b) const {
  if (!finalized_) throw CategoryError("hom before finalize");
  return hom_[a][b];
}

int FinCategory::inverse_of(int m) const {
  int a = mors_[m].src, b = mors_[m].dst;
  for (int n : hom(b, a))
    if (compose(n, m) == identity_[a] && compose(m, n) == identity_[b])
      return n;
  return -1;
}

void FinCategory::finalize(long assoc_budget) {
  if (finalized_) return;
  for (int o = 0; o < nobj_; ++o)
    if (identity_[o] < 0) throw CategoryError("object without identity");

  // identity compositions are implied; fill them in so constructions need
  // not spell them out, and reject explicit entries that disagree
  int nm = num_morphisms();
  for (int m = 0; m < nm; ++m) {
    auto [it1, ins1] = comp_.emplace(key(identity_[mors_[m].dst], m), m);
    if (!ins1 && it1->second != m)
      throw CategoryError("identity not left-neutral");
    auto [it2, ins2] = comp_.emplace(key(m, identity_[mors_[m].src]), m);
    if (!ins2 && it2->second != m)
      throw CategoryError("identity not right-neutral");
  }

  hom_.assign(nobj_, std::vector<std::vector<int>>(nobj_));
  for (int m = 0; m < nm; ++m) hom_[mors_[m].src][mors_[m].dst].push_back(m);

  // the compose table must be defined on exactly the matching pairs
  for (const auto& [k, gf] : comp_) {
    int g = static_cast<int>(k >> 32), f = static_cast<int>(k & 0xffffffffu);
    if (mors_[f].dst != mors_[g].src)
      throw CategoryError("compose entry on non-composable pair");
    (void)gf;
  }
  long pairs = 0;
  for (int a = 0; a < nobj_; ++a)
    for (int b = 0; b < nobj_; ++b)
      for (int f : hom_[a][b])
        for (int c = 0; c < nobj_; ++c)
          for (int g : hom_[b][c]) {
            ++pairs;
            if (!comp_.count(key(g, f)))
              throw CategoryError("compose table not total");
          }

  // associativity: h∘(g∘f) == (h∘g)∘f; exhaustive while within budget,
  // then deterministic stride sampling
  long checked = 0;
  long stride = 1;
  // crude estimate of triple count to pick a stride
  double est_triples = 0;
  for (int a = 0; a < nobj_; ++a)
    for (int b = 0; b < nobj_; ++b) {
      long ab = static_cast<long>(hom_[a][b].size());
      if (!ab) continue;
      for (int c = 0; c < nobj_; ++c) {
        long bc = static_cast<long>(hom_[b][c].size());
        if (!bc) continue;
        for (int d = 0; d < nobj_; ++d)
          est_triples += static_cast<double>(ab) * bc * hom_[c][d].size();
      }
    }
  if (est_triples > static_cast<double>(assoc_budget))
    stride = static_cast<long>(est_triples / assoc_budget) + 1;
  long counter = 0;
  for (int f = 0; f < nm; ++f) {
    int b = mors_[f].dst;
    for (int c = 0; c < nobj_; ++c)
      for (int g : hom_[b][c])
        for (int d = 0; d < nobj_; ++d)
          for (int h : hom_[c][d]) {
            if (counter++ % stride) continue;
            if (compose(h, compose(g, f)) != compose(compose(h, g), f))
              throw CategoryError("composition not associative");
            ++checked;
          }
  }
  (void)checked;
  (void)pairs;
  finalized_ = true;
}

FinFunctor::FinFunctor(CatPtr src, CatPtr dst, std::vector<int> omap,
                       std::vector<int> mmap, long budget)
    : source(std::move(src)),
      target(std::move(dst)),
      obj_map(std::move(omap)),
      mor_map(std::move(mmap)) {
  const FinCategory& S = *source;
  const FinCategory& T = *target;
  if (static_cast<int>(obj_map.size()) != S.num_objects() ||
      static_cast<int>(mor_map.size()) != S.num_morphisms())
    throw CategoryError("functor: map size mismatch");
  for (int m = 0; m < S.num_morphisms(); ++m) {
    int fm = mor_map[m];
    if (T.src(fm) != obj_map[S.src(m)] || T.dst(fm) != obj_map[S.dst(m)])
      throw CategoryError("functor: endpoint mismatch");
  }
  for (int o = 0; o < S.num_objects(); ++o)
    if (mor_map[S.identity_of(o)] != T.identity_of(obj_map[o]))
      throw CategoryError("functor: identity not preserved");
  long counter = 0;
  long stride = 1;
  double est = 0;
  for (int a = 0; a < S.num_objects(); ++a)
    for (int b = 0; b < S.num_objects(); ++b) {
      long ab = static_cast<long>(S.hom(a, b).size());
      if (!ab) continue;
      for (int c = 0; c < S.num_objects(); ++c)
        est += static_cast<double>(ab) * S.hom(b, c).size();
    }
  if (est > static_cast<double>(budget))
    stride = static_cast<long>(est / budget) + 1;
  for (int a = 0; a < S.num_objects(); ++a)
    for (int b = 0; b < S.num_objects(); ++b)
      for (int f : S.hom(a, b))
        for (int c = 0; c < S.num_objects(); ++c)
          for (int g : S.hom(b, c)) {
            if (counter++ % stride) continue;
            if (mor_map[S.compose(g, f)] !=
                T.compose(mor_map[g], mor_map[f]))
              throw CategoryError("functor: composition not preserved");
          }
}

FinFunctor FinFunctor::identity(CatPtr c) {
  std::vector<int> omap(c->num_objects()), mmap(c->num_morphisms());
  for (size_t i = 0; i < omap.size(); ++i) omap[i] = static_cast<int>(i);
  for (size_t i = 0; i < mmap.size(); ++i) mmap[i] = static_cast<int>(i);
  return FinFunctor(c, c, std::move(omap), std::move(mmap));
}

FinFunctor compose(const FinFunctor& g, const FinFunctor& f) {
  if (g.source.get() != f.target.get())
    throw CategoryError("functor composition: middle category mismatch");
  std::vector<int> omap(f.obj_map.size()), mmap(f.mor_map.size());
  for (size_t i = 0; i < omap.size(); ++i) omap[i] = g.obj_map[f.obj_map[i]];
  for (size_t i = 0; i < mmap.size(); ++i) mmap[i] = g.mor_map[f.mor_map[i]];
  return FinFunctor(f.source, g.target, std::move(omap), std::move(mmap));
}

bool functors_equal(const FinFunctor& a, const FinFunctor& b) {
  return a.source.get() == b.source.get() &&
         a.target.get() == b.target.get() && a.obj_map == b.obj_map &&
         a.mor_map == b.mor_map;
}

CatPtr opposite(const CatPtr& c) {
  auto op = std::make_shared<FinCategory>();
  for (int o = 0; o < c->num_objects(); ++o) op->add_object(c->obj_label(o));
  for (int m = 0; m < c->num_morphisms(); ++m)
    op->add_morphism(c->dst(m), c->src(m), c->mor_label(m));
  for (int o = 0; o < c->num_objects(); ++o)
    op->set_identity(o, c->identity_of(o));
  for (int a = 0; a < c->num_objects(); ++a)
    for (int b = 0; b < c->num_objects(); ++b)
      for (int f : c->hom(a, b))
        for (int cc = 0; cc < c->num_objects(); ++cc)
          for (int g : c->hom(b, cc))
            op->set_compose(f, g, c->compose(g, f));
  op->finalize();
  return op;
}

void CatDiagram::validate(long budget) const {
  const FinCategory& K = *base;
  if (static_cast<int>(value.size()) != K.num_objects() ||
      static_cast<int>(action.size()) != K.num_morphisms())
    throw CategoryError("diagram: size mismatch");
  for (int m = 0; m < K.num_morphisms(); ++m) {
    if (action[m].source.get() != value[K.src(m)].get() ||
        action[m].target.get() != value[K.dst(m)].get())
      throw CategoryError("diagram: action endpoints mismatch");
  }
  for (int o = 0; o < K.num_objects(); ++o)
    if (!functors_equal(action[K.identity_of(o)],
                        FinFunctor::identity(value[o])))
      throw CategoryError("diagram: identity not sent to identity");
  long counter = 0;
  (void)budget;
  for (int a = 0; a < K.num_objects(); ++a)
    for (int b = 0; b < K.num_objects(); ++b)
      for (int f : K.hom(a, b))
        for (int c = 0; c < K.num_objects(); ++c)
          for (int g : K.hom(b, c)) {
            ++counter;
            if (!functors_equal(action[K.compose(g, f)],
                                plfg::compose(action[g], action[f])))
              throw CategoryError("diagram: not functorial");
          }
  (void)counter;
}

CatDiagram constant_point_diagram(CatPtr base) {
  auto pt = std::make_shared<FinCategory>();
  int o = pt->add_object("*");
  pt->add_identity(o, "id");
  pt->finalize();
  CatDiagram D;
  D.base = std::move(base);
  D.value.assign(D.base->num_objects(), pt);
  FinFunctor idpt = FinFunctor::identity(pt);
  D.action.assign(D.base->num_morphisms(), idpt);
  return D;
}

bool natural_transformation_valid(const FinFunctor& F, const FinFunctor& G,
                                  const NatTrans& t) {
  if (F.source.get() != G.source.get() || F.target.get() != G.target.get())
    return false;
  const FinCategory& S = *F.source;
  const FinCategory& T = *F.target;
  if (static_cast<int>(t.comp.size()) != S.num_objects()) return false;
  for (int o = 0; o < S.num_objects(); ++o) {
    int c = t.comp[o];
    if (T.src(c) != F.obj_map[o] || T.dst(c) != G.obj_map[o]) return false;
  }
  for (int m = 0; m < S.num_morphisms(); ++m) {
    int a = S.src(m), b = S.dst(m);
    if (T.compose(t.comp[b], F.mor_map[m]) !=
        T.compose(G.mor_map[m], t.comp[a]))
      return false;
  }
  return true;
}

}  // namespace plfg
