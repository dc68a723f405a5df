#include "plfg/linking.hpp"

#include <algorithm>
#include <set>

namespace plfg {

namespace {

std::string mor_str(const LinkMorphism& m) {
  std::string s = "rep " + std::to_string(m.rep) + ": {";
  for (int e : m.source.elems) s += std::to_string(e) + " ";
  s += "} -> {";
  for (int e : m.target.elems) s += std::to_string(e) + " ";
  return s + "}";
}

}  // namespace

LinkingSystem::LinkingSystem(const FusionSystem& F, Collection C)
    : F_(&F), C_(std::move(C)) {
  const FiniteGroup& G = F.group();
  int p = F.prime();
  for (const auto& P : C_.members)
    cprime_.emplace(P.elems, p_prime_part(centralizer(G, P), p));

  auto cat = std::make_shared<FinCategory>();
  for (const auto& P : C_.members) {
    std::string lbl;
    for (int e : P.elems) lbl += std::to_string(e) + " ";
    cat->add_object(lbl);
  }
  int nobj = static_cast<int>(C_.members.size());
  for (int i = 0; i < nobj; ++i)
    for (int j = 0; j < nobj; ++j) {
      const Subgroup& P = C_.members[i];
      const Subgroup& Q = C_.members[j];
      const Subgroup& Cp = cprime_.at(P.elems);
      std::set<int> reps;
      for (int g : transporter(G, P, Q))
        reps.insert(canonical_coset_rep(G, g, Cp));
      for (int r : reps) {
        int m = cat->add_morphism(i, j, std::to_string(r));
        mors_.push_back({P, Q, r});
        mor_idx_.emplace(std::make_tuple(P.elems, Q.elems, r), m);
        if (i == j && r == 0) cat->set_identity(i, m);
      }
    }
  for (int f = 0; f < static_cast<int>(mors_.size()); ++f)
    for (int g = 0; g < static_cast<int>(mors_.size()); ++g) {
      if (!(mors_[f].target == mors_[g].source)) continue;
      LinkMorphism comp = compose(mors_[g], mors_[f]);
      cat->set_compose(g, f,
                       mor_idx_.at(std::make_tuple(
                           comp.source.elems, comp.target.elems, comp.rep)));
    }
  cat->finalize();
  cat_ = std::move(cat);
}

const Subgroup& LinkingSystem::cprime(const Subgroup& P) const {
  auto it = cprime_.find(P.elems);
  if (it == cprime_.end()) throw NotASubgroup("cprime: not a collection member");
  return it->second;
}

std::vector<LinkMorphism> LinkingSystem::hom(const Subgroup& P,
                                             const Subgroup& Q) const {
  std::vector<LinkMorphism> out;
  for (const auto& m : mors_)
    if (m.source == P && m.target == Q) out.push_back(m);
  return out;
}

LinkMorphism LinkingSystem::compose(const LinkMorphism& psi,
                                    const LinkMorphism& phi) const {
  if (!(psi.source == phi.target))
    throw NotASubgroup("linking compose: not composable");
  const FiniteGroup& G = F_->group();
  int rep = G.mul(psi.rep, phi.rep);
  return {phi.source, psi.target,
          canonical_coset_rep(G, rep, cprime(phi.source))};
}

LinkMorphism LinkingSystem::identity(const Subgroup& P) const {
  return {P, P, 0};
}

LinkMorphism LinkingSystem::delta(const Subgroup& P, const Subgroup& Q,
                                  int g) const {
  const FiniteGroup& G = F_->group();
  if (!(conjugate_subgroup(G, g, P).proper_subgroup_of(Q) ||
        conjugate_subgroup(G, g, P) == Q))
    throw SquareDoesNotCommute("delta: rep not in the transporter");
  return {P, Q, canonical_coset_rep(G, g, cprime(P))};
}

FusionMorphism LinkingSystem::project(const LinkMorphism& phi) const {
  const FiniteGroup& G = F_->group();
  return {phi.source, phi.target,
          canonical_coset_rep(G, phi.rep, centralizer(G, phi.source))};
}

LinkMorphism LinkingSystem::iota(const Subgroup& P, const Subgroup& Q) const {
  if (!(P == Q) && !P.proper_subgroup_of(Q))
    throw NotASubgroup("iota: P not included in Q");
  return {P, Q, 0};
}

QuotientGroup LinkingSystem::aut_l_group(const Subgroup& P) const {
  const FiniteGroup& G = F_->group();
  return quotient_group(normalizer(G, P), cprime(P));
}

int LinkingSystem::obj_index(const Subgroup& P) const {
  auto it = std::lower_bound(C_.members.begin(), C_.members.end(), P);
  if (it == C_.members.end() || !(*it == P))
    throw NotASubgroup("obj_index: not a collection member");
  return static_cast<int>(it - C_.members.begin());
}

int LinkingSystem::mor_index(const LinkMorphism& phi) const {
  auto it = mor_idx_.find(
      std::make_tuple(phi.source.elems, phi.target.elems, phi.rep));
  if (it == mor_idx_.end())
    throw NotASubgroup("mor_index: unknown linking morphism");
  return it->second;
}

AxiomReport verify_axioms(const LinkingSystem& L) {
  return verify_axioms(L, *L.category());
}

AxiomReport verify_axioms(const LinkingSystem& L, const FinCategory& cat) {
  AxiomReport rep;
  const FusionSystem& F = L.fusion();
  const FiniteGroup& G = F.group();

  // (A): Z(P) acts freely on L(P,Q) by precomposition with delta_P, and the
  // orbit set is F(P,Q)
  for (const auto& P : L.objects()) {
    Subgroup Z = center(P);
    int zP = L.obj_index(P);
    for (const auto& Q : L.objects()) {
      int zQ = L.obj_index(Q);
      const auto& homPQ = cat.hom(zP, zQ);
      for (int z : Z.elems) {
        if (z == 0) continue;
        int dz = L.mor_index(L.delta(P, P, z));
        for (int f : homPQ) {
          if (cat.compose(f, dz) == f) {
            rep.a_ok = false;
            rep.a_witness = "Z-action fixes a morphism at " +
                            mor_str(L.mor_of(f));
            break;
          }
        }
        if (!rep.a_ok) break;
      }
      // orbit count: |L(P,Q)| = |F(P,Q)| * |Z(P)|
      size_t fsize = F.hom(P, Q).size();
      if (homPQ.size() != fsize * Z.elems.size()) {
        rep.a_ok = false;
        rep.a_witness = "orbit count mismatch on a hom-set";
      }
      // pi fibers are exactly the Z(P)-orbits
      for (int f : homPQ) {
        auto pf = L.project(L.mor_of(f));
        for (int z : Z.elems) {
          int zf = cat.compose(f, L.mor_index(L.delta(P, P, z)));
          auto pzf = L.project(L.mor_of(zf));
          if (!(pf == pzf)) {
            rep.a_ok = false;
            rep.a_witness = "pi not constant on a Z-orbit";
          }
        }
      }
    }
  }

  // (B): pi(delta_P(g)) = c_g for g in P
  for (const auto& P : L.objects()) {
    Subgroup C = centralizer(G, P);
    for (int g : P.elems) {
      auto proj = L.project(L.delta(P, P, g));
      if (proj.rep != canonical_coset_rep(G, g, C)) {
        rep.b_ok = false;
        rep.b_witness = "pi(delta(g)) != c_g at g=" + std::to_string(g);
      }
    }
  }

  // (C): f ∘ delta_P(g) = delta_Q(pi(f)(g)) ∘ f for all f: P->Q, g in P
  for (const auto& P : L.objects()) {
    int zP = L.obj_index(P);
    for (const auto& Q : L.objects()) {
      int zQ = L.obj_index(Q);
      for (int f : cat.hom(zP, zQ)) {
        const LinkMorphism& fm = L.mor_of(f);
        for (int g : P.elems) {
          int lhs = cat.compose(f, L.mor_index(L.delta(P, P, g)));
          int img = G.conj(fm.rep, g);  // pi(f)(g)
          int rhs = cat.compose(L.mor_index(L.delta(Q, Q, img)), f);
          if (lhs != rhs) {
            rep.c_ok = false;
            rep.c_witness = "axiom C fails at " + mor_str(fm) +
                            " with g=" + std::to_string(g);
            return rep;
          }
        }
      }
    }
  }
  return rep;
}

bool check_iota_coherence(const LinkingSystem& L) {
  const auto& objs = L.objects();
  for (const auto& P : objs) {
    if (!(L.iota(P, P) == L.identity(P))) return false;
    for (const auto& Q : objs) {
      if (!(P == Q) && !P.proper_subgroup_of(Q)) continue;
      // pi(iota) is the inclusion: the identity coset of C_G(P)
      if (L.project(L.iota(P, Q)).rep != 0) return false;
      for (const auto& R : objs) {
        if (!(Q == R) && !Q.proper_subgroup_of(R)) continue;
        if (!(L.compose(L.iota(Q, R), L.iota(P, Q)) == L.iota(P, R)))
          return false;
      }
    }
  }
  return true;
}

LinkFactorization factorize(const LinkingSystem& L, const LinkMorphism& phi) {
  const FiniteGroup& G = L.fusion().group();
  Subgroup img = conjugate_subgroup(G, phi.rep, phi.source);
  LinkMorphism iso{phi.source, img, phi.rep};
  LinkMorphism incl = L.iota(img, phi.target);
  if (!(L.compose(incl, iso) == phi))
    throw SquareDoesNotCommute("factorize: recomposition mismatch");
  return {iso, incl};
}

LinkMorphism restrict_lift(const LinkingSystem& L, const LinkMorphism& g,
                           const Subgroup& P, const Subgroup& Pp) {
  const FiniteGroup& G = L.fusion().group();
  if (!(P == g.source) && !P.proper_subgroup_of(g.source))
    throw SquareDoesNotCommute("restrict_lift: P not inside the source");
  if (!(Pp == g.target) && !Pp.proper_subgroup_of(g.target))
    throw SquareDoesNotCommute("restrict_lift: P' not inside the target");
  Subgroup img = conjugate_subgroup(G, g.rep, P);
  if (!(img == Pp) && !img.proper_subgroup_of(Pp))
    throw SquareDoesNotCommute("restrict_lift: pi(g)(P) not inside P'");
  LinkMorphism f{P, Pp, canonical_coset_rep(G, g.rep, L.cprime(P))};
  // uniqueness scan: f is the only solution of iota ∘ f = g ∘ iota
  LinkMorphism rhs = L.compose(g, L.iota(P, g.source));
  int solutions = 0;
  for (const auto& cand : L.hom(P, Pp))
    if (L.compose(L.iota(Pp, g.target), cand) == rhs) ++solutions;
  if (solutions != 1 || !(L.compose(L.iota(Pp, g.target), f) == rhs))
    throw SquareDoesNotCommute("restrict_lift: lift not unique");
  return f;
}

bool mono_epi_check(const FinCategory& cat) {
  int n = cat.num_objects();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const auto& gs = cat.hom(a, b);
      for (size_t i = 0; i < gs.size(); ++i)
        for (size_t j = i + 1; j < gs.size(); ++j) {
          // monomorphism: f∘g_i = f∘g_j implies g_i = g_j
          for (int c = 0; c < n; ++c)
            for (int f : cat.hom(b, c))
              if (cat.compose(f, gs[i]) == cat.compose(f, gs[j])) return false;
          // epimorphism: g_i∘h = g_j∘h implies g_i = g_j
          for (int c = 0; c < n; ++c)
            for (int h : cat.hom(c, a))
              if (cat.compose(gs[i], h) == cat.compose(gs[j], h)) return false;
        }
    }
  return true;
}

}  // namespace plfg
