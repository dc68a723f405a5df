#include "plfg/fusion.hpp"

#include <algorithm>
#include <set>

namespace plfg {

namespace {

std::string subgroup_str(const Subgroup& P) {
  std::string s = "{";
  for (size_t i = 0; i < P.elems.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(P.elems[i]);
  }
  return s + "}";
}

}  // namespace

FusionSystem::FusionSystem(const FiniteGroup& G, int p) : G_(&G), p_(p) {
  if (!is_prime(p)) throw std::invalid_argument("fusion system needs a prime");
  S_ = sylow(G, p);
  subs_ = all_subgroups_of(S_);
}

const std::vector<FusionMorphism>& FusionSystem::hom(const Subgroup& P,
                                                     const Subgroup& Q) const {
  if (!S_.contains(P) || !S_.contains(Q))
    throw NotASubgroup("hom: arguments must lie in the Sylow subgroup");
  std::lock_guard<std::mutex> lk(mu_);
  auto key = std::make_pair(P.elems, Q.elems);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  Subgroup C = centralizer(*G_, P);
  std::set<int> reps;
  for (int g : transporter(*G_, P, Q))
    reps.insert(canonical_coset_rep(*G_, g, C));
  std::vector<FusionMorphism> out;
  out.reserve(reps.size());
  for (int r : reps) out.push_back({P, Q, r});
  return cache_.emplace(std::move(key), std::move(out)).first->second;
}

std::vector<FusionMorphism> FusionSystem::isos(const Subgroup& P,
                                               const Subgroup& Q) const {
  std::vector<FusionMorphism> out;
  if (P.order() != Q.order()) return out;
  for (const auto& phi : hom(P, Q))
    if (conjugate_subgroup(*G_, phi.rep, P) == Q) out.push_back(phi);
  return out;
}

std::vector<ElemMap> FusionSystem::hom_maps(const Subgroup& P,
                                            const Subgroup& Q) const {
  std::vector<ElemMap> out;
  for (const auto& phi : hom(P, Q)) out.push_back(elem_map_of(*G_, P, phi.rep));
  return out;
}

ElemMap elem_map_of(const FiniteGroup& G, const Subgroup& P, int g) {
  ElemMap m(P.elems.size());
  for (size_t i = 0; i < P.elems.size(); ++i) m[i] = G.conj(g, P.elems[i]);
  return m;
}

Subgroup image_of(const FusionMorphism& phi) {
  return conjugate_subgroup(*phi.source.ambient, phi.rep, phi.source);
}

FusionMorphism compose(const FusionSystem& F, const FusionMorphism& psi,
                       const FusionMorphism& phi) {
  const FiniteGroup& G = F.group();
  if (!(psi.source == phi.target))
    throw NotASubgroup("compose: morphisms not composable");
  int rep = G.mul(psi.rep, phi.rep);
  Subgroup C = centralizer(G, phi.source);
  return {phi.source, psi.target, canonical_coset_rep(G, rep, C)};
}

FusionMorphism identity_morphism(const FusionSystem& F, const Subgroup& P) {
  (void)F;
  return {P, P, 0};
}

FusionMorphism restrict_morphism(const FusionSystem& F,
                                 const FusionMorphism& phi, const Subgroup& R) {
  const FiniteGroup& G = F.group();
  if (!phi.source.contains(R))
    throw NotASubgroup("restrict: R not inside the source");
  Subgroup C = centralizer(G, R);
  return {R, phi.target, canonical_coset_rep(G, phi.rep, C)};
}

bool f_conjugate(const FusionSystem& F, const Subgroup& P, const Subgroup& Q) {
  if (P.order() != Q.order()) return false;
  const FiniteGroup& G = F.group();
  for (int g = 0; g < G.order(); ++g)
    if (conjugate_subgroup(G, g, P) == Q) return true;
  return false;
}

std::vector<Subgroup> f_class(const FusionSystem& F, const Subgroup& P) {
  std::vector<Subgroup> out;
  for (const auto& Q : F.subgroups_of_s())
    if (f_conjugate(F, P, Q)) out.push_back(Q);
  return out;
}

std::vector<std::vector<Subgroup>> f_conjugacy_classes(
    const FusionSystem& F, const std::vector<Subgroup>& members) {
  std::vector<Subgroup> sorted = members;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::vector<Subgroup>> classes;
  std::vector<bool> used(sorted.size(), false);
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (used[i]) continue;
    std::vector<Subgroup> cls{sorted[i]};
    used[i] = true;
    for (size_t j = i + 1; j < sorted.size(); ++j)
      if (!used[j] && f_conjugate(F, sorted[i], sorted[j])) {
        cls.push_back(sorted[j]);
        used[j] = true;
      }
    classes.push_back(std::move(cls));
  }
  return classes;
}

bool is_fully_centralised(const FusionSystem& F, const Subgroup& P) {
  const FiniteGroup& G = F.group();
  const Subgroup& S = F.sylow_subgroup();
  int mine = intersect(centralizer(G, P), S).order();
  for (const auto& Q : f_class(F, P))
    if (intersect(centralizer(G, Q), S).order() > mine) return false;
  return true;
}

bool is_fully_normalised(const FusionSystem& F, const Subgroup& P) {
  const FiniteGroup& G = F.group();
  const Subgroup& S = F.sylow_subgroup();
  int mine = intersect(normalizer(G, P), S).order();
  for (const auto& Q : f_class(F, P))
    if (intersect(normalizer(G, Q), S).order() > mine) return false;
  return true;
}

Subgroup n_phi(const FusionSystem& F, const FusionMorphism& phi) {
  const FiniteGroup& G = F.group();
  const Subgroup& S = F.sylow_subgroup();
  Subgroup P = phi.source;
  Subgroup fP = image_of(phi);
  Subgroup NSP = intersect(normalizer(G, P), S);
  Subgroup NSfP = intersect(normalizer(G, fP), S);
  Subgroup CfP = centralizer(G, fP);
  std::vector<bool> in_autS(G.order(), false);
  for (int s : NSfP.elems)
    for (int c : CfP.elems) in_autS[G.mul(s, c)] = true;
  Subgroup out;
  out.ambient = &G;
  for (int g : NSP.elems)
    if (in_autS[G.conj(phi.rep, g)]) out.elems.push_back(g);
  std::sort(out.elems.begin(), out.elems.end());
  return out;
}

SaturationReport check_saturation(const FusionView& view) {
  SaturationReport rep;
  const FiniteGroup& G = view.group();
  int p = view.prime();
  const Subgroup& S = view.sylow_subgroup();
  auto subs = all_subgroups_of(S);

  auto image_set = [&](const ElemMap& m) {
    std::vector<int> img(m);
    std::sort(img.begin(), img.end());
    return img;
  };
  auto is_iso_to = [&](const Subgroup& P, const Subgroup& Q) {
    if (P.order() != Q.order()) return false;
    for (const auto& m : view.hom_maps(P, Q))
      if (image_set(m) == Q.elems) return true;
    return false;
  };
  auto fclass_of = [&](const Subgroup& P) {
    std::vector<Subgroup> cls;
    for (const auto& Q : subs)
      if (Q == P || is_iso_to(P, Q)) cls.push_back(Q);
    return cls;
  };
  auto cs_order = [&](const Subgroup& P) {
    return intersect(centralizer(G, P), S).order();
  };
  auto ns = [&](const Subgroup& P) { return intersect(normalizer(G, P), S); };

  // Axiom I
  for (const auto& P : subs) {
    auto cls = fclass_of(P);
    int nsP = ns(P).order();
    bool fully_norm = true;
    for (const auto& Q : cls)
      if (ns(Q).order() > nsP) fully_norm = false;
    if (!fully_norm) continue;
    int csP = cs_order(P);
    for (const auto& Q : cls)
      if (cs_order(Q) > csP) {
        rep.axiom_i_witnesses.push_back(
            "fully normalised " + subgroup_str(P) +
            " is not fully centralised (beaten by " + subgroup_str(Q) + ")");
        break;
      }
    // Aut_S(P) must sit in Aut_F(P) with index prime to p
    auto autF = view.hom_maps(P, P);
    std::set<ElemMap> autFset(autF.begin(), autF.end());
    std::set<ElemMap> autS;
    for (int s : ns(P).elems) autS.insert(elem_map_of(G, P, s));
    bool contained = true;
    for (const auto& m : autS)
      if (!autFset.count(m)) contained = false;
    if (!contained) {
      rep.axiom_i_witnesses.push_back("Aut_S not inside Aut_F for " +
                                      subgroup_str(P));
      continue;
    }
    if (autS.empty() || autFset.size() % autS.size() != 0 ||
        (autFset.size() / autS.size()) % p == 0) {
      rep.axiom_i_witnesses.push_back(
          "Aut_S(P) not Sylow in Aut_F(P) for P=" + subgroup_str(P) + " (" +
          std::to_string(autS.size()) + " in " +
          std::to_string(autFset.size()) + ")");
    }
  }

  // Axiom II
  for (const auto& P : subs) {
    for (const auto& phi : view.hom_maps(P, S)) {
      std::vector<int> img = image_set(phi);
      Subgroup fP;
      fP.ambient = &G;
      fP.elems = img;
      // fully centralised image?
      int csf = cs_order(fP);
      bool fc = true;
      for (const auto& Q : fclass_of(fP))
        if (cs_order(Q) > csf) fc = false;
      if (!fc) continue;
      // N_phi by elementwise test
      std::vector<int> phi_of(G.order(), -1);
      for (size_t i = 0; i < P.elems.size(); ++i) phi_of[P.elems[i]] = phi[i];
      Subgroup NSfP = ns(fP);
      std::set<ElemMap> autSfP;
      for (int s : NSfP.elems) autSfP.insert(elem_map_of(G, fP, s));
      std::vector<int> nphi_elems;
      for (int g : ns(P).elems) {
        // the map y -> phi(g phi^-1(y) g^-1) on fP
        ElemMap m(fP.elems.size());
        bool def = true;
        for (size_t i = 0; i < fP.elems.size(); ++i) {
          // phi^-1(y): find x in P with phi_of[x] = y
          int x = -1;
          for (int e : P.elems)
            if (phi_of[e] == fP.elems[i]) x = e;
          if (x < 0) {
            def = false;
            break;
          }
          m[i] = phi_of[G.conj(g, x)];
          if (m[i] < 0) def = false;
        }
        if (def && autSfP.count(m)) nphi_elems.push_back(g);
      }
      // nphi_elems should form a subgroup containing P
      Subgroup Nphi;
      Nphi.ambient = &G;
      Nphi.elems = nphi_elems;
      std::sort(Nphi.elems.begin(), Nphi.elems.end());
      bool closed = true;
      for (int a : Nphi.elems)
        for (int b : Nphi.elems)
          if (!Nphi.contains(G.mul(a, b))) closed = false;
      if (!closed) {
        rep.axiom_ii_witnesses.push_back("N_phi not closed for P=" +
                                         subgroup_str(P));
        continue;
      }
      // extension search
      bool extended = false;
      for (const auto& psi : view.hom_maps(Nphi, S)) {
        std::vector<int> psi_of(G.order(), -1);
        for (size_t i = 0; i < Nphi.elems.size(); ++i)
          psi_of[Nphi.elems[i]] = psi[i];
        bool restricts = true;
        for (int x : P.elems)
          if (psi_of[x] != phi_of[x]) restricts = false;
        if (restricts) {
          extended = true;
          break;
        }
      }
      if (!extended)
        rep.axiom_ii_witnesses.push_back(
            "no extension to N_phi for a morphism from P=" + subgroup_str(P));
    }
  }
  rep.ok = rep.axiom_i_witnesses.empty() && rep.axiom_ii_witnesses.empty();
  return rep;
}

bool is_centric(const FusionSystem& F, const Subgroup& P) {
  const FiniteGroup& G = F.group();
  const Subgroup& S = F.sylow_subgroup();
  for (const auto& Q : f_class(F, P))
    if (!(intersect(centralizer(G, Q), S) == center(Q))) return false;
  return true;
}

bool is_radical(const FusionSystem& F, const Subgroup& P) {
  const FiniteGroup& G = F.group();
  Subgroup N = normalizer(G, P);
  std::vector<int> gens = P.elems;
  for (int c : centralizer(G, P).elems) gens.push_back(c);
  Subgroup K = subgroup_generated_by(G, gens);  // P * C_G(P)
  QuotientGroup out = quotient_group(N, K);
  int p = F.prime();
  for (const auto& H : all_subgroups(out.group)) {
    if (H.order() == 1 || p_part(H.order(), p) != H.order()) continue;
    bool normal = true;
    for (int g = 0; g < out.group.order() && normal; ++g)
      for (int h : H.elems)
        if (!H.contains(out.group.conj(g, h))) {
          normal = false;
          break;
        }
    if (normal) return false;
  }
  return true;
}

bool Collection::contains(const Subgroup& P) const {
  return std::binary_search(members.begin(), members.end(), P);
}

Collection build_collection(const FusionSystem& F, CollectionKind kind,
                            const std::vector<Subgroup>& custom) {
  Collection col;
  col.kind = kind;
  if (!custom.empty()) {
    std::set<Subgroup> closure;
    for (const auto& P : custom)
      for (const auto& Q : f_class(F, P)) closure.insert(Q);
    col.members.assign(closure.begin(), closure.end());
    if (kind == CollectionKind::Centric ||
        kind == CollectionKind::CentricRadical) {
      for (const auto& P : col.members) {
        if (!is_centric(F, P))
          throw NotCentric("collection member is not centric");
        if (kind == CollectionKind::CentricRadical && !is_radical(F, P))
          throw NotCentric("collection member is not radical");
      }
    }
  } else {
    switch (kind) {
      case CollectionKind::Centric:
      case CollectionKind::CentricRadical:
        for (const auto& P : F.subgroups_of_s())
          if (is_centric(F, P) &&
              (kind == CollectionKind::Centric || is_radical(F, P)))
            col.members.push_back(P);
        break;
      case CollectionKind::ElementaryAbelian:
        col.members = elementary_abelian_subgroups(F.sylow_subgroup(),
                                                   F.prime(), false);
        break;
      case CollectionKind::Custom:
        break;
    }
    std::sort(col.members.begin(), col.members.end());
  }
  return col;
}

std::vector<FusionMorphism> aut_f_chain(const FusionSystem& F,
                                        const std::vector<Subgroup>& chain) {
  if (chain.empty()) throw NotASubgroup("aut_f_chain: empty chain");
  for (size_t i = 0; i + 1 < chain.size(); ++i)
    if (!chain[i].proper_subgroup_of(chain[i + 1]))
      throw NotASubgroup("aut_f_chain: not a strictly increasing chain");
  const FiniteGroup& G = F.group();
  const Subgroup& Ek = chain.back();
  std::vector<FusionMorphism> out;
  for (const auto& phi : F.isos(Ek, Ek)) {
    bool keeps = true;
    for (const auto& Ei : chain)
      if (!(conjugate_subgroup(G, phi.rep, Ei) == Ei)) keeps = false;
    if (keeps) out.push_back(phi);
  }
  return out;
}

AutGroup automorphism_group(const FusionSystem& F, const Subgroup& P,
                            std::vector<FusionMorphism> auts) {
  const FiniteGroup& G = F.group();
  std::sort(auts.begin(), auts.end(),
            [](const FusionMorphism& a, const FusionMorphism& b) {
              return a.rep < b.rep;
            });
  if (auts.empty() || auts.front().rep != canonical_coset_rep(
                                              G, 0, centralizer(G, P)))
    throw NotASubgroup("automorphism_group: identity missing");
  Subgroup C = centralizer(G, P);
  int m = static_cast<int>(auts.size());
  std::vector<int> table(static_cast<size_t>(m) * m, -1);
  auto index_of = [&](int rep) {
    for (int i = 0; i < m; ++i)
      if (auts[i].rep == rep) return i;
    return -1;
  };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int r = canonical_coset_rep(G, G.mul(auts[i].rep, auts[j].rep), C);
      int k = index_of(r);
      if (k < 0)
        throw NotASubgroup("automorphism_group: set not closed");
      table[static_cast<size_t>(i) * m + j] = k;
    }
  return AutGroup{FiniteGroup(std::move(table), m), std::move(auts)};
}

QuotientGroup aut_f_group(const FusionSystem& F, const Subgroup& P) {
  const FiniteGroup& G = F.group();
  return quotient_group(normalizer(G, P), centralizer(G, P));
}

}  // namespace plfg
