#pragma once

#include <map>
#include <string>
#include <vector>

#include "plfg/fincategory.hpp"
#include "plfg/fusion.hpp"

namespace plfg {

struct SquareDoesNotCommute : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A morphism P -> Q of the linking system: the coset rep*C'_G(P) with rep in
// the transporter N_G(P,Q) and C'_G(P) the p'-part of C_G(P).
struct LinkMorphism {
  Subgroup source;
  Subgroup target;
  int rep = 0;

  bool operator==(const LinkMorphism& o) const {
    return source == o.source && target == o.target && rep == o.rep;
  }
};

// L^C: full subcategory of the linking system of F on a centric collection,
// materialized as a FinCategory alongside the coset data.
class LinkingSystem {
 public:
  LinkingSystem(const FusionSystem& F, Collection C);

  const FusionSystem& fusion() const { return *F_; }
  const Collection& collection() const { return C_; }
  const std::vector<Subgroup>& objects() const { return C_.members; }
  const Subgroup& cprime(const Subgroup& P) const;  // C'_G(P)

  std::vector<LinkMorphism> hom(const Subgroup& P, const Subgroup& Q) const;
  LinkMorphism compose(const LinkMorphism& psi, const LinkMorphism& phi) const;
  LinkMorphism identity(const Subgroup& P) const;
  // delta_{P,Q}: g in N_G(P,Q) -> its coset; delta_P(g) = delta_{P,P}(g)
  LinkMorphism delta(const Subgroup& P, const Subgroup& Q, int g) const;
  // the projection pi: coarsen the C'_G(P)-coset to a C_G(P)-coset
  FusionMorphism project(const LinkMorphism& phi) const;
  // distinguished inclusion: coset of the identity element
  LinkMorphism iota(const Subgroup& P, const Subgroup& Q) const;
  // Aut_L(P) = N_G(P)/C'_G(P)
  QuotientGroup aut_l_group(const Subgroup& P) const;

  // materialized finite category (same data, positional morphisms)
  const CatPtr& category() const { return cat_; }
  int obj_index(const Subgroup& P) const;
  int mor_index(const LinkMorphism& phi) const;
  const LinkMorphism& mor_of(int idx) const { return mors_[idx]; }

 private:
  const FusionSystem* F_;
  Collection C_;
  std::map<std::vector<int>, Subgroup> cprime_;
  CatPtr cat_;
  std::vector<LinkMorphism> mors_;
  std::map<std::tuple<std::vector<int>, std::vector<int>, int>, int> mor_idx_;
};

struct AxiomReport {
  bool a_ok = true, b_ok = true, c_ok = true;
  std::string a_witness, b_witness, c_witness;
  bool ok() const { return a_ok && b_ok && c_ok; }
};

// Verifies axioms (A), (B), (C) against the given composition table (by
// default the system's own); a corrupted table yields a witness.
AxiomReport verify_axioms(const LinkingSystem& L);
AxiomReport verify_axioms(const LinkingSystem& L, const FinCategory& cat);

// iota coherence: iota_P^P = id, iota_Q^R ∘ iota_P^Q = iota_P^R, and
// pi(iota) = the inclusion morphism of the fusion system
bool check_iota_coherence(const LinkingSystem& L);

// phi = iota_{P'}^Q ∘ iso with P' = pi(phi)(P); recomposition asserted
struct LinkFactorization {
  LinkMorphism iso;
  LinkMorphism incl;
};
LinkFactorization factorize(const LinkingSystem& L, const LinkMorphism& phi);

// the unique f: P -> P' with iota ∘ f = g ∘ iota (Q-level g given);
// asserts uniqueness by scanning the hom-set
LinkMorphism restrict_lift(const LinkingSystem& L, const LinkMorphism& g,
                           const Subgroup& P, const Subgroup& Pp);

// exhaustive left/right cancellation scan
bool mono_epi_check(const FinCategory& cat);

}  // namespace plfg
