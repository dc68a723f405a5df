#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "plfg/groupcore.hpp"

namespace plfg {

struct NotCentric : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A conjugation morphism P -> Q: the coset rep*C_G(P) with rep in the
// transporter N_G(P,Q), rep canonical (minimal in its coset).
struct FusionMorphism {
  Subgroup source;
  Subgroup target;
  int rep = 0;

  bool operator==(const FusionMorphism& o) const {
    return source == o.source && target == o.target && rep == o.rep;
  }
};

// Element map of a morphism: img[i] = image of source.elems[i] in the
// ambient group.
using ElemMap = std::vector<int>;

// Abstract morphism-table view used by the saturation checker, so the
// checker works identically on the honest group-induced table and on
// mutated fixtures.
class FusionView {
 public:
  virtual ~FusionView() = default;
  virtual const FiniteGroup& group() const = 0;
  virtual int prime() const = 0;
  virtual const Subgroup& sylow_subgroup() const = 0;
  // all morphisms P -> Q as element maps, deterministic order
  virtual std::vector<ElemMap> hom_maps(const Subgroup& P,
                                        const Subgroup& Q) const = 0;
};

class FusionSystem : public FusionView {
 public:
  FusionSystem(const FiniteGroup& G, int p);

  const FiniteGroup& group() const override { return *G_; }
  int prime() const override { return p_; }
  const Subgroup& sylow_subgroup() const override { return S_; }

  // N_G(P,Q)/C_G(P), one morphism per coset, sorted by canonical rep
  const std::vector<FusionMorphism>& hom(const Subgroup& P,
                                         const Subgroup& Q) const;
  std::vector<FusionMorphism> isos(const Subgroup& P, const Subgroup& Q) const;
  std::vector<ElemMap> hom_maps(const Subgroup& P,
                                const Subgroup& Q) const override;

  // all subgroups of S, cached
  const std::vector<Subgroup>& subgroups_of_s() const { return subs_; }

 private:
  const FiniteGroup* G_;
  int p_;
  Subgroup S_;
  std::vector<Subgroup> subs_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<std::vector<int>, std::vector<int>>,
                   std::vector<FusionMorphism>>
      cache_;
};

ElemMap elem_map_of(const FiniteGroup& G, const Subgroup& P, int g);
Subgroup image_of(const FusionMorphism& phi);
// composite psi∘phi as a fusion morphism (coset rep canonicalized)
FusionMorphism compose(const FusionSystem& F, const FusionMorphism& psi,
                       const FusionMorphism& phi);
FusionMorphism identity_morphism(const FusionSystem& F, const Subgroup& P);
// restriction of phi to a subgroup R of its source
FusionMorphism restrict_morphism(const FusionSystem& F,
                                 const FusionMorphism& phi, const Subgroup& R);

bool f_conjugate(const FusionSystem& F, const Subgroup& P, const Subgroup& Q);
// all subgroups of S in the F-class of P, ascending canonical order
std::vector<Subgroup> f_class(const FusionSystem& F, const Subgroup& P);
// partition into F-classes; each class ascending, classes ordered by
// their minimal member
std::vector<std::vector<Subgroup>> f_conjugacy_classes(
    const FusionSystem& F, const std::vector<Subgroup>& members);

bool is_fully_centralised(const FusionSystem& F, const Subgroup& P);
bool is_fully_normalised(const FusionSystem& F, const Subgroup& P);

// N_phi = {g in N_S(P) : phi c_g phi^-1 in Aut_S(phi P)}
Subgroup n_phi(const FusionSystem& F, const FusionMorphism& phi);

struct SaturationReport {
  bool ok = true;
  std::vector<std::string> axiom_i_witnesses;
  std::vector<std::string> axiom_ii_witnesses;
};
SaturationReport check_saturation(const FusionView& view);

bool is_centric(const FusionSystem& F, const Subgroup& P);
// O_p(Out_F(P)) = 1; definition imported (standard), not from the source
// material, and flagged as imported in reports
bool is_radical(const FusionSystem& F, const Subgroup& P);

enum class CollectionKind { Centric, CentricRadical, ElementaryAbelian, Custom };

struct Collection {
  CollectionKind kind = CollectionKind::Custom;
  std::vector<Subgroup> members;  // ascending canonical order

  bool contains(const Subgroup& P) const;
};

// closes custom members under F-conjugacy; centric kinds enumerate and
// filter; elementary-abelian kind = all nontrivial elementary abelians
Collection build_collection(const FusionSystem& F, CollectionKind kind,
                            const std::vector<Subgroup>& custom = {});

// Aut_F(E_k) elements preserving every chain entry setwise
std::vector<FusionMorphism> aut_f_chain(const FusionSystem& F,
                                        const std::vector<Subgroup>& chain);

// abstract group on the given automorphism cosets of P (identity must be
// present); elements indexed in the given order after moving identity first
struct AutGroup {
  FiniteGroup group;
  std::vector<FusionMorphism> elements;  // elements[i] <-> group index i
};
AutGroup automorphism_group(const FusionSystem& F, const Subgroup& P,
                            std::vector<FusionMorphism> auts);

// Aut_F(P) and Out_F(P) = Aut_F(P)/Inn(P) as quotient groups
QuotientGroup aut_f_group(const FusionSystem& F, const Subgroup& P);

}  // namespace plfg
