#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "plfg/fincategory.hpp"
#include "plfg/homology.hpp"
#include "plfg/nerve.hpp"

namespace plfg {

// Translation category Tr_K U: objects (K, X), morphisms (k, x) with
// x: U(k)(X0) -> X1 and composition (k1∘k0, x1 ∘ U(k1)(x0)).
struct Grothendieck {
  CatPtr cat;
  std::vector<std::pair<int, int>> obj_pair;       // (base obj, fiber obj)
  std::vector<std::tuple<int, int, int>> mor_data; // (base mor k, X0, fiber mor x)
  FinFunctor projection;                           // to the base

  int obj_index(int K, int X) const;
  int mor_index(int k, int X0, int x) const;

  std::map<std::pair<int, int>, int> obj_idx;
  std::map<std::tuple<int, int, int>, int> mor_idx;
};

Grothendieck grothendieck(const CatDiagram& U);

// the cone inclusion U(K) -> Tr_K U, X -> (K, X)
FinFunctor cone_inclusion(const Grothendieck& T, const CatDiagram& U, int K);

// a natural transformation U => U2 (components comp[K]: U(K) -> U2(K))
// induces Tr_K U -> Tr_K U2; naturality is checked
FinFunctor grothendieck_nat(const Grothendieck& T, const CatDiagram& U,
                            const Grothendieck& T2, const CatDiagram& U2,
                            const std::vector<FinFunctor>& comp);

enum class CommaSide { Under, Over };

// (d ↓ F) for Under: objects (K, f: d -> FK); (F ↓ d) for Over:
// objects (K, f: FK -> d). Morphisms are base morphisms making the
// triangle commute. projection forgets the arrow component.
struct Comma {
  CatPtr cat;
  std::vector<std::pair<int, int>> obj_pair;  // (K object, L morphism)
  std::vector<int> mor_k;                     // underlying K morphism
  FinFunctor projection;                      // to K

  int obj_index(int K, int f) const;
  int mor_index(int src_obj, int dst_obj, int k) const;
  std::map<std::pair<int, int>, int> obj_idx;
  std::map<std::tuple<int, int, int>, int> mor_idx;
};

Comma comma_category(const FinFunctor& F, int d, CommaSide side);

// object of the comma category that is initial (unique morphism to every
// object), or -1
int find_initial_object(const FinCategory& cat);

// pullback diagram F^*U (U over L, result over K)
CatDiagram restrict_diagram(const FinFunctor& F, const CatDiagram& U);

// homotopy left Kan extension F_*U over L: value at l is Tr((F↓l) -> K -> Cat)
struct KanExtension {
  CatDiagram diagram;                  // over L
  std::vector<Comma> comma;            // (F ↓ l) per L-object
  std::vector<CatDiagram> restricted;  // U pulled back over each comma
  std::vector<Grothendieck> tr;        // the value categories
};

KanExtension kan_extension_cat(const FinFunctor& F, const CatDiagram& U);

// F_!: Tr_K(F^*U) -> Tr_L(U), (K, X) -> (FK, X); U lives over L
FinFunctor f_shriek(const FinFunctor& F, const CatDiagram& U,
                    const Grothendieck& trK, const Grothendieck& trL);

// F_#: Tr_L(F_*U) -> Tr_K(U), ((l, ((K, FK->l), X)) -> (K, X); U lives
// over K; the computable model of the pushdown equivalence
FinFunctor f_sharp(const FinFunctor& F, const CatDiagram& U,
                   const KanExtension& FstarU, const Grothendieck& trL,
                   const Grothendieck& trK);

struct CofinalityReport {
  bool all_ok = true;
  // per L-object: comma category nonempty with vanishing reduced homology
  // in degrees 0..d-1 (a NECESSARY condition for contractibility, not a
  // proof)
  std::vector<bool> object_ok;
  bool necessary_condition_only = true;
};

CofinalityReport check_right_cofinal(const FinFunctor& F, int d, int p,
                                     long budget = 5'000'000);

struct TwoWayHomology {
  std::vector<long> via_grothendieck;
  std::vector<long> via_diagonal;
  bool agree() const { return via_grothendieck == via_diagonal; }
};

// Betti numbers of the homotopy colimit in degrees 0..d-1, computed from
// the translation category nerve and from the diagonal of the simplicial
// replacement
TwoWayHomology hocolim_homology_two_ways(const CatDiagram& U, int d, int p,
                                         long budget = 5'000'000);

// diagonal of the simplicial replacement as a complex with stored faces
TruncatedSSet simplicial_replacement_diagonal(const CatDiagram& U, int d,
                                              long budget = 5'000'000);

// Verifies L∘J = Id, unit Id => J∘L natural, and both triangle identities
// (L(eta_d) = id and eta_{Jc} = id)
bool check_adjoint_cofinality(const FinFunctor& J, const FinFunctor& L,
                              const NatTrans& unit);

// A full skeletal subcategory (one object per isomorphism class) together
// with a retraction and unit forming an adjoint equivalence; the triple is
// validated with check_adjoint_cofinality, so the inclusion is a certified
// homotopy equivalence of nerves.
struct SkeletonRetract {
  CatPtr cat;      // the skeleton
  FinFunctor J;    // inclusion into the original category
  FinFunctor R;    // retraction, R∘J = Id
  NatTrans unit;   // Id => J∘R, componentwise isomorphisms
};

SkeletonRetract skeleton_retract(const CatPtr& c);

}  // namespace plfg
