#pragma once

#include <optional>

#include "plfg/catengine.hpp"
#include "plfg/linking.hpp"
#include "plfg/subdivision.hpp"

namespace plfg {

struct CollectionTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class TheoremTag { A, B };

// A normaliser decomposition: a diagram of categories over the poset of
// chain classes together with the comparison functor from its translation
// category to the linking category.
struct DecompositionDiagram {
  CatPtr base;            // poset of chain conjugacy classes
  CatDiagram value;       // diagram over base
  FinFunctor comparison;  // Tr(base, value) -> linking category
  TheoremTag tag = TheoremTag::A;
};

// ---------------------------------------------------------------------------
// Subgroup-chain decomposition (the pi_*(point) model over the linking
// category).

struct NormaliserDecompositionA {
  DecompositionDiagram D;
  HeightedEICategory heighted;  // linking category with order heights
  std::vector<int> iotas;       // distinguished inclusions
  SubdivisionCategory sIA;      // inclusion chains
  BarProjection proj;           // projection to the class poset
  CatDiagram star;              // constant point diagram over the chains
  KanExtension kan;             // pushforward of the point diagram
  Grothendieck tr_bar;          // Tr(base, value); source of the comparison
  Grothendieck tr_s;            // Tr of the point diagram over the chains
  FinFunctor pi_sharp;          // tr_bar -> tr_s (pushdown stage)
  FinFunctor first_vertex;      // chains -> linking category
};

NormaliserDecompositionA theorem_a_diagram(const LinkingSystem& L,
                                           long budget = 5'000'000);

// The canonical functor Tr_{BAut(A)}(F(A)) -> (pi_* F)([A]) into the value of
// the pushforward at the class of a chain A, together with the one-object
// automorphism category it is defined on.
struct CanonicalValueFunctor {
  int obj = -1;            // the chain (subdivision object)
  int cls = -1;            // its class
  CatPtr baut;             // one-object category on the endomorphisms of A
  std::vector<int> endo;   // subdivision endomorphism per baut morphism
  CatDiagram diagram;      // F restricted to BAut(A)
  Grothendieck tr;         // Tr_{BAut(A)} F(A)
  FinFunctor to_value;     // tr.cat -> kan.tr[cls].cat
};

// endos must list endomorphisms of obj closed under composition with the
// identity first.
CanonicalValueFunctor canonical_value_functor(const SubdivisionCategory& sA,
                                              const BarProjection& proj,
                                              const CatDiagram& F,
                                              const KanExtension& kan, int obj,
                                              const std::vector<int>& endos);

// Homology matrices of the canonical functor in degrees 0..d-1.
InducedMapReport canonical_value_homology(const CanonicalValueFunctor& can,
                                          const KanExtension& kan, int d,
                                          int p, long budget = 5'000'000);

// The chain-automorphism group of P mapped into the decomposition value at
// the class of P.
struct BautToDelta {
  ChainAut aut;               // ladder model of Aut_L(P)
  CanonicalValueFunctor can;  // endo[g] realizes aut.tuples[g]
};

BautToDelta baut_to_delta(const LinkingSystem& L,
                          const NormaliserDecompositionA& N,
                          const SimplexChain& P);

// The composite BAut(P) -> value -> Tr -> linking category equals the plain
// subcategory inclusion of Aut_L(P) at the first vertex (strict equality).
bool check_augmentation(const LinkingSystem& L,
                        const NormaliserDecompositionA& N,
                        const BautToDelta& B);

// Verdicts for the naturality square attached to a subdivision morphism
// psi: A -> A' (restriction to a subchain, or conjugation). The two
// composites Tr_{BAut(A)}F(A) -> (pi_*F)([A']) are compared through the
// canonical natural transformation induced by psi, and on homology.
struct SquareReport {
  bool natural = false;       // canonical transformation is natural
  bool fiber_strict = false;  // F(psi) is an identity functor
  bool homology_agree = false;
  bool ok() const { return natural && homology_agree; }
};

SquareReport check_naturality_square(const SubdivisionCategory& sA,
                                     const BarProjection& proj,
                                     const CatDiagram& F,
                                     const KanExtension& kan,
                                     const CanonicalValueFunctor& src,
                                     const CanonicalValueFunctor& dst, int psi,
                                     int d, int p, long budget = 5'000'000);

SquareReport check_restriction_square(const LinkingSystem& L,
                                      const NormaliserDecompositionA& N,
                                      const SimplexChain& P,
                                      const SimplexChain& Pp, int d, int p,
                                      long budget = 5'000'000);

SquareReport check_conjugation_square(const LinkingSystem& L,
                                      const NormaliserDecompositionA& N,
                                      const SimplexChain& P, int g, int d,
                                      int p, long budget = 5'000'000);

// The class groupoid inside the comma category over a class, with the left
// adjoint to its inclusion and the unit, ready for check_adjoint_cofinality.
struct ClassGroupoidAdjoint {
  CatPtr pi_cat;
  std::vector<int> obj_comma;  // comma object per groupoid object
  FinFunctor J;                // inclusion into the comma category
  FinFunctor Lf;               // left adjoint
  NatTrans unit;               // Id => J . Lf
};

ClassGroupoidAdjoint class_groupoid_adjoint(const SubdivisionCategory& sA,
                                            const BarProjection& proj,
                                            const KanExtension& kan, int cls);

// ---------------------------------------------------------------------------
// Elementary-abelian decomposition.

// The fusion category on a conjugacy-closed collection of elementary
// abelians, materialized with its opposite, order heights and the inclusion
// poset.
struct MarkedFusionCategory {
  CatPtr cat;
  CatPtr op;
  std::vector<Subgroup> objects;
  std::vector<FusionMorphism> mors;
  std::vector<int> heights;  // subgroup orders
  std::vector<int> iotas;    // morphisms with representative 0

  int obj_index(const Subgroup& E) const;
  int mor_index(const FusionMorphism& f) const;
  std::map<std::vector<int>, int> obj_idx;
  std::map<std::tuple<int, int, int>, int> mor_idx;  // (src, dst, rep)
};

MarkedFusionCategory marked_fusion_category(const FusionSystem& F,
                                            const Collection& E);

// P -> Omega_p Z(P) as a functor from the linking category to the opposite
// fusion category; throws CollectionTooSmall when some Omega_p Z(P) is
// missing from the collection.
FinFunctor zeta_functor(const LinkingSystem& L,
                        const MarkedFusionCategory& FE);

// Top-vertex functor from a subdivision of the fusion category to its
// opposite: a chain goes to its largest entry.
FinFunctor mu_functor(const SubdivisionCategory& sE,
                      const MarkedFusionCategory& FE);

// Chain-reversal isomorphism s(op) -> s(cat); morphism components are
// inverted.
FinFunctor tau_functor(const SubdivisionCategory& sOp,
                       const SubdivisionCategory& sFE,
                       const MarkedFusionCategory& FE);

// The category of pairs (P, f: E -> Z(P)), built directly and identified
// with the translation category of the comma value of the zeta pushforward
// (the identification is a hard assertion).
struct CentralizerPairCategory {
  CatPtr cat;
  std::vector<std::pair<int, int>> obj_pair;  // (linking object, fusion mor)
  std::vector<int> mor_psi;                   // linking morphism per morphism
  FinFunctor to_value;                        // iso onto kan_zeta.tr[E].cat

  int obj_index(int P, int f) const;
  int mor_index(int src, int dst, int psi) const;
  std::map<std::pair<int, int>, int> obj_idx;
  std::map<std::tuple<int, int, int>, int> mor_idx;
};

CentralizerPairCategory cbar_category(const LinkingSystem& L,
                                      const MarkedFusionCategory& FE,
                                      const KanExtension& kan_zeta, int Eobj);

// Objects P with E_k central in P; morphisms whose projection restricts to a
// chain automorphism of E.
struct ChainNormalizerCategory {
  CatPtr cat;
  std::vector<int> obj_l;    // linking object per object
  std::vector<int> mor_l;    // linking morphism per morphism
  std::vector<int> mor_aut;  // restriction, as index into the chain auts
  std::vector<FusionMorphism> chain_auts;  // Aut_F(E), identity first
};

ChainNormalizerCategory nol_category(const LinkingSystem& L,
                                     const std::vector<Subgroup>& Echain);

// The pair category twisted by the chain automorphisms of E: a diagram over
// the one-object category of a CanonicalValueFunctor with matching actions,
// and its translation category.
struct HomotopyOrbit {
  std::vector<FusionMorphism> auts;  // Aut_F(E), identity first
  CatDiagram diagram;                // over can.baut, value = cbar.cat
  Grothendieck tr;
  FinFunctor bridge;  // tr.cat -> can.tr.cat (iso via cbar.to_value)
};

HomotopyOrbit homotopy_orbit_cbar(const LinkingSystem& L,
                                  const MarkedFusionCategory& FE,
                                  const CentralizerPairCategory& cbar,
                                  const std::vector<Subgroup>& Echain,
                                  const CanonicalValueFunctor& can);

struct EpsilonEmbedding {
  FinFunctor eps;  // nol.cat -> orbit.tr.cat
  bool fully_faithful = false;
  // skeletal image: set when E_k is fully centralised, otherwise empty
  std::optional<bool> skeletal;
};

EpsilonEmbedding epsilon_embedding(const LinkingSystem& L,
                                   const MarkedFusionCategory& FE,
                                   const std::vector<Subgroup>& Echain,
                                   const ChainNormalizerCategory& nol,
                                   const CentralizerPairCategory& cbar,
                                   const HomotopyOrbit& orbit);

struct NormaliserDecompositionB {
  DecompositionDiagram D;
  MarkedFusionCategory FE;
  FinFunctor zeta;              // linking -> opposite fusion category
  HeightedEICategory heighted;  // fusion category with order heights
  SubdivisionCategory sIE;      // inclusion chains of elementary abelians
  BarProjection proj;
  CatDiagram starL;        // points over the linking category
  KanExtension kan_zeta;   // zeta pushforward of the points
  FinFunctor mu;           // top vertex
  CatDiagram V;            // mu-pullback of the zeta pushforward
  KanExtension kan;        // class-poset pushforward of V
  Grothendieck tr_bar, tr_sie, tr_feop, tr_l;
  FinFunctor stage_pi, stage_mu, stage_zeta;
};

NormaliserDecompositionB theorem_b_diagram(const LinkingSystem& L,
                                           const Collection& E,
                                           long budget = 5'000'000);

// The canonical functor at the class of an inclusion chain of elementary
// abelians, over the automorphisms of the chain.
CanonicalValueFunctor chain_canonical_functor(
    const LinkingSystem& L, const NormaliserDecompositionB& N,
    const std::vector<Subgroup>& Echain);

// The chain-normalizer category maps through epsilon, the homotopy orbit and
// the decomposition value to the linking category; the composite equals the
// forgetful functor (strict equality).
bool check_epsilon_augmentation(const LinkingSystem& L,
                                const NormaliserDecompositionB& N,
                                const ChainNormalizerCategory& nol,
                                const EpsilonEmbedding& eps,
                                const HomotopyOrbit& orbit,
                                const CanonicalValueFunctor& can);

// ---------------------------------------------------------------------------
// Verification and the transporter-category comparison.

struct DecompositionReport {
  std::vector<long> betti_source;  // Tr(base, value)
  std::vector<long> betti_target;  // linking category
  InducedMapReport induced;
  // When the direct nerve exceeds the budget, the translation category is
  // replaced by a skeleton whose inclusion carries an exact adjoint-
  // equivalence certificate (a nerve homotopy equivalence), and the
  // comparison is verified through it.
  bool reduced = false;
  bool all_iso() const { return induced.all_iso(); }
};

DecompositionReport verify_decomposition(const DecompositionDiagram& D, int d,
                                         int p, long budget = 5'000'000);

struct TransporterCategory {
  CatPtr cat;
  std::vector<int> mor_g;  // group element per morphism
  FinFunctor to_linking;   // transporter -> linking, g -> its coset

  int obj_of(const Subgroup& P) const;
  int mor_index(int src, int dst, int g) const;
  std::map<std::vector<int>, int> obj_idx;
  std::map<std::tuple<int, int, int>, int> mor_idx;
};

TransporterCategory transporter_category(const LinkingSystem& L);

struct DwyerClassReport {
  SimplexChain rep;
  long aut_t_order = 0;    // order of the chain normalizer in G
  long aut_l_order = 0;    // order of the linking chain automorphisms
  long kernel_order = 0;   // order of the p'-part of the first centralizer
  bool kernel_p_prime = false;
  bool surjective = false;
  std::vector<long> h_t, h_l;  // mod-p group homology, degrees 0..2
  bool homology_checked = false;
  bool homology_agree = false;
};

struct DwyerReport {
  std::vector<DwyerClassReport> classes;
  bool ok = true;
};

DwyerReport dwyer_comparison(const LinkingSystem& L, bool with_homology,
                             int homology_cap = 24);

}  // namespace plfg
