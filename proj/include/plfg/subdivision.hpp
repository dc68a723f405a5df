#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "plfg/fincategory.hpp"
#include "plfg/linking.hpp"
#include "plfg/nerve.hpp"

namespace plfg {

struct NotASubsimplex : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FactorizationHypothesisFails : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A strictly increasing chain P_0 < ... < P_k of proper inclusions.
struct SimplexChain {
  std::vector<Subgroup> entries;

  int length() const { return static_cast<int>(entries.size()) - 1; }
  bool operator==(const SimplexChain& o) const { return entries == o.entries; }
  bool operator<(const SimplexChain& o) const { return entries < o.entries; }
};

bool is_subchain(const SimplexChain& sub, const SimplexChain& chain);

// All strictly increasing chains of collection members, deterministic order
// (by length, then lexicographic).
std::vector<SimplexChain> enumerate_chains(const Collection& C);

// chains conjugate when some f in Iso_F(P_k, P_k') carries each P_i to P_i'
bool chains_conjugate(const FusionSystem& F, const SimplexChain& a,
                      const SimplexChain& b);

struct ConjClass {
  SimplexChain representative;  // lexicographically minimal member
  std::vector<SimplexChain> members;
};

// Conjugacy classes of chains plus the poset with arrow [P] -> [P'] when a
// member of [P'] is a subchain of a member of [P].
struct BarSubdivision {
  std::vector<ConjClass> classes;
  CatPtr poset;
  int class_of(const SimplexChain& c) const;  // -1 if absent
};

BarSubdivision conj_classes_of_chains(const FusionSystem& F,
                                      const std::vector<SimplexChain>& chains);

// Automorphisms of a chain: tuples (phi_0..phi_k) of linking automorphisms
// commuting with the inclusion ladder, embedded by their first component.
// Cross-asserted against the group formula (∩_i N_G(P_i)) / C'_G(P_0).
struct ChainAut {
  std::vector<std::vector<LinkMorphism>> tuples;  // ladder solutions
  QuotientGroup group;  // (∩ N_G(P_i)) / C'_G(P_0); element g <-> tuples[g]
  CatPtr baut;          // one-object groupoid; morphism g = group element g
};

ChainAut aut_l_chain(const LinkingSystem& L, const SimplexChain& P);

// The injective restriction Aut_L(P) -> Aut_L(P'), P' a subchain of P, as
// element indices of the two ChainAut groups. Injectivity verified.
std::vector<int> restriction_map(const LinkingSystem& L, const SimplexChain& P,
                                 const SimplexChain& Pp);

// finite EI category with a height function: morphisms go weakly up in
// height, strictly unless isomorphisms
struct HeightedEICategory {
  CatPtr cat;
  std::vector<int> height;
};

// throws CategoryError when the EI/height axioms fail
void validate_heighted_ei(const HeightedEICategory& A);

// the linking category with height = subgroup order
HeightedEICategory heighted_linking(const LinkingSystem& L);
// indices of the distinguished inclusions (the poset of iotas)
std::vector<int> iota_subcategory(const LinkingSystem& L);

// s(A): objects are chains with strictly increasing heights, morphisms are
// pairs (eps, phi) of a subchain selection and a natural isomorphism
struct SubdivisionCategory {
  CatPtr cat;
  std::vector<std::vector<int>> obj_vertices;  // A-objects per chain
  std::vector<std::vector<int>> obj_arrows;    // A-morphisms per chain
  // per morphism: eps (indices into the source chain) and phi components
  std::vector<std::pair<std::vector<int>, std::vector<int>>> mor_data;
  std::vector<int> height;  // chain length per object

  int obj_index(const std::vector<int>& vertices,
                const std::vector<int>& arrows) const;
  int mor_index(int src, int dst, const std::vector<int>& eps,
                const std::vector<int>& phi) const;

  std::map<std::pair<std::vector<int>, std::vector<int>>, int> obj_idx;
  std::map<std::tuple<int, int, std::vector<int>, std::vector<int>>, int>
      mor_idx;
};

SubdivisionCategory subdivision_category(const HeightedEICategory& A,
                                         long budget = 5'000'000);

// s_I(A): chains whose arrows lie in the poset I of distinguished
// inclusions; validates the unique iso-then-inclusion factorization of every
// A-morphism (throws FactorizationHypothesisFails)
SubdivisionCategory skeletal_subdivision(const HeightedEICategory& A,
                                         const std::vector<int>& I,
                                         long budget = 5'000'000);

// every object of sA is isomorphic to exactly one object of sIA (feasible
// only when sA fits in the budget)
bool verify_skeletality(const SubdivisionCategory& sA,
                        const SubdivisionCategory& sIA);

// s̄(A) together with the projection functor
struct BarProjection {
  CatPtr poset;
  std::vector<int> class_of_obj;  // per sA object
  std::vector<int> class_rep;     // one sA object per class
  FinFunctor pi;                  // sA.cat -> poset
};

BarProjection projection_pi(const SubdivisionCategory& sA);

// order-preserving bijection between the two poset models of the bar
// subdivision, matching classes through their chain representatives
bool bar_posets_isomorphic(const BarSubdivision& bar,
                           const BarProjection& proj,
                           const SubdivisionCategory& sIA,
                           const LinkingSystem& L);

// p: s(A) -> A, chain -> first vertex, (eps,phi) -> phi_0 ∘ (chain composite)
FinFunctor first_vertex_functor(const SubdivisionCategory& sA,
                                const HeightedEICategory& A);

// the homomorphism Aut(A) -> Aut(A') induced by a morphism psi: A -> A'
// (restrict along eps, conjugate by phi); entries are sA morphism indices
std::vector<std::pair<int, int>> phi_star(const SubdivisionCategory& sA,
                                          int psi);

// Aut(A') acts freely on Hom(A, A') with a single orbit when nonempty
bool check_free_transitive(const FinCategory& cat);

}  // namespace plfg
