#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace plfg {

struct CategoryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A finite category: indexed objects, indexed morphisms, explicit composition
// table. compose(g, f) = g after f. Morphism identity is positional.
class FinCategory {
 public:
  struct Mor {
    int src;
    int dst;
  };

  int add_object(std::string label = {});
  // Adds a morphism src -> dst and returns its index.
  int add_morphism(int src, int dst, std::string label = {});
  // Marks an existing endomorphism as the identity of its object.
  void set_identity(int obj, int mor);
  // Convenience: add and mark an identity morphism.
  int add_identity(int obj, std::string label = {});
  void set_compose(int g, int f, int gf);

  // Fills identity compositions, builds hom sets, validates neutrality,
  // totality and associativity (exhaustively up to assoc_budget composable
  // triples, deterministic stride sampling beyond).
  void finalize(long assoc_budget = 2'000'000);

  bool finalized() const { return finalized_; }
  int num_objects() const { return nobj_; }
  int num_morphisms() const { return static_cast<int>(mors_.size()); }
  int src(int m) const { return mors_[m].src; }
  int dst(int m) const { return mors_[m].dst; }
  int identity_of(int obj) const { return identity_[obj]; }
  bool is_identity(int m) const {
    return mors_[m].src == mors_[m].dst && identity_[mors_[m].src] == m;
  }
  int compose(int g, int f) const;
  bool has_compose(int g, int f) const;
  const std::vector<int>& hom(int a, int b) const;
  // All isomorphisms m with an explicit two-sided inverse; -1 if none.
  int inverse_of(int m) const;
  bool is_iso(int m) const { return inverse_of(m) >= 0; }

  const std::string& obj_label(int o) const { return obj_label_[o]; }
  const std::string& mor_label(int m) const { return mor_label_[m]; }

  // Fault injection for checker tests: swaps one composition entry after
  // finalize, bypassing validation. Never used by the constructions.
  void corrupt_compose(int g, int f, int gf) { comp_[key(g, f)] = gf; }

 private:
  static uint64_t key(int g, int f) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(g)) << 32) |
           static_cast<uint32_t>(f);
  }
  int nobj_ = 0;
  std::vector<Mor> mors_;
  std::vector<int> identity_;
  std::vector<std::string> obj_label_, mor_label_;
  std::unordered_map<uint64_t, int> comp_;
  std::vector<std::vector<std::vector<int>>> hom_;
  bool finalized_ = false;
};

using CatPtr = std::shared_ptr<const FinCategory>;

// A functor between finalized finite categories; preservation of identities
// and composition is checked at construction.
struct FinFunctor {
  CatPtr source;
  CatPtr target;
  std::vector<int> obj_map;
  std::vector<int> mor_map;

  FinFunctor() = default;
  FinFunctor(CatPtr src, CatPtr dst, std::vector<int> omap,
             std::vector<int> mmap, long budget = 2'000'000);

  int on_obj(int o) const { return obj_map[o]; }
  int on_mor(int m) const { return mor_map[m]; }

  static FinFunctor identity(CatPtr c);
};

FinFunctor compose(const FinFunctor& g, const FinFunctor& f);
bool functors_equal(const FinFunctor& a, const FinFunctor& b);

// Category with the same object/morphism indices and reversed arrows.
CatPtr opposite(const CatPtr& c);

// A functor base -> Cat: one category per object, one transition functor per
// morphism. Functoriality checked by validate().
struct CatDiagram {
  CatPtr base;
  std::vector<CatPtr> value;
  std::vector<FinFunctor> action;  // per base morphism

  void validate(long budget = 2'000'000) const;
};

CatDiagram constant_point_diagram(CatPtr base);

// Components of a natural transformation F => G between parallel functors:
// comp[o] is a morphism F(o) -> G(o) in the target category.
struct NatTrans {
  std::vector<int> comp;
};

bool natural_transformation_valid(const FinFunctor& F, const FinFunctor& G,
                                  const NatTrans& t);

}  // namespace plfg
