#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace plfg {

struct ClosureExceedsCap : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SubgroupCountExceedsCap : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotASubgroup : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidGroupTable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Perm = std::vector<int>;  // image notation: p[i] = image of point i

// Finite group on element indices 0..order-1 with a full multiplication
// table. Index 0 is always the identity.
class FiniteGroup {
 public:
  // Validates identity/inverses; associativity by full triple loop when
  // order <= 64 or strict is set, otherwise by 10*n^2 sampled triples.
  FiniteGroup(std::vector<int> mul_table, int order, bool strict = false);

  static FiniteGroup from_generators(int points, const std::vector<Perm>& gens,
                                     int cap);

  int order() const { return n_; }
  int identity() const { return 0; }
  int mul(int a, int b) const { return mul_[static_cast<size_t>(a) * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }
  int element_order(int g) const;

  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> l) { labels_ = std::move(l); }
  const std::vector<int>& table() const { return mul_; }

 private:
  int n_;
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::vector<std::string> labels_;
};

// Canonical subgroup: sorted element-index list containing the identity.
// Equality is list equality; ordering is (order, element list).
struct Subgroup {
  const FiniteGroup* ambient = nullptr;
  std::vector<int> elems;  // sorted, contains 0

  int order() const { return static_cast<int>(elems.size()); }
  bool contains(int g) const;
  bool contains(const Subgroup& other) const;
  bool proper_subgroup_of(const Subgroup& other) const;

  bool operator==(const Subgroup& o) const { return elems == o.elems; }
  bool operator!=(const Subgroup& o) const { return elems != o.elems; }
  bool operator<(const Subgroup& o) const {
    if (elems.size() != o.elems.size()) return elems.size() < o.elems.size();
    return elems < o.elems;
  }
};

// Left coset rep*H with canonical rep = minimal index in the coset.
int canonical_coset_rep(const FiniteGroup& G, int rep, const Subgroup& H);

Subgroup trivial_subgroup(const FiniteGroup& G);
Subgroup full_subgroup(const FiniteGroup& G);
Subgroup subgroup_generated_by(const FiniteGroup& G, const std::vector<int>& gens);
Subgroup conjugate_subgroup(const FiniteGroup& G, int g, const Subgroup& P);

std::vector<Subgroup> all_subgroups(const FiniteGroup& G, int cap = 2000);
std::vector<Subgroup> all_subgroups_of(const Subgroup& H, int cap = 2000);

Subgroup sylow(const FiniteGroup& G, int p);

// {g in G : g P g^-1 <= Q}, ascending element order.
std::vector<int> transporter(const FiniteGroup& G, const Subgroup& P,
                             const Subgroup& Q);

Subgroup centralizer(const FiniteGroup& G, const Subgroup& P);
Subgroup normalizer(const FiniteGroup& G, const Subgroup& P);
Subgroup center(const Subgroup& P);
Subgroup intersect(const Subgroup& A, const Subgroup& B);

// The subgroup of all p'-order elements of C. Throws NotASubgroup when that
// element set is not closed under multiplication.
Subgroup p_prime_part(const Subgroup& C, int p);

// Subgroup generated by the order-p elements of H.
Subgroup omega_p(const Subgroup& H, int p);

bool is_abelian(const Subgroup& H);
bool is_elementary_abelian(const Subgroup& H, int p);

std::vector<Subgroup> elementary_abelian_subgroups(const Subgroup& S, int p,
                                                   bool include_trivial);

bool is_prime(int p);
int p_part(int n, int p);

// H/N for N normal in H <= ambient. Cosets indexed by canonical rep order,
// identity coset first. of_elem maps ambient elements to coset index (-1
// outside H); reps[i] is the canonical representative of coset i.
struct QuotientGroup {
  FiniteGroup group;
  std::vector<int> reps;
  std::vector<int> of_elem;
};
QuotientGroup quotient_group(const Subgroup& H, const Subgroup& N);

}  // namespace plfg
