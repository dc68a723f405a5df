#pragma once

#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "plfg/groupcore.hpp"
#include "plfg/nerve.hpp"

namespace plfg {

struct BoundaryCompositionNonzero : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotAChainMap : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyComplex : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sparse vector over F_p: (row, value) pairs sorted by row, values in 1..p-1.
using SparseVec = std::vector<std::pair<long, int>>;

struct SparseMatFp {
  int p = 2;
  long rows = 0;
  long cols = 0;
  std::vector<SparseVec> col;

  void add_entry(long c, long r, int v);  // accumulates mod p
  SparseVec apply(const SparseVec& v) const;
};

long rank_fp(const SparseMatFp& M);
// Dense elimination on the same data, for cross-checking small matrices.
long rank_fp_dense(const SparseMatFp& M);

SparseVec sparse_axpy(int p, const SparseVec& x, int a, const SparseVec& y);

struct ChainComplexFp {
  int p = 2;
  std::vector<long> dims;            // ranks in degrees 0..top
  std::vector<SparseMatFp> bnd;      // bnd[n]: C_n -> C_{n-1}; bnd[0] zero map
  int top() const { return static_cast<int>(dims.size()) - 1; }
};

// Normalized chains of a complex with stored faces; boundary = alternating
// sum of faces, degenerate faces dropped.
ChainComplexFp chains_of(const TruncatedSSet& X, int p);

// Hard assertion that consecutive boundaries compose to zero.
void assert_boundary_squares_zero(const ChainComplexFp& cx);

// Betti numbers in the trusted degrees 0..top-1 (ranks above the truncation
// are unknown); asserts boundary composition first.
std::vector<long> betti(const ChainComplexFp& cx);

// b_0 = 1 and b_i = 0 for 1 <= i <= max_degree (max_degree <= top-1).
bool reduced_vanishing(const TruncatedSSet& X, int p, int max_degree);

// Homology bases with cycle-expression support, built in degrees
// 0..max_degree (kept low: basis extraction is the expensive path).
class HomologySolver {
 public:
  HomologySolver(const ChainComplexFp& cx, int max_degree);

  int max_degree() const { return max_degree_; }
  long dim_h(int n) const { return static_cast<long>(reps_[n].size()); }
  const std::vector<SparseVec>& reps(int n) const { return reps_[n]; }
  // Coordinates of a cycle in the degree-n homology basis; throws
  // NotAChainMap if the vector is not a cycle modulo boundaries in the span.
  std::vector<int> express(int n, const SparseVec& cycle) const;

 private:
  struct Echelon {
    // normalized columns with distinct pivot (leading) rows; tag carries
    // coordinates of each column in the homology basis (empty for boundaries)
    std::vector<SparseVec> cols;
    std::vector<std::vector<int>> tag;
    std::unordered_map<long, int> by_row;
  };
  int p_;
  int max_degree_;
  std::vector<Echelon> bnd_ech_;          // echelon of im bnd[n+1], per degree
  std::vector<Echelon> hom_ech_;          // echelon of homology residues
  std::vector<std::vector<SparseVec>> reps_;
  std::vector<SparseMatFp> bnd_copy_;  // bnd[n], n <= max_degree, for cycle checks
  // eliminates against boundary and homology echelons together; coords (if
  // given) accumulate homology-basis coordinates of the part removed
  SparseVec reduce2(const Echelon& bndE, const Echelon& homE, SparseVec v,
                    std::vector<int>* coords) const;
};

struct InducedMapReport {
  int trusted_max = 0;                              // checks run in 0..this
  std::vector<std::vector<std::vector<int>>> matrices;  // per degree, dense
  std::vector<bool> iso;                            // per degree
  bool all_iso() const {
    for (bool b : iso)
      if (!b) return false;
    return !iso.empty();
  }
};

// Homology matrices of a simplicial (cellular) map given as per-degree cell
// images (-1 = collapsed to degenerate). Verifies the chain-map condition
// against both boundaries; throws NotAChainMap on failure.
InducedMapReport induced_map(const ChainComplexFp& cx,
                             const ChainComplexFp& cy,
                             const std::vector<std::vector<long>>& cell_image,
                             int max_degree);

// Mod-p group homology H_i(H; F_p) for i = 0..top, via the truncated
// normalized bar complex (= nerve of the one-object groupoid on H).
std::vector<long> group_homology_fp(const Subgroup& H, int p, int top);

}  // namespace plfg
