#pragma once

#include <stdexcept>
#include <vector>

#include "plfg/fincategory.hpp"

namespace plfg {

struct SimplexBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Nondegenerate simplices of a truncated simplicial set, flattened per
// dimension. A 0-cell stores one object id; an n-cell stores n morphism ids
// f_1..f_n forming a composable chain x_0 -> x_1 -> ... -> x_n (for nerves)
// or, for synthetic complexes, arbitrary integer tuples with externally
// supplied faces.
class TruncatedSSet {
 public:
  TruncatedSSet(int dim, std::vector<int> tuple_len)
      : dim_(dim), tuple_len_(std::move(tuple_len)) {
    cells_.resize(dim_ + 1);
    order_.resize(dim_ + 1);
  }

  int dim() const { return dim_; }
  int tuple_len(int n) const { return tuple_len_[n]; }
  long count(int n) const {
    return n > dim_ ? 0
                    : static_cast<long>(cells_[n].size()) /
                          std::max(1, tuple_len_[n]);
  }
  const int* cell(int n, long i) const {
    return cells_[n].data() + i * tuple_len_[n];
  }
  // Appends a cell during construction; lookup index built by freeze().
  void add_cell(int n, const int* tuple);
  void freeze();
  // Index of the cell with this tuple, or -1 if absent.
  long index_of(int n, const int* tuple) const;

  // Stored faces: for each n-cell (n >= 1), n+1 indices into dimension n-1,
  // with -1 marking a degenerate face. Filled after freeze().
  void allocate_faces();
  void set_face(int n, long cell, int k, long face_idx) {
    faces_[n][cell * (n + 1) + k] = face_idx;
  }
  long face(int n, long cell, int k) const {
    return faces_[n][cell * (n + 1) + k];
  }
  bool has_faces() const { return !faces_.empty(); }

 private:
  int dim_;
  std::vector<int> tuple_len_;
  std::vector<std::vector<int>> cells_;
  std::vector<std::vector<long>> order_;  // lexicographic sort permutation
  std::vector<std::vector<long>> faces_;
  bool frozen_ = false;
};

// The nerve of a finalized category, truncated at dimension d: n-cells are
// chains of n composable non-identity morphisms.
TruncatedSSet nerve_truncated(const FinCategory& C, int d,
                              long budget = 5'000'000);

// i-th face of an n-cell of a truncated nerve, as the tuple of the (n-1)-cell
// (objects for n=1). Returns false if the face is degenerate (an inner
// composition yields an identity).
bool nerve_face(const FinCategory& C, int n, const int* tuple, int i,
                int* out);

// Cell-index image of each cell of nerve(F.source) in nerve(F.target);
// -1 marks cells collapsed to degenerate simplices (some F(f_j) an identity).
std::vector<std::vector<long>> simplicial_map_of_functor(
    const FinFunctor& F, const TruncatedSSet& X, const TruncatedSSet& Y);

// Checks d_i d_j = d_{j-1} d_i (i < j) on all stored faces, treating
// degenerate faces consistently; throws CategoryError on violation.
void check_simplicial_identities(const TruncatedSSet& X,
                                 const FinCategory& C);

}  // namespace plfg
