#include "plfg/homology.hpp"

#include <algorithm>

namespace plfg {

namespace {

int inv_mod(int a, int p) {
  // p prime, a in 1..p-1: Fermat
  int r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = static_cast<int>(static_cast<long long>(r) * b % p);
    b = static_cast<int>(static_cast<long long>(b) * b % p);
    e >>= 1;
  }
  return r;
}

}  // namespace

void SparseMatFp::add_entry(long c, long r, int v) {
  v %= p;
  if (v < 0) v += p;
  if (!v) return;
  auto& cv = col[c];
  auto it = std::lower_bound(
      cv.begin(), cv.end(), r,
      [](const std::pair<long, int>& e, long row) { return e.first < row; });
  if (it != cv.end() && it->first == r) {
    it->second = (it->second + v) % p;
    if (!it->second) cv.erase(it);
  } else {
    cv.insert(it, {r, v});
  }
}

SparseVec SparseMatFp::apply(const SparseVec& v) const {
  // accumulate into a map-free merge: gather then combine
  SparseVec acc;
  for (auto [c, a] : v) {
    acc = sparse_axpy(p, acc, a, col[c]);
  }
  return acc;
}

SparseVec sparse_axpy(int p, const SparseVec& x, int a, const SparseVec& y) {
  a %= p;
  if (a < 0) a += p;
  if (!a) return x;
  SparseVec r;
  r.reserve(x.size() + y.size());
  size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      r.push_back(x[i++]);
    } else if (i == x.size() || y[j].first < x[i].first) {
      int v = static_cast<int>(static_cast<long long>(a) * y[j].second % p);
      if (v) r.push_back({y[j].first, v});
      ++j;
    } else {
      int v = static_cast<int>(
          (x[i].second + static_cast<long long>(a) * y[j].second) % p);
      if (v) r.push_back({x[i].first, v});
      ++i;
      ++j;
    }
  }
  return r;
}

long rank_fp(const SparseMatFp& M) {
  std::unordered_map<long, SparseVec> pivots;
  pivots.reserve(static_cast<size_t>(std::min<long>(M.rows, M.cols)) * 2);
  long rank = 0;
  for (long c = 0; c < M.cols; ++c) {
    SparseVec v = M.col[c];
    while (!v.empty()) {
      auto it = pivots.find(v.front().first);
      if (it == pivots.end()) break;
      v = sparse_axpy(M.p, v, M.p - v.front().second, it->second);
    }
    if (v.empty()) continue;
    int s = inv_mod(v.front().second, M.p);
    for (auto& e : v)
      e.second = static_cast<int>(static_cast<long long>(e.second) * s % M.p);
    pivots.emplace(v.front().first, std::move(v));
    ++rank;
  }
  return rank;
}

long rank_fp_dense(const SparseMatFp& M) {
  std::vector<std::vector<int>> A(M.rows, std::vector<int>(M.cols, 0));
  for (long c = 0; c < M.cols; ++c)
    for (auto [r, v] : M.col[c]) A[r][c] = v;
  long rank = 0;
  long row = 0;
  for (long c = 0; c < M.cols && row < M.rows; ++c) {
    long pr = -1;
    for (long r = row; r < M.rows; ++r)
      if (A[r][c]) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(A[row], A[pr]);
    int s = inv_mod(A[row][c], M.p);
    for (long j = c; j < M.cols; ++j)
      A[row][j] = static_cast<int>(static_cast<long long>(A[row][j]) * s % M.p);
    for (long r = 0; r < M.rows; ++r) {
      if (r == row || !A[r][c]) continue;
      int f = A[r][c];
      for (long j = c; j < M.cols; ++j)
        A[r][j] = static_cast<int>(
            ((A[r][j] - static_cast<long long>(f) * A[row][j]) % M.p + M.p) %
            M.p);
    }
    ++row;
    ++rank;
  }
  return rank;
}

ChainComplexFp chains_of(const TruncatedSSet& X, int p) {
  if (!X.has_faces()) throw CategoryError("chains_of: complex lacks faces");
  ChainComplexFp cx;
  cx.p = p;
  int d = X.dim();
  cx.dims.resize(d + 1);
  for (int n = 0; n <= d; ++n) cx.dims[n] = X.count(n);
  cx.bnd.resize(d + 1);
  cx.bnd[0].p = p;
  cx.bnd[0].rows = 0;
  cx.bnd[0].cols = cx.dims[0];
  cx.bnd[0].col.resize(cx.dims[0]);
  for (int n = 1; n <= d; ++n) {
    auto& B = cx.bnd[n];
    B.p = p;
    B.rows = cx.dims[n - 1];
    B.cols = cx.dims[n];
    B.col.resize(B.cols);
    for (long j = 0; j < B.cols; ++j)
      for (int k = 0; k <= n; ++k) {
        long f = X.face(n, j, k);
        if (f < 0) continue;
        B.add_entry(j, f, (k % 2) ? p - 1 : 1);
      }
  }
  return cx;
}

void assert_boundary_squares_zero(const ChainComplexFp& cx) {
  for (int n = 2; n <= cx.top(); ++n)
    for (long j = 0; j < cx.bnd[n].cols; ++j)
      if (!cx.bnd[n - 1].apply(cx.bnd[n].col[j]).empty())
        throw BoundaryCompositionNonzero("d∘d != 0 at degree " +
                                         std::to_string(n));
}

std::vector<long> betti(const ChainComplexFp& cx) {
  assert_boundary_squares_zero(cx);
  int d = cx.top();
  std::vector<long> r(d + 2, 0);
  for (int n = 1; n <= d; ++n) r[n] = rank_fp(cx.bnd[n]);
  std::vector<long> b(std::max(0, d));
  for (int n = 0; n < d; ++n) b[n] = cx.dims[n] - r[n] - r[n + 1];
  return b;
}

bool reduced_vanishing(const TruncatedSSet& X, int p, int max_degree) {
  if (X.count(0) == 0) throw EmptyComplex("reduced_vanishing on empty complex");
  auto b = betti(chains_of(X, p));
  if (max_degree >= static_cast<int>(b.size()))
    throw CategoryError("reduced_vanishing: degree beyond trusted range");
  if (b[0] != 1) return false;
  for (int i = 1; i <= max_degree; ++i)
    if (b[i] != 0) return false;
  return true;
}

SparseVec HomologySolver::reduce2(const Echelon& bndE, const Echelon& homE,
                                  SparseVec v, std::vector<int>* coords) const {
  while (!v.empty()) {
    long row = v.front().first;
    int val = v.front().second;
    if (auto it = bndE.by_row.find(row); it != bndE.by_row.end()) {
      v = sparse_axpy(p_, v, p_ - val, bndE.cols[it->second]);
      continue;
    }
    if (auto it = homE.by_row.find(row); it != homE.by_row.end()) {
      v = sparse_axpy(p_, v, p_ - val, homE.cols[it->second]);
      if (coords) {
        const auto& t = homE.tag[it->second];
        if (coords->size() < t.size()) coords->resize(t.size(), 0);
        for (size_t i = 0; i < t.size(); ++i)
          (*coords)[i] = static_cast<int>(
              ((*coords)[i] + static_cast<long long>(val) * t[i]) % p_);
      }
      continue;
    }
    break;
  }
  return v;
}

HomologySolver::HomologySolver(const ChainComplexFp& cx, int max_degree)
    : p_(cx.p), max_degree_(std::min(max_degree, cx.top() - 1)) {
  if (max_degree_ < 0)
    throw CategoryError("homology solver needs at least one trusted degree");
  assert_boundary_squares_zero(cx);
  bnd_ech_.resize(max_degree_ + 1);
  hom_ech_.resize(max_degree_ + 1);
  reps_.resize(max_degree_ + 1);
  bnd_copy_.resize(max_degree_ + 1);
  Echelon empty;
  for (int n = 0; n <= max_degree_; ++n) {
    bnd_copy_[n] = cx.bnd[n];
    // echelon of im bnd[n+1]
    auto& be = bnd_ech_[n];
    const auto& B = cx.bnd[n + 1];
    for (long j = 0; j < B.cols; ++j) {
      SparseVec v = reduce2(be, empty, B.col[j], nullptr);
      if (v.empty()) continue;
      int s = inv_mod(v.front().second, p_);
      for (auto& e : v)
        e.second = static_cast<int>(static_cast<long long>(e.second) * s % p_);
      be.by_row.emplace(v.front().first, static_cast<int>(be.cols.size()));
      be.cols.push_back(std::move(v));
    }
    // kernel of bnd[n] with transformation tracking
    std::vector<SparseVec> kernel;
    if (n == 0) {
      kernel.resize(cx.dims[0]);
      for (long j = 0; j < cx.dims[0]; ++j) kernel[j] = {{j, 1}};
    } else {
      const auto& D = cx.bnd[n];
      std::unordered_map<long, int> prow;
      std::vector<SparseVec> pw, pv;
      for (long j = 0; j < D.cols; ++j) {
        SparseVec w = D.col[j];
        SparseVec v = {{j, 1}};
        while (!w.empty()) {
          auto it = prow.find(w.front().first);
          if (it == prow.end()) break;
          int c = p_ - w.front().second;
          w = sparse_axpy(p_, w, c, pw[it->second]);
          v = sparse_axpy(p_, v, c, pv[it->second]);
        }
        if (w.empty()) {
          kernel.push_back(std::move(v));
        } else {
          int s = inv_mod(w.front().second, p_);
          for (auto& e : w)
            e.second =
                static_cast<int>(static_cast<long long>(e.second) * s % p_);
          for (auto& e : v)
            e.second =
                static_cast<int>(static_cast<long long>(e.second) * s % p_);
          prow.emplace(w.front().first, static_cast<int>(pw.size()));
          pw.push_back(std::move(w));
          pv.push_back(std::move(v));
        }
      }
    }
    // homology basis: kernel vectors independent modulo boundaries
    auto& he = hom_ech_[n];
    for (auto& kv : kernel) {
      SparseVec r = reduce2(be, he, kv, nullptr);
      if (r.empty()) continue;
      int s = inv_mod(r.front().second, p_);
      for (auto& e : r)
        e.second = static_cast<int>(static_cast<long long>(e.second) * s % p_);
      int idx = static_cast<int>(reps_[n].size());
      // tag: this echelon column represents (rep_idx - removed part)/lead,
      // but the removed part was all boundary/earlier columns already folded
      // into the tag arithmetic by reduce2 during construction of r via
      // coords; we rebuilt r without coords, so recompute with coords:
      std::vector<int> coords;
      SparseVec r2 = reduce2(be, he, kv, &coords);
      (void)r2;
      coords.resize(idx + 1, 0);
      std::vector<int> tag(idx + 1, 0);
      tag[idx] = s;
      for (int i = 0; i < idx; ++i)
        tag[i] = static_cast<int>(
            ((-static_cast<long long>(coords[i]) * s) % p_ + p_) % p_);
      he.by_row.emplace(r.front().first, static_cast<int>(he.cols.size()));
      he.cols.push_back(std::move(r));
      he.tag.push_back(std::move(tag));
      reps_[n].push_back(kv);
    }
  }
}

std::vector<int> HomologySolver::express(int n, const SparseVec& cycle) const {
  if (n < 0 || n > max_degree_) throw CategoryError("express: degree range");
  if (!bnd_copy_[n].apply(cycle).empty())
    throw NotAChainMap("express: vector is not a cycle");
  std::vector<int> coords(reps_[n].size(), 0);
  SparseVec r = reduce2(bnd_ech_[n], hom_ech_[n], cycle, &coords);
  if (!r.empty())
    throw NotAChainMap("express: cycle outside computed homology span");
  coords.resize(reps_[n].size(), 0);
  return coords;
}

InducedMapReport induced_map(const ChainComplexFp& cx,
                             const ChainComplexFp& cy,
                             const std::vector<std::vector<long>>& cell_image,
                             int max_degree) {
  if (cx.p != cy.p) throw NotAChainMap("induced_map: different primes");
  int p = cx.p;
  int common = std::min({cx.top(), cy.top(),
                         static_cast<int>(cell_image.size()) - 1});
  // chain map matrices
  std::vector<SparseMatFp> M(common + 1);
  for (int n = 0; n <= common; ++n) {
    M[n].p = p;
    M[n].rows = cy.dims[n];
    M[n].cols = cx.dims[n];
    M[n].col.resize(cx.dims[n]);
    if (static_cast<long>(cell_image[n].size()) != cx.dims[n])
      throw NotAChainMap("induced_map: cell image size mismatch");
    for (long j = 0; j < cx.dims[n]; ++j)
      if (cell_image[n][j] >= 0) {
        if (cell_image[n][j] >= cy.dims[n])
          throw NotAChainMap("induced_map: cell image out of range");
        M[n].add_entry(j, cell_image[n][j], 1);
      }
  }
  for (int n = 1; n <= common; ++n)
    for (long j = 0; j < cx.dims[n]; ++j)
      if (M[n - 1].apply(cx.bnd[n].col[j]) != cy.bnd[n].apply(M[n].col[j]))
        throw NotAChainMap("induced_map: does not commute with boundary");

  InducedMapReport rep;
  rep.trusted_max = std::min({max_degree, cx.top() - 1, cy.top() - 1, common});
  if (rep.trusted_max < 0) throw CategoryError("induced_map: no trusted degree");
  HomologySolver HX(cx, rep.trusted_max), HY(cy, rep.trusted_max);
  rep.matrices.resize(rep.trusted_max + 1);
  rep.iso.resize(rep.trusted_max + 1);
  for (int n = 0; n <= rep.trusted_max; ++n) {
    long hx = HX.dim_h(n), hy = HY.dim_h(n);
    std::vector<std::vector<int>> mat(hy, std::vector<int>(hx, 0));
    for (long j = 0; j < hx; ++j) {
      auto coords = HY.express(n, M[n].apply(HX.reps(n)[j]));
      for (long i = 0; i < hy; ++i) mat[i][j] = coords[i];
    }
    bool iso = (hx == hy);
    if (iso && hx > 0) {
      SparseMatFp D;
      D.p = p;
      D.rows = hy;
      D.cols = hx;
      D.col.resize(hx);
      for (long j = 0; j < hx; ++j)
        for (long i = 0; i < hy; ++i)
          if (mat[i][j]) D.add_entry(j, i, mat[i][j]);
      iso = (rank_fp(D) == hx);
    }
    rep.matrices[n] = std::move(mat);
    rep.iso[n] = iso;
  }
  return rep;
}

std::vector<long> group_homology_fp(const Subgroup& H, int p, int top) {
  // nerve of the one-object groupoid on H = normalized bar complex
  auto BH = std::make_shared<FinCategory>();
  int o = BH->add_object("*");
  const FiniteGroup& G = *H.ambient;
  int n = H.order();
  std::vector<int> midx(n);
  const auto& lbl = G.labels();
  for (int i = 0; i < n; ++i)
    midx[i] = BH->add_morphism(
        o, o,
        static_cast<size_t>(H.elems[i]) < lbl.size() ? lbl[H.elems[i]] : "");
  BH->set_identity(o, midx[0]);  // elems sorted, identity = element 0
  std::vector<int> pos(G.order(), -1);
  for (int i = 0; i < n; ++i) pos[H.elems[i]] = i;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      BH->set_compose(midx[i], midx[j],
                      midx[pos[G.mul(H.elems[i], H.elems[j])]]);
  BH->finalize();
  auto X = nerve_truncated(*BH, top + 1, 50'000'000);
  auto b = betti(chains_of(X, p));
  b.resize(top + 1);
  return b;
}

}  // namespace plfg
