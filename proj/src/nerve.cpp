#include "plfg/nerve.hpp"

#include <algorithm>
#include <cstring>

namespace plfg {

void TruncatedSSet::add_cell(int n, const int* tuple) {
  if (frozen_) throw CategoryError("add_cell after freeze");
  cells_[n].insert(cells_[n].end(), tuple, tuple + tuple_len_[n]);
}

void TruncatedSSet::freeze() {
  for (int n = 0; n <= dim_; ++n) {
    long cnt = count(n);
    int len = tuple_len_[n];
    auto& ord = order_[n];
    ord.resize(cnt);
    for (long i = 0; i < cnt; ++i) ord[i] = i;
    const int* data = cells_[n].data();
    std::sort(ord.begin(), ord.end(), [&](long a, long b) {
      return std::lexicographical_compare(data + a * len, data + (a + 1) * len,
                                          data + b * len, data + (b + 1) * len);
    });
  }
  frozen_ = true;
}

void TruncatedSSet::allocate_faces() {
  if (!frozen_) throw CategoryError("allocate_faces before freeze");
  faces_.resize(dim_ + 1);
  for (int n = 1; n <= dim_; ++n) faces_[n].assign(count(n) * (n + 1), -2);
}

long TruncatedSSet::index_of(int n, const int* tuple) const {
  if (!frozen_) throw CategoryError("index_of before freeze");
  if (n > dim_) return -1;
  int len = tuple_len_[n];
  const int* data = cells_[n].data();
  const auto& ord = order_[n];
  long lo = 0, hi = static_cast<long>(ord.size());
  while (lo < hi) {
    long mid = (lo + hi) / 2;
    const int* c = data + ord[mid] * len;
    if (std::lexicographical_compare(c, c + len, tuple, tuple + len))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < static_cast<long>(ord.size())) {
    const int* c = data + ord[lo] * len;
    if (std::equal(c, c + len, tuple)) return ord[lo];
  }
  return -1;
}

TruncatedSSet nerve_truncated(const FinCategory& C, int d, long budget) {
  std::vector<int> lens(d + 1);
  lens[0] = 1;
  for (int n = 1; n <= d; ++n) lens[n] = n;
  TruncatedSSet X(d, lens);
  long total = 0;
  for (int o = 0; o < C.num_objects(); ++o) {
    if (++total > budget) throw SimplexBudgetExceeded("nerve 0-cells");
    X.add_cell(0, &o);
  }
  // non-identity morphisms out of each object, in index order
  std::vector<std::vector<int>> out(C.num_objects());
  for (int m = 0; m < C.num_morphisms(); ++m)
    if (!C.is_identity(m)) out[C.src(m)].push_back(m);
  for (auto& v : out) std::sort(v.begin(), v.end());

  std::vector<int> buf;
  for (int n = 1; n <= d; ++n) {
    long prev = X.count(n - 1);
    buf.resize(n);
    for (long i = 0; i < prev; ++i) {
      int last_obj;
      if (n == 1) {
        last_obj = X.cell(0, i)[0];
      } else {
        const int* t = X.cell(n - 1, i);
        std::copy(t, t + n - 1, buf.begin());
        last_obj = C.dst(t[n - 2]);
      }
      for (int g : out[last_obj]) {
        buf[n - 1] = g;
        if (n == 1) buf[0] = g;
        if (++total > budget) throw SimplexBudgetExceeded("nerve cells");
        X.add_cell(n, buf.data());
      }
    }
  }
  X.freeze();
  X.allocate_faces();
  std::vector<int> fb;
  for (int n = 1; n <= d; ++n) {
    long cnt = X.count(n);
    fb.resize(std::max(1, n - 1 == 0 ? 1 : n - 1));
    for (long i = 0; i < cnt; ++i) {
      const int* t = X.cell(n, i);
      for (int k = 0; k <= n; ++k) {
        if (!nerve_face(C, n, t, k, fb.data())) {
          X.set_face(n, i, k, -1);
          continue;
        }
        long idx = X.index_of(n - 1, fb.data());
        if (idx < 0) throw CategoryError("nerve face missing");
        X.set_face(n, i, k, idx);
      }
    }
  }
  return X;
}

void check_simplicial_identities(const TruncatedSSet& X,
                                 const FinCategory& C) {
  // raw face on a chain tuple, allowing identity entries
  auto raw_face = [&](const std::vector<int>& t, int k) {
    int n = static_cast<int>(t.size());
    std::vector<int> r;
    if (n == 1) {
      r.push_back(k == 0 ? C.dst(t[0]) : C.src(t[0]));
      return r;
    }
    for (int j = 0; j < n; ++j) {
      if (k > 0 && k < n && j == k - 1) {
        r.push_back(C.compose(t[k], t[k - 1]));
        ++j;
      } else if (k == 0 && j == 0) {
        continue;
      } else if (k == n && j == n - 1) {
        continue;
      } else {
        r.push_back(t[j]);
      }
    }
    return r;
  };
  for (int n = 2; n <= X.dim(); ++n) {
    long cnt = X.count(n);
    for (long c = 0; c < cnt; ++c) {
      std::vector<int> t(X.cell(n, c), X.cell(n, c) + n);
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i)
          if (raw_face(raw_face(t, j), i) != raw_face(raw_face(t, i), j - 1))
            throw CategoryError("simplicial identity violated");
    }
  }
}

bool nerve_face(const FinCategory& C, int n, const int* tuple, int i,
                int* out) {
  if (n == 1) {
    // faces of f: x0 -> x1 are objects; d_0 = x1, d_1 = x0
    out[0] = (i == 0) ? C.dst(tuple[0]) : C.src(tuple[0]);
    return true;
  }
  if (i == 0) {
    std::copy(tuple + 1, tuple + n, out);
    return true;
  }
  if (i == n) {
    std::copy(tuple, tuple + n - 1, out);
    return true;
  }
  // inner face: compose f_i and f_{i+1} (1-based positions i, i+1)
  int composed = C.compose(tuple[i], tuple[i - 1]);
  if (C.is_identity(composed)) return false;
  int k = 0;
  for (int j = 0; j < n; ++j) {
    if (j == i - 1) {
      out[k++] = composed;
      ++j;  // skip tuple[i]
    } else {
      out[k++] = tuple[j];
    }
  }
  return true;
}

std::vector<std::vector<long>> simplicial_map_of_functor(
    const FinFunctor& F, const TruncatedSSet& X, const TruncatedSSet& Y) {
  const FinCategory& T = *F.target;
  int d = std::min(X.dim(), Y.dim());
  std::vector<std::vector<long>> img(d + 1);
  std::vector<int> buf;
  for (int n = 0; n <= d; ++n) {
    long cnt = X.count(n);
    img[n].resize(cnt);
    buf.resize(std::max(1, n));
    for (long i = 0; i < cnt; ++i) {
      const int* t = X.cell(n, i);
      bool degenerate = false;
      if (n == 0) {
        buf[0] = F.on_obj(t[0]);
      } else {
        for (int j = 0; j < n; ++j) {
          buf[j] = F.on_mor(t[j]);
          if (T.is_identity(buf[j])) degenerate = true;
        }
      }
      if (degenerate) {
        img[n][i] = -1;
      } else {
        long y = Y.index_of(n, buf.data());
        if (y < 0) throw CategoryError("functor image cell missing in target nerve");
        img[n][i] = y;
      }
    }
  }
  return img;
}

}  // namespace plfg
