#include "plfg/groupcore.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>

namespace plfg {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int p_part(int n, int p) {
  int q = 1;
  while (n % p == 0) {
    n /= p;
    q *= p;
  }
  return q;
}

FiniteGroup::FiniteGroup(std::vector<int> mul_table, int order, bool strict)
    : n_(order), mul_(std::move(mul_table)) {
  if (n_ <= 0 || mul_.size() != static_cast<size_t>(n_) * n_)
    throw InvalidGroupTable("multiplication table has wrong size");
  for (size_t i = 0; i < mul_.size(); ++i)
    if (mul_[i] < 0 || mul_[i] >= n_)
      throw InvalidGroupTable("table entry out of range at cell " +
                              std::to_string(i / n_) + "," +
                              std::to_string(i % n_));
  for (int g = 0; g < n_; ++g) {
    if (mul(0, g) != g || mul(g, 0) != g)
      throw InvalidGroupTable("index 0 is not a two-sided identity at " +
                              std::to_string(g));
  }
  inv_.assign(n_, -1);
  for (int g = 0; g < n_; ++g) {
    for (int h = 0; h < n_; ++h) {
      if (mul(g, h) == 0) {
        if (mul(h, g) != 0)
          throw InvalidGroupTable("one-sided inverse at " + std::to_string(g));
        inv_[g] = h;
        break;
      }
    }
    if (inv_[g] < 0)
      throw InvalidGroupTable("no inverse for element " + std::to_string(g));
  }
  auto check = [&](int a, int b, int c) {
    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
      throw InvalidGroupTable("associativity fails at (" + std::to_string(a) +
                              "," + std::to_string(b) + "," +
                              std::to_string(c) + ")");
  };
  if (n_ <= 64 || strict) {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c) check(a, b, c);
  } else {
    std::mt19937 rng(0x5eed);
    std::uniform_int_distribution<int> d(0, n_ - 1);
    long samples = 10L * n_ * n_;
    for (long i = 0; i < samples; ++i) check(d(rng), d(rng), d(rng));
  }
}

int FiniteGroup::element_order(int g) const {
  int k = 1, x = g;
  while (x != 0) {
    x = mul(x, g);
    ++k;
  }
  return k;
}

static Perm compose_perm(const Perm& a, const Perm& b) {
  // (a*b)(i) = a(b(i))
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

static std::string cycle_notation(const Perm& p) {
  std::string s;
  std::vector<bool> seen(p.size(), false);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    s += '(';
    size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) s += ' ';
      s += std::to_string(j);
      first = false;
      j = static_cast<size_t>(p[j]);
    }
    s += ')';
  }
  return s.empty() ? "()" : s;
}

FiniteGroup FiniteGroup::from_generators(int points,
                                         const std::vector<Perm>& gens,
                                         int cap) {
  Perm id(points);
  std::iota(id.begin(), id.end(), 0);
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != points)
      throw InvalidGroupTable("generator degree mismatch");
    std::vector<bool> hit(points, false);
    for (int x : g) {
      if (x < 0 || x >= points || hit[x])
        throw InvalidGroupTable("generator is not a bijection");
      hit[x] = true;
    }
  }

  // Breadth-first closure from the identity, generators in the given order.
  std::vector<Perm> elems{id};
  std::map<Perm, int> index{{id, 0}};
  std::queue<int> todo;
  todo.push(0);
  while (!todo.empty()) {
    int cur = todo.front();
    todo.pop();
    for (const auto& g : gens) {
      Perm prod = compose_perm(elems[cur], g);
      if (index.emplace(prod, static_cast<int>(elems.size())).second) {
        elems.push_back(prod);
        if (static_cast<int>(elems.size()) > cap)
          throw ClosureExceedsCap("closure exceeds cap " + std::to_string(cap));
        todo.push(static_cast<int>(elems.size()) - 1);
      }
    }
  }

  int n = static_cast<int>(elems.size());
  std::vector<int> table(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      table[static_cast<size_t>(a) * n + b] = index.at(compose_perm(elems[a], elems[b]));
  FiniteGroup G(std::move(table), n);
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = cycle_notation(elems[i]);
  G.set_labels(std::move(labels));
  return G;
}

bool Subgroup::contains(int g) const {
  return std::binary_search(elems.begin(), elems.end(), g);
}

bool Subgroup::contains(const Subgroup& other) const {
  return std::includes(elems.begin(), elems.end(), other.elems.begin(),
                       other.elems.end());
}

bool Subgroup::proper_subgroup_of(const Subgroup& other) const {
  return order() < other.order() && other.contains(*this);
}

int canonical_coset_rep(const FiniteGroup& G, int rep, const Subgroup& H) {
  int best = rep;
  for (int h : H.elems) best = std::min(best, G.mul(rep, h));
  return best;
}

Subgroup trivial_subgroup(const FiniteGroup& G) { return Subgroup{&G, {0}}; }

Subgroup full_subgroup(const FiniteGroup& G) {
  Subgroup S{&G, std::vector<int>(G.order())};
  std::iota(S.elems.begin(), S.elems.end(), 0);
  return S;
}

Subgroup subgroup_generated_by(const FiniteGroup& G,
                               const std::vector<int>& gens) {
  std::set<int> elems{0};
  std::queue<int> todo;
  todo.push(0);
  for (int g : gens)
    if (elems.insert(g).second) todo.push(g);
  while (!todo.empty()) {
    int cur = todo.front();
    todo.pop();
    for (int g : gens) {
      int prod = G.mul(cur, g);
      if (elems.insert(prod).second) todo.push(prod);
    }
  }
  // gens may not include inverses explicitly; in a finite group powers do.
  return Subgroup{&G, std::vector<int>(elems.begin(), elems.end())};
}

Subgroup conjugate_subgroup(const FiniteGroup& G, int g, const Subgroup& P) {
  std::vector<int> e;
  e.reserve(P.elems.size());
  for (int x : P.elems) e.push_back(G.conj(g, x));
  std::sort(e.begin(), e.end());
  return Subgroup{&G, std::move(e)};
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& G, int cap) {
  return all_subgroups_of(full_subgroup(G), cap);
}

std::vector<Subgroup> all_subgroups_of(const Subgroup& H, int cap) {
  const FiniteGroup& G = *H.ambient;
  std::set<std::vector<int>> found;
  found.insert({0});
  std::queue<std::vector<int>> todo;
  todo.push({0});
  while (!todo.empty()) {
    std::vector<int> cur = todo.front();
    todo.pop();
    Subgroup K{&G, cur};
    for (int g : H.elems) {
      if (K.contains(g)) continue;
      std::vector<int> gens = cur;
      gens.push_back(g);
      Subgroup bigger = subgroup_generated_by(G, gens);
      if (found.insert(bigger.elems).second) {
        if (static_cast<int>(found.size()) > cap)
          throw SubgroupCountExceedsCap("subgroup count exceeds cap " +
                                        std::to_string(cap));
        todo.push(bigger.elems);
      }
    }
  }
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (auto& e : found) out.push_back(Subgroup{&G, e});
  std::sort(out.begin(), out.end());
  return out;
}

Subgroup sylow(const FiniteGroup& G, int p) {
  int target = p_part(G.order(), p);
  if (target == 1) return trivial_subgroup(G);
  auto subs = all_subgroups(G);
  for (const auto& H : subs)  // sorted by (order, elems): first hit is minimal
    if (H.order() == target) return H;
  throw std::logic_error("no Sylow subgroup found");  // unreachable
}

std::vector<int> transporter(const FiniteGroup& G, const Subgroup& P,
                             const Subgroup& Q) {
  std::vector<int> out;
  for (int g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (int x : P.elems) {
      if (!Q.contains(G.conj(g, x))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(g);
  }
  return out;
}

Subgroup centralizer(const FiniteGroup& G, const Subgroup& P) {
  std::vector<int> out;
  for (int g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (int x : P.elems) {
      if (G.mul(g, x) != G.mul(x, g)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(g);
  }
  return Subgroup{&G, std::move(out)};
}

Subgroup normalizer(const FiniteGroup& G, const Subgroup& P) {
  std::vector<int> out;
  for (int g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (int x : P.elems) {
      if (!P.contains(G.conj(g, x))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(g);
  }
  return Subgroup{&G, std::move(out)};
}

Subgroup center(const Subgroup& P) {
  const FiniteGroup& G = *P.ambient;
  std::vector<int> out;
  for (int g : P.elems) {
    bool ok = true;
    for (int x : P.elems) {
      if (G.mul(g, x) != G.mul(x, g)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(g);
  }
  return Subgroup{&G, std::move(out)};
}

Subgroup intersect(const Subgroup& A, const Subgroup& B) {
  std::vector<int> out;
  std::set_intersection(A.elems.begin(), A.elems.end(), B.elems.begin(),
                        B.elems.end(), std::back_inserter(out));
  return Subgroup{A.ambient, std::move(out)};
}

Subgroup p_prime_part(const Subgroup& C, int p) {
  const FiniteGroup& G = *C.ambient;
  std::vector<int> elems;
  for (int g : C.elems)
    if (G.element_order(g) % p != 0) elems.push_back(g);
  Subgroup result{&G, elems};
  for (int a : elems)
    for (int b : elems)
      if (!result.contains(G.mul(a, b)))
        throw NotASubgroup("p'-elements are not closed under multiplication");
  return result;
}

Subgroup omega_p(const Subgroup& H, int p) {
  const FiniteGroup& G = *H.ambient;
  std::vector<int> gens;
  for (int g : H.elems)
    if (G.element_order(g) == p) gens.push_back(g);
  return subgroup_generated_by(G, gens);
}

bool is_abelian(const Subgroup& H) {
  const FiniteGroup& G = *H.ambient;
  for (int a : H.elems)
    for (int b : H.elems)
      if (G.mul(a, b) != G.mul(b, a)) return false;
  return true;
}

bool is_elementary_abelian(const Subgroup& H, int p) {
  const FiniteGroup& G = *H.ambient;
  for (int g : H.elems)
    if (g != 0 && G.element_order(g) != p) return false;
  return is_abelian(H);
}

std::vector<Subgroup> elementary_abelian_subgroups(const Subgroup& S, int p,
                                                   bool include_trivial) {
  std::vector<Subgroup> out;
  for (const auto& H : all_subgroups_of(S)) {
    if (H.order() == 1 && !include_trivial) continue;
    if (is_elementary_abelian(H, p)) out.push_back(H);
  }
  return out;
}

QuotientGroup quotient_group(const Subgroup& H, const Subgroup& N) {
  const FiniteGroup& G = *H.ambient;
  if (!H.contains(N)) throw NotASubgroup("quotient: N not inside H");
  for (int h : H.elems)
    for (int n : N.elems)
      if (!N.contains(G.conj(h, n)))
        throw NotASubgroup("quotient: N not normal in H");
  std::set<int> repset;
  for (int h : H.elems) repset.insert(canonical_coset_rep(G, h, N));
  std::vector<int> reps(repset.begin(), repset.end());  // identity coset first
  std::vector<int> of_elem(G.order(), -1);
  for (int h : H.elems)
    of_elem[h] = static_cast<int>(
        std::lower_bound(reps.begin(), reps.end(),
                         canonical_coset_rep(G, h, N)) -
        reps.begin());
  int m = static_cast<int>(reps.size());
  std::vector<int> table(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      table[static_cast<size_t>(i) * m + j] = of_elem[G.mul(reps[i], reps[j])];
  return QuotientGroup{FiniteGroup(std::move(table), m), std::move(reps),
                       std::move(of_elem)};
}

}  // namespace plfg
