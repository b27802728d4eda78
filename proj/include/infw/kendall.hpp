#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "infw/common.hpp"

namespace infw {

// Ranking over m items, ranks[item] in 1..m, rank 1 = placed first.
struct Permutation {
  std::vector<int> ranks;

  Permutation() = default;
  explicit Permutation(std::vector<int> r) : ranks(std::move(r)) {
    const int m = size();
    std::vector<char> seen(m + 1, 0);
    for (int v : ranks) {
      require(v >= 1 && v <= m && !seen[v], "Permutation: not a bijection on 1..m");
      seen[v] = 1;
    }
  }

  static Permutation identity(int m) {
    std::vector<int> r(m);
    std::iota(r.begin(), r.end(), 1);
    return Permutation(std::move(r));
  }

  int size() const { return static_cast<int>(ranks.size()); }
  int rank(int item) const { return ranks[item]; }

  // items listed in rank order
  std::vector<int> order() const {
    std::vector<int> o(size());
    for (int i = 0; i < size(); ++i) o[ranks[i] - 1] = i;
    return o;
  }

  bool operator==(const Permutation& o) const { return ranks == o.ranks; }
  bool operator<(const Permutation& o) const { return ranks < o.ranks; }
};

// Pairwise-sign vector indexed by pairs i<j. Entries of permutation
// embeddings are +-1; partial orders use 0 for unconstrained pairs, and the
// relaxation path produces fractional values.
using KendallVec = std::vector<double>;

// phi(sigma)_{ij} = sign(rank(i) - rank(j)) for i < j; -1 means item i is
// placed before item j.
inline KendallVec kendall_embed(const Permutation& sigma) {
  const int m = sigma.size();
  KendallVec phi(pair_count(m));
  int k = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      phi[k++] = sigma.rank(i) < sigma.rank(j) ? -1.0 : 1.0;
  return phi;
}

inline double dot(const KendallVec& a, const KendallVec& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

// loss(y, z) = m(m-1)/2 - <phi(y), phi(z)>, twice the number of discordant
// pairs.
inline double kendall_loss(const Permutation& y, const Permutation& z) {
  require(y.size() == z.size(), "kendall_loss: size mismatch");
  return pair_count(y.size()) - dot(kendall_embed(y), kendall_embed(z));
}

// Partial order over m items: per-pair signs in {-1,0,+1} (0 = unconstrained),
// stable under transitive closure. sign -1 on pair (i,j) means i is placed
// before j.
struct PartialOrder {
  int m = 0;
  std::vector<std::int8_t> signs;

  PartialOrder() = default;
  PartialOrder(int m_, std::vector<std::int8_t> s) : m(m_), signs(std::move(s)) {
    require(static_cast<int>(signs.size()) == pair_count(m),
            "PartialOrder: size mismatch");
  }

  static PartialOrder unconstrained(int m) {
    return PartialOrder(m, std::vector<std::int8_t>(pair_count(m), 0));
  }

  int sign(int i, int j) const {  // any i != j
    if (i < j) return signs[pair_index(i, j, m)];
    return -signs[pair_index(j, i, m)];
  }

  int fixed_count() const {
    int c = 0;
    for (auto s : signs) c += (s != 0);
    return c;
  }

  bool total() const { return fixed_count() == pair_count(m); }

  bool admits(const KendallVec& phi) const {
    for (std::size_t k = 0; k < signs.size(); ++k)
      if (signs[k] != 0 && phi[k] != static_cast<double>(signs[k])) return false;
    return true;
  }

  // Initial relaxed embedding: fixed coordinates at their sign, rest 0.
  KendallVec relaxed() const {
    KendallVec v(signs.size());
    for (std::size_t k = 0; k < signs.size(); ++k)
      v[k] = static_cast<double>(signs[k]);
    return v;
  }
};

struct PairSign {
  int i, j;   // 0 <= i < j < m
  int sign;   // -1: i before j, +1: j before i
};

// Transitive closure of the strict precedence relation; unreached pairs stay
// 0. Throws on a cycle (inconsistent supervision).
inline PartialOrder transitive_closure(const std::vector<PairSign>& fixed, int m) {
  std::vector<char> before(m * m, 0);  // before[a*m+b]: a placed before b
  for (const auto& p : fixed) {
    require(p.i >= 0 && p.i < p.j && p.j < m, "transitive_closure: bad pair");
    require(p.sign == 1 || p.sign == -1, "transitive_closure: bad sign");
    if (p.sign == -1)
      before[p.i * m + p.j] = 1;
    else
      before[p.j * m + p.i] = 1;
  }
  for (int k = 0; k < m; ++k)
    for (int a = 0; a < m; ++a)
      if (before[a * m + k])
        for (int b = 0; b < m; ++b)
          if (before[k * m + b]) before[a * m + b] = 1;
  std::vector<std::int8_t> signs(pair_count(m), 0);
  for (int i = 0; i < m; ++i) {
    if (before[i * m + i])
      throw std::invalid_argument("transitive_closure: cycle detected");
    for (int j = i + 1; j < m; ++j) {
      if (before[i * m + j] && before[j * m + i])
        throw std::invalid_argument("transitive_closure: cycle detected");
      if (before[i * m + j]) signs[pair_index(i, j, m)] = -1;
      if (before[j * m + i]) signs[pair_index(i, j, m)] = 1;
    }
  }
  return PartialOrder(m, std::move(signs));
}

inline PartialOrder transitive_closure(const PartialOrder& po) {
  std::vector<PairSign> fixed;
  for (int i = 0; i < po.m; ++i)
    for (int j = i + 1; j < po.m; ++j)
      if (po.sign(i, j) != 0) fixed.push_back({i, j, po.sign(i, j)});
  return transitive_closure(fixed, po.m);
}

// All permutations of m items in lexicographic rank-vector order.
inline std::vector<Permutation> all_permutations(int m) {
  std::vector<int> r(m);
  std::iota(r.begin(), r.end(), 1);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation(r));
  } while (std::next_permutation(r.begin(), r.end()));
  return out;
}

}  // namespace infw
