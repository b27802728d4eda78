#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <span>
#include <vector>

#include "infw/common.hpp"
#include "infw/pointwise.hpp"

namespace infw {

// Tag assignment in {-1,+1}^m, bit j set <=> tag j is +1. m <= 20.
struct TagVector {
  std::uint32_t bits = 0;
  int m = 0;

  TagVector() = default;
  TagVector(std::uint32_t b, int m_) : bits(b), m(m_) {
    require(m >= 1 && m <= 20, "TagVector: need 1 <= m <= 20");
    require((b >> m) == 0, "TagVector: bits out of range");
  }

  static TagVector from_signs(const std::vector<int>& signs) {
    std::uint32_t b = 0;
    for (std::size_t j = 0; j < signs.size(); ++j) {
      require(signs[j] == 1 || signs[j] == -1, "TagVector: entries must be +-1");
      if (signs[j] == 1) b |= 1u << j;
    }
    return TagVector(b, static_cast<int>(signs.size()));
  }

  int sign(int j) const { return (bits >> j) & 1u ? 1 : -1; }

  std::vector<int> signs() const {
    std::vector<int> v(m);
    for (int j = 0; j < m; ++j) v[j] = sign(j);
    return v;
  }

  bool operator==(const TagVector& o) const { return bits == o.bits && m == o.m; }
};

// Lexicographic order on coordinates with -1 < +1.
inline bool tag_lex_less(const TagVector& a, const TagVector& b) {
  const std::uint32_t d = a.bits ^ b.bits;
  if (d == 0) return false;
  const int j = std::countr_zero(d);
  return ((a.bits >> j) & 1u) == 0;
}

inline int hamming(const TagVector& y, const TagVector& z) {
  require(y.m == z.m, "hamming: dimension mismatch");
  return std::popcount(y.bits ^ z.bits);
}

// Positive/negative tag evidence: tags in pos forced +1, tags in neg forced -1.
struct TagConstraint {
  std::uint32_t pos = 0;
  std::uint32_t neg = 0;
  int m = 0;

  TagConstraint() = default;
  TagConstraint(std::uint32_t p, std::uint32_t n, int m_) : pos(p), neg(n), m(m_) {
    require(m >= 1 && m <= 20, "TagConstraint: need 1 <= m <= 20");
    require((pos & neg) == 0, "TagConstraint: pos and neg must be disjoint");
    require((pos >> m) == 0 && (neg >> m) == 0, "TagConstraint: out of range");
  }

  int free_count() const { return m - std::popcount(pos | neg); }
};

struct HammingBall {
  TagVector center;
  double radius = 0.0;

  HammingBall() = default;
  HammingBall(TagVector c, double r) : center(c), radius(r) {
    require(r >= 0.0, "HammingBall: radius must be non-negative");
  }
};

// f_j = sum_{i: j in P_i} alpha_i - sum_{i: j in N_i} alpha_i
inline std::vector<double> tag_scores(std::span<const double> alpha,
                                      std::span<const TagConstraint> constraints,
                                      int m) {
  require(alpha.size() == constraints.size(), "tag_scores: length mismatch");
  std::vector<double> f(m, 0.0);
  for (std::size_t i = 0; i < constraints.size(); ++i)
    for (int j = 0; j < m; ++j) {
      if ((constraints[i].pos >> j) & 1u) f[j] += alpha[i];
      if ((constraints[i].neg >> j) & 1u) f[j] -= alpha[i];
    }
  return f;
}

// y_j = +1 iff score_j > epsilon (strict; a score exactly at the threshold
// yields -1).
inline TagVector sign_predict(std::span<const double> scores, double epsilon) {
  require(epsilon >= 0.0, "sign_predict: epsilon must be non-negative");
  std::uint32_t b = 0;
  for (std::size_t j = 0; j < scores.size(); ++j)
    if (scores[j] > epsilon) b |= 1u << j;
  return TagVector(b, static_cast<int>(scores.size()));
}

// +1 on the k largest scores, ties -> smaller index wins.
inline TagVector topk_predict(std::span<const double> scores, int k) {
  const int m = static_cast<int>(scores.size());
  require(k >= 0 && k <= m, "topk_predict: k out of range");
  std::vector<int> order(m);
  for (int j = 0; j < m; ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });
  std::uint32_t b = 0;
  for (int t = 0; t < k; ++t) b |= 1u << order[t];
  return TagVector(b, m);
}

// Closed forms over the ball B(center, r) = {y : hamming(center, y) <= r}.
// Hamming distances are integers, so the ball equals the one of radius
// floor(r).
inline int ball_infimum_loss(const TagVector& z, const HammingBall& ball) {
  const int h = hamming(z, ball.center);
  const int r = static_cast<int>(std::floor(ball.radius));
  return std::max(0, h - r);
}

inline int ball_supremum_loss(const TagVector& z, const HammingBall& ball) {
  const int h = hamming(z, ball.center);
  const int r = static_cast<int>(std::floor(ball.radius));
  return std::min(z.m, h + r);
}

namespace detail {

// Mean Hamming distance from z to the members of B(c, s) depends only on
// (hamming(z, c), s, m); table computed by enumeration.
inline double ball_average_from_distance(int h, int s, int m) {
  struct Key {
    int m, s;
    bool operator<(const Key& o) const {
      return m != o.m ? m < o.m : s < o.s;
    }
  };
  static std::mutex mu;
  static std::map<Key, std::vector<double>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& row = cache[{m, s}];
  if (row.empty()) {
    row.assign(m + 1, 0.0);
    std::vector<double> sums(m + 1, 0.0);
    std::vector<double> counts(m + 1, 0.0);
    // center = all zeros; z at distance h = h low bits set
    const std::uint32_t total = 1u << m;
    for (std::uint32_t y = 0; y < total; ++y) {
      if (std::popcount(y) > s) continue;
      for (int hh = 0; hh <= m; ++hh) {
        const std::uint32_t z = (hh == 0) ? 0u : ((1u << hh) - 1u);
        sums[hh] += std::popcount(y ^ z);
        counts[hh] += 1.0;
      }
    }
    for (int hh = 0; hh <= m; ++hh) row[hh] = sums[hh] / counts[hh];
  }
  return row[h];
}

}  // namespace detail

inline double ball_average_loss(const TagVector& z, const HammingBall& ball) {
  require(z.m == ball.center.m, "ball_average_loss: dimension mismatch");
  require(z.m <= 12, "ball_average_loss: enumeration capped at m <= 12");
  const int s = std::min(z.m, static_cast<int>(std::floor(ball.radius)));
  return detail::ball_average_from_distance(hamming(z, ball.center), s, z.m);
}

// Exhaustive argmin over {-1,+1}^m of sum_i alpha_i * loss(z, ball_i);
// ties -> lexicographically smallest with -1 < +1.
inline TagVector ball_predict(std::span<const double> alpha,
                              std::span<const HammingBall> balls, Rule rule,
                              int m) {
  require(alpha.size() == balls.size(), "ball_predict: length mismatch");
  require(m >= 1, "ball_predict: m must be positive");
  if (rule == Rule::AC)
    require(m <= 12, "ball_predict: AC rule capped at m <= 12");
  else
    require(m <= 20, "ball_predict: capped at m <= 20");

  std::vector<int> radii(balls.size());
  for (std::size_t i = 0; i < balls.size(); ++i)
    radii[i] = static_cast<int>(std::floor(balls[i].radius));

  TagVector best;
  double best_value = 0.0;
  bool first = true;
  const std::uint32_t total = 1u << m;
  for (std::uint32_t code = 0; code < total; ++code) {
    const TagVector z(code, m);
    double value = 0.0;
    for (std::size_t i = 0; i < balls.size(); ++i) {
      const int h = std::popcount(code ^ balls[i].center.bits);
      double l = 0.0;
      switch (rule) {
        case Rule::IL: l = std::max(0, h - radii[i]); break;
        case Rule::SP: l = std::min(m, h + radii[i]); break;
        case Rule::AC:
          l = detail::ball_average_from_distance(h, std::min(m, radii[i]), m);
          break;
      }
      value += alpha[i] * l;
    }
    if (first || value < best_value ||
        (value == best_value && tag_lex_less(z, best))) {
      best = z;
      best_value = value;
      first = false;
    }
  }
  return best;
}

// Infimum/average/supremum losses under positive/negative tag evidence.
// Relative to the infimum loss, each unconstrained tag adds 0, 1/2 and 1
// respectively.
inline int pn_infimum_loss(const TagVector& z, const TagConstraint& s) {
  require(z.m == s.m, "pn_infimum_loss: dimension mismatch");
  return std::popcount(s.pos & ~z.bits) + std::popcount(s.neg & z.bits);
}

inline double pn_average_loss(const TagVector& z, const TagConstraint& s) {
  return pn_infimum_loss(z, s) + 0.5 * s.free_count();
}

inline int pn_supremum_loss(const TagVector& z, const TagConstraint& s) {
  return pn_infimum_loss(z, s) + s.free_count();
}

}  // namespace infw
