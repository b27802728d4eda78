// Test-only oracles: independent brute-force routes used to freeze expected
// values. These deliberately avoid the library's closed forms and solver
// paths wherever they exist.
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include "infw/fas.hpp"
#include "infw/kendall.hpp"
#include "infw/multilabel.hpp"
#include "infw/pointwise.hpp"
#include "infw/regression.hpp"
#include "infw/rng.hpp"

namespace oracles {

// The worked three-output instance: loss(a,b)=loss(a,c)=1, loss(b,c)=2,
// weights 5/8 on {a,b,c} and 1/8 each on {c},{a,c},{b,c}.
inline infw::FiniteLoss demo_loss() {
  return infw::FiniteLoss(3, {0, 1, 1, 1, 0, 2, 1, 2, 0});
}

inline infw::WeakDist demo_tau() {
  return infw::WeakDist(3, {{0b111u, 5.0 / 8},
                            {0b100u, 1.0 / 8},
                            {0b101u, 1.0 / 8},
                            {0b110u, 1.0 / 8}});
}

// Random proper loss with off-diagonal entries in [0.1, 3].
inline infw::FiniteLoss random_loss(int m, infw::RngStream& rng,
                                    bool symmetric = false) {
  std::vector<double> v(m * m, 0.0);
  for (int z = 0; z < m; ++z)
    for (int y = 0; y < m; ++y) {
      if (z == y) continue;
      if (symmetric && y < z) {
        v[z * m + y] = v[y * m + z];
        continue;
      }
      v[z * m + y] = rng.uniform(0.1, 3.0);
    }
  return infw::FiniteLoss(m, std::move(v));
}

// Random weak distribution over non-empty subsets.
inline infw::WeakDist random_weakdist(int m, infw::RngStream& rng) {
  const int atoms = 1 + static_cast<int>(rng.uniform_int(4));
  std::vector<std::pair<infw::Subset, double>> a;
  for (int t = 0; t < atoms; ++t) {
    infw::Subset s = 0;
    while (s == 0)
      s = static_cast<infw::Subset>(rng.uniform_int(1u << m));
    a.emplace_back(s, rng.uniform(0.05, 1.0));
  }
  double total = 0.0;
  for (auto& [s, p] : a) total += p;
  for (auto& [s, p] : a) p /= total;
  // fix the sum exactly
  double acc = 0.0;
  for (std::size_t t = 0; t + 1 < a.size(); ++t) acc += a[t].second;
  a.back().second = 1.0 - acc;
  return infw::WeakDist(m, std::move(a));
}

// Strictly non-ambiguous instance: every charged set contains y0, the
// singleton {y0} carries positive mass, and the intersection is exactly {y0}.
inline infw::WeakDist random_nonambiguous_weakdist(int m, int y0,
                                                   infw::RngStream& rng) {
  const int extra = 1 + static_cast<int>(rng.uniform_int(3));
  std::vector<std::pair<infw::Subset, double>> a;
  a.emplace_back(infw::Subset(1u << y0), rng.uniform(0.1, 1.0));
  for (int t = 0; t < extra; ++t) {
    infw::Subset s = static_cast<infw::Subset>(rng.uniform_int(1u << m));
    s |= 1u << y0;
    a.emplace_back(s, rng.uniform(0.05, 1.0));
  }
  double total = 0.0;
  for (auto& [s, p] : a) total += p;
  for (auto& [s, p] : a) p /= total;
  double acc = 0.0;
  for (std::size_t t = 0; t + 1 < a.size(); ++t) acc += a[t].second;
  a.back().second = 1.0 - acc;
  return infw::WeakDist(m, std::move(a));
}

// --- Hamming balls by explicit membership -------------------------------

inline std::vector<infw::TagVector> ball_members(const infw::HammingBall& ball) {
  std::vector<infw::TagVector> out;
  const int m = ball.center.m;
  const int r = static_cast<int>(std::floor(ball.radius));
  for (std::uint32_t code = 0; code < (1u << m); ++code)
    if (std::popcount(code ^ ball.center.bits) <= r)
      out.push_back(infw::TagVector(code, m));
  return out;
}

inline int ball_inf_by_enum(const infw::TagVector& z, const infw::HammingBall& b) {
  int best = z.m + 1;
  for (const auto& y : ball_members(b)) best = std::min(best, infw::hamming(z, y));
  return best;
}

inline int ball_sup_by_enum(const infw::TagVector& z, const infw::HammingBall& b) {
  int worst = 0;
  for (const auto& y : ball_members(b)) worst = std::max(worst, infw::hamming(z, y));
  return worst;
}

inline double ball_avg_by_enum(const infw::TagVector& z, const infw::HammingBall& b) {
  double sum = 0.0;
  const auto members = ball_members(b);
  for (const auto& y : members) sum += infw::hamming(z, y);
  return sum / members.size();
}

// --- Ranking: explicit member lists and exact empirical risks ------------

inline std::vector<infw::Permutation> members(const infw::PartialOrder& po) {
  std::vector<infw::Permutation> out;
  for (const auto& sigma : infw::all_permutations(po.m))
    if (po.admits(infw::kendall_embed(sigma))) out.push_back(sigma);
  return out;
}

enum class RankRule { IL, AC, SP };

// sum_i alpha_i * extremal/mean Kendall loss of z over the members of S_i.
inline double exact_rank_risk(const infw::Permutation& z,
                              const std::vector<double>& alpha,
                              const std::vector<infw::PartialOrder>& sets,
                              RankRule rule) {
  double total = 0.0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto mem = members(sets[i]);
    double v = 0.0;
    if (rule == RankRule::AC) {
      for (const auto& y : mem) v += infw::kendall_loss(z, y);
      v /= mem.size();
    } else {
      // IL takes the loss extremum matching the weight sign, SP the opposite
      const bool take_min = (rule == RankRule::IL) == (alpha[i] >= 0.0);
      v = infw::kendall_loss(z, mem[0]);
      for (const auto& y : mem) {
        const double l = infw::kendall_loss(z, y);
        v = take_min ? std::min(v, l) : std::max(v, l);
      }
    }
    total += alpha[i] * v;
  }
  return total;
}

// argmin over all permutations; ties -> lexicographically smallest.
inline infw::Permutation exact_rank_argmin(const std::vector<double>& alpha,
                                           const std::vector<infw::PartialOrder>& sets,
                                           RankRule rule) {
  infw::Permutation best;
  double best_risk = 0.0;
  bool first = true;
  for (const auto& z : infw::all_permutations(sets[0].m)) {
    const double r = exact_rank_risk(z, alpha, sets, rule);
    if (first || r < best_risk) {
      best = z;
      best_risk = r;
      first = false;
    }
  }
  return best;
}

// --- Regression grid oracle ----------------------------------------------

// Grid search for the minimizer of sum_i alpha_i * d(z, S_i) with the
// squared point-to-set distance computed inline (independent of the
// library's distance and piecewise machinery). Positive weights only.
inline double grid_search_il(const std::vector<double>& alpha,
                             const std::vector<infw::IntervalUnion>& sets,
                             double step = 1e-4, double pad = 1.0) {
  double lo = sets[0].lo_min(), hi = sets[0].hi_max();
  for (const auto& s : sets) {
    lo = std::min(lo, s.lo_min());
    hi = std::max(hi, s.hi_max());
  }
  lo -= pad;
  hi += pad;
  auto objective = [&](double z) {
    double total = 0.0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& p : sets[i].parts()) {
        const double clamped = std::min(std::max(z, p.lo), p.hi);
        best = std::min(best, (z - clamped) * (z - clamped));
      }
      total += alpha[i] * best;
    }
    return total;
  };
  double best_z = lo, best_v = objective(lo);
  const long steps = static_cast<long>((hi - lo) / step);
  for (long k = 1; k <= steps; ++k) {
    const double z = lo + k * step;
    const double v = objective(z);
    if (v < best_v) {
      best_v = v;
      best_z = z;
    }
  }
  return best_z;
}

}  // namespace oracles
