#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "infw/common.hpp"
#include "infw/fas.hpp"
#include "infw/kendall.hpp"
#include "infw/rng.hpp"

namespace infw {

// Observed per-step values of the alternation objective
// sum_i alpha_i <phi(z), phi(y_i)>, for monotonicity checks.
using StepTrace = std::function<void(double)>;

namespace detail {

inline KendallVec weighted_sum(std::span<const double> alpha,
                               const std::vector<KendallVec>& ys, int me) {
  KendallVec s(me, 0.0);
  for (std::size_t i = 0; i < ys.size(); ++i)
    for (int k = 0; k < me; ++k) s[k] += alpha[i] * ys[i][k];
  return s;
}

inline FasObjective negated(int m, const KendallVec& v, double scale) {
  KendallVec c(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) c[k] = -scale * v[k];
  return FasObjective(m, std::move(c));
}

struct AlternationState {
  KendallVec z;
  std::vector<KendallVec> ys;
  bool operator==(const AlternationState& o) const {
    return z == o.z && ys == o.ys;
  }
};

}  // namespace detail

// Infimum-rule alternation: z-step maximizes <phi(z), sum_i alpha_i phi(y_i)>
// over all permutations, y_i-steps maximize alpha_i <phi(y_i), phi(z)> over
// the members of S_i. Initial phi(y_i) puts 0 on unconstrained coordinates.
// Stops at a fixpoint of the embedding tuple or after max_iters.
inline Permutation il_predict_ranking(std::span<const double> alpha,
                                      std::span<const PartialOrder> sets,
                                      int max_iters = 20,
                                      const StepTrace& trace = {}) {
  require(alpha.size() == sets.size(), "il_predict_ranking: length mismatch");
  require(!sets.empty(), "il_predict_ranking: empty sample list");
  const int m = sets[0].m;
  const int me = pair_count(m);

  std::vector<KendallVec> ys;
  ys.reserve(sets.size());
  for (const auto& s : sets) {
    require(s.m == m, "il_predict_ranking: mixed item counts");
    ys.push_back(s.relaxed());
  }

  Permutation z = Permutation::identity(m);
  KendallVec last_phi_z;
  std::vector<KendallVec> last_ys;
  for (int it = 0; it < max_iters; ++it) {
    KendallVec mean = detail::weighted_sum(alpha, ys, me);
    z = fas_solve(detail::negated(m, mean, 1.0)).sigma;
    KendallVec phi_z = kendall_embed(z);
    if (trace) trace(dot(phi_z, mean));

    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (alpha[i] == 0.0) continue;  // zero weight: leave y_i untouched
      ys[i] = kendall_embed(
          fas_solve(detail::negated(m, phi_z, alpha[i]), sets[i]).sigma);
    }
    if (trace) trace(dot(phi_z, detail::weighted_sum(alpha, ys, me)));

    if (it > 0 && phi_z == last_phi_z && ys == last_ys) break;
    last_phi_z = std::move(phi_z);
    last_ys = ys;
  }
  return z;
}

struct SpRankingResult {
  Permutation z;
  bool stalled = false;
};

// Saddle-seeking variant: the y_i-step minimizes alpha_i <phi(y_i), phi(z)>.
// A revisited state means no stable pair exists; the current z is returned
// with the stall flag raised.
inline SpRankingResult sp_predict_ranking(std::span<const double> alpha,
                                          std::span<const PartialOrder> sets,
                                          int max_iters = 20) {
  require(alpha.size() == sets.size(), "sp_predict_ranking: length mismatch");
  require(!sets.empty(), "sp_predict_ranking: empty sample list");
  const int m = sets[0].m;
  const int me = pair_count(m);

  std::vector<KendallVec> ys;
  ys.reserve(sets.size());
  for (const auto& s : sets) {
    require(s.m == m, "sp_predict_ranking: mixed item counts");
    ys.push_back(s.relaxed());
  }

  SpRankingResult out;
  out.z = Permutation::identity(m);
  std::vector<detail::AlternationState> visited;
  for (int it = 0; it < max_iters; ++it) {
    KendallVec mean = detail::weighted_sum(alpha, ys, me);
    out.z = fas_solve(detail::negated(m, mean, 1.0)).sigma;
    KendallVec phi_z = kendall_embed(out.z);

    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (alpha[i] == 0.0) continue;
      // minimize alpha_i <xi, phi(z)>  <=>  fas objective +alpha_i phi(z)
      ys[i] = kendall_embed(
          fas_solve(detail::negated(m, phi_z, -alpha[i]), sets[i]).sigma);
    }

    detail::AlternationState state{phi_z, ys};
    if (!visited.empty() && visited.back() == state) break;  // saddle point
    for (const auto& past : visited)
      if (past == state) {
        out.stalled = true;
        return out;
      }
    visited.push_back(std::move(state));
  }
  return out;
}

// Per-set center estimate: constrained minimizers of n_samples
// standard-normal objectives, deduplicated, averaged.
inline KendallVec ranking_set_center(const PartialOrder& set, int n_samples,
                                     RngStream& rng) {
  require(n_samples >= 1, "ranking_set_center: need n_samples >= 1");
  const int me = pair_count(set.m);
  std::vector<KendallVec> found;
  for (int s = 0; s < n_samples; ++s) {
    KendallVec c(me);
    for (int k = 0; k < me; ++k) c[k] = rng.normal();
    KendallVec phi = kendall_embed(fas_solve(FasObjective(set.m, c), set).sigma);
    bool seen = false;
    for (const auto& f : found)
      if (f == phi) {
        seen = true;
        break;
      }
    if (!seen) found.push_back(std::move(phi));
  }
  KendallVec center(me, 0.0);
  for (const auto& f : found)
    for (int k = 0; k < me; ++k) center[k] += f[k] / found.size();
  return center;
}

inline Permutation ac_predict_from_centers(std::span<const double> alpha,
                                           const std::vector<KendallVec>& centers,
                                           int m) {
  require(alpha.size() == centers.size(), "ac_predict: length mismatch");
  const int me = pair_count(m);
  KendallVec mean(me, 0.0);
  for (std::size_t i = 0; i < centers.size(); ++i)
    for (int k = 0; k < me; ++k) mean[k] += alpha[i] * centers[i][k];
  return fas_solve(detail::negated(m, mean, 1.0)).sigma;
}

inline Permutation ac_predict_ranking(std::span<const double> alpha,
                                      std::span<const PartialOrder> sets,
                                      int n_samples, RngStream& rng) {
  require(alpha.size() == sets.size(), "ac_predict_ranking: length mismatch");
  require(!sets.empty(), "ac_predict_ranking: empty sample list");
  const int m = sets[0].m;
  std::vector<KendallVec> centers;
  centers.reserve(sets.size());
  for (const auto& s : sets) centers.push_back(ranking_set_center(s, n_samples, rng));
  return ac_predict_from_centers(alpha, centers, m);
}

}  // namespace infw
