#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "infw/common.hpp"
#include "infw/kernel_ridge.hpp"

namespace infw {

// Candidate label set over m classes (class z <-> bit z), m <= 64.
using LabelSet = std::uint64_t;

inline bool label_in(LabelSet s, int z) { return (s >> z) & 1ULL; }
inline int label_count(LabelSet s) { return std::popcount(s); }
inline LabelSet label_singleton(int y) { return 1ULL << y; }

struct ClassWeakSample {
  Vector x;
  LabelSet set;
};

inline int loss01(int z, int y) { return z != y ? 1 : 0; }

inline int il_infimum_loss(int z, LabelSet s) {
  require(s != 0, "il_infimum_loss: empty candidate set");
  return label_in(s, z) ? 0 : 1;
}

// argmax_z sum_{i: z in S_i} alpha_i, ties -> smallest class.
inline int il_predict(std::span<const double> alpha,
                      std::span<const LabelSet> sets, int m) {
  require(alpha.size() == sets.size(), "il_predict: length mismatch");
  std::vector<double> score(m, 0.0);
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (int z = 0; z < m; ++z)
      if (label_in(sets[i], z)) score[z] += alpha[i];
  int best = 0;
  for (int z = 1; z < m; ++z)
    if (score[z] > score[best]) best = z;
  return best;
}

// Same with evidence weights alpha_i / |S_i|.
inline int ac_predict(std::span<const double> alpha,
                      std::span<const LabelSet> sets, int m) {
  require(alpha.size() == sets.size(), "ac_predict: length mismatch");
  std::vector<double> score(m, 0.0);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const double w = alpha[i] / label_count(sets[i]);
    for (int z = 0; z < m; ++z)
      if (label_in(sets[i], z)) score[z] += w;
  }
  int best = 0;
  for (int z = 1; z < m; ++z)
    if (score[z] > score[best]) best = z;
  return best;
}

// Only singleton sets carry information; with none, the prediction defaults
// to class 0 and is flagged non-informative.
struct SpPrediction {
  int label = 0;
  bool informative = false;
};

inline SpPrediction sp_predict(std::span<const double> alpha,
                               std::span<const LabelSet> sets, int m) {
  require(alpha.size() == sets.size(), "sp_predict: length mismatch");
  std::vector<double> score(m, 0.0);
  bool any = false;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (label_count(sets[i]) != 1) continue;
    any = true;
    score[std::countr_zero(sets[i])] += alpha[i];
  }
  if (!any) return {0, false};
  int best = 0;
  for (int z = 1; z < m; ++z)
    if (score[z] > score[best]) best = z;
  return {best, true};
}

// Per-sample loss matrices L (n x m) for the precomputed-score training path
// beta = (K + n*lambda*I)^{-1} L; inference takes argmin_z of v(x)^T beta.
inline Matrix il_loss_matrix(std::span<const LabelSet> sets, int m) {
  Matrix L(static_cast<int>(sets.size()), m);
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (int z = 0; z < m; ++z) L(static_cast<int>(i), z) = label_in(sets[i], z) ? 0.0 : 1.0;
  return L;
}

inline Matrix ac_loss_matrix(std::span<const LabelSet> sets, int m) {
  Matrix L(static_cast<int>(sets.size()), m);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const double inv = 1.0 / label_count(sets[i]);
    for (int z = 0; z < m; ++z)
      L(static_cast<int>(i), z) = 1.0 - (label_in(sets[i], z) ? inv : 0.0);
  }
  return L;
}

inline Matrix sp_loss_matrix(std::span<const LabelSet> sets, int m) {
  Matrix L(static_cast<int>(sets.size()), m);
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (int z = 0; z < m; ++z)
      L(static_cast<int>(i), z) = (sets[i] == label_singleton(z)) ? 0.0 : 1.0;
  return L;
}

// argmin over classes of a score row, ties -> smallest class.
inline int argmin_class(const Vector& scores) {
  int best = 0;
  for (int z = 1; z < scores.size(); ++z)
    if (scores(z) < scores(best)) best = z;
  return best;
}

}  // namespace infw
