#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "infw/classification.hpp"
#include "infw/kendall.hpp"
#include "infw/kernel_ridge.hpp"
#include "infw/multilabel.hpp"
#include "infw/rng.hpp"

namespace infw {

// S always contains y; every other class joins independently with
// probability c.
inline LabelSet corrupt_uniform_class(int y, int m, double c, RngStream& rng) {
  require(y >= 0 && y < m, "corrupt_uniform_class: bad label");
  require(c >= 0.0 && c <= 1.0, "corrupt_uniform_class: bad c");
  LabelSet s = label_singleton(y);
  for (int z = 0; z < m; ++z) {
    if (z == y) continue;
    if (rng.bernoulli(c)) s |= label_singleton(z);
  }
  return s;
}

// Only the majority class gets corrupted; everything else stays a singleton.
inline LabelSet corrupt_skewed_class(int y, int y_major, int m, double c,
                                     RngStream& rng) {
  require(y >= 0 && y < m && y_major >= 0 && y_major < m,
          "corrupt_skewed_class: bad label");
  if (y != y_major) return label_singleton(y);
  return corrupt_uniform_class(y, m, c, rng);
}

// Keep the pairwise comparison (i,j) iff the normalized score distance
// d_ij = |v_i - v_j| / max_kl |v_k - v_l| is strictly below c, then close
// transitively. Deterministic given the scores.
inline PartialOrder corrupt_ranking(const Permutation& y,
                                    std::span<const double> scores, double c) {
  const int m = y.size();
  require(static_cast<int>(scores.size()) == m, "corrupt_ranking: size mismatch");
  double dmax = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      dmax = std::max(dmax, std::abs(scores[i] - scores[j]));
  const KendallVec phi = kendall_embed(y);
  std::vector<PairSign> kept;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const double d = dmax > 0.0 ? std::abs(scores[i] - scores[j]) / dmax : 0.0;
      if (d < c)
        kept.push_back({i, j, static_cast<int>(phi[pair_index(i, j, m)])});
    }
  return transitive_closure(kept, m);
}

// Ball supervision: radius r ~ U([0, c*(m+1)]); floor(r) coordinates sampled
// with replacement are flipped (each sampled coordinate once) to form the
// center, so hamming(y, center) <= floor(r) and y stays inside the ball.
inline HammingBall corrupt_multilabel_ball(const TagVector& y, double c,
                                           RngStream& rng) {
  require(c >= 0.0 && c <= 1.0, "corrupt_multilabel_ball: bad c");
  const double r = rng.uniform(0.0, c * (y.m + 1));
  const int flips = static_cast<int>(std::floor(r));
  std::uint32_t flipped = 0;
  for (int t = 0; t < flips; ++t)
    flipped |= 1u << rng.uniform_int(static_cast<std::uint64_t>(y.m));
  return HammingBall(TagVector(y.bits ^ flipped, y.m), r);
}

// Ranking of items by descending score, ties -> smaller item first.
inline Permutation ordering_from_scores(std::span<const double> scores) {
  const int m = static_cast<int>(scores.size());
  std::vector<int> items(m);
  for (int i = 0; i < m; ++i) items[i] = i;
  std::stable_sort(items.begin(), items.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });
  std::vector<int> ranks(m);
  for (int pos = 0; pos < m; ++pos) ranks[items[pos]] = pos + 1;
  return Permutation(std::move(ranks));
}

// Items scored by random lines v_i(x) = a_i x + b_i over x ~ U[0,1].
struct OrderingLinesData {
  std::vector<double> x;             // inputs, one scalar feature
  std::vector<Permutation> labels;
  std::vector<std::vector<double>> scores;  // per point, per item
};

inline OrderingLinesData generate_ordering_lines(int m, int n,
                                                 std::span<const double> a,
                                                 std::span<const double> b,
                                                 RngStream& rng) {
  require(m >= 2 && n >= 1, "generate_ordering_lines: need m >= 2, n >= 1");
  require(static_cast<int>(a.size()) == m && static_cast<int>(b.size()) == m,
          "generate_ordering_lines: coefficient size mismatch");
  OrderingLinesData data;
  for (int t = 0; t < n; ++t) {
    const double x = rng.uniform01();
    std::vector<double> v(m);
    for (int i = 0; i < m; ++i) v[i] = a[i] * x + b[i];
    data.labels.push_back(ordering_from_scores(v));
    data.scores.push_back(std::move(v));
    data.x.push_back(x);
  }
  return data;
}

inline OrderingLinesData generate_ordering_lines(int m, int n, RngStream& rng) {
  std::vector<double> a(m), b(m);
  for (int i = 0; i < m; ++i) a[i] = rng.normal();
  for (int i = 0; i < m; ++i) b[i] = rng.normal();
  return generate_ordering_lines(m, n, a, b, rng);
}

// Gaussian class blobs with an exact label histogram: class 0 holds
// ceil(majority_frac * n) points, the rest are spread evenly. Means sit on a
// circle of radius 2.5 in the first two coordinates.
struct BlobsData {
  FeatureMatrix X;
  std::vector<int> labels;
};

inline BlobsData generate_unbalanced_blobs(int n, int m, double majority_frac,
                                           int d, RngStream& rng) {
  require(n >= 1 && m >= 2 && d >= 2, "generate_unbalanced_blobs: bad sizes");
  require(majority_frac >= 1.0 / m && majority_frac < 1.0,
          "generate_unbalanced_blobs: majority_frac out of range");
  std::vector<int> counts(m, 0);
  counts[0] = static_cast<int>(std::ceil(majority_frac * n - 1e-9));
  require(counts[0] <= n, "generate_unbalanced_blobs: majority exceeds n");
  const int rest = n - counts[0];
  for (int k = 1; k < m; ++k) counts[k] = rest / (m - 1);
  for (int k = 1; k <= rest % (m - 1); ++k) ++counts[k];

  Matrix X(n, d);
  std::vector<int> labels(n);
  const double radius = 2.5;
  int row = 0;
  for (int k = 0; k < m; ++k) {
    const double angle = 2.0 * 3.14159265358979323846 * k / m;
    for (int t = 0; t < counts[k]; ++t, ++row) {
      labels[row] = k;
      X(row, 0) = radius * std::cos(angle) + rng.normal();
      X(row, 1) = radius * std::sin(angle) + rng.normal();
      for (int col = 2; col < d; ++col) X(row, col) = rng.normal();
    }
  }
  return {FeatureMatrix(std::move(X)), std::move(labels)};
}

}  // namespace infw
