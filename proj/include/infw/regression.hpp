#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "infw/common.hpp"
#include "infw/rng.hpp"

namespace infw {

struct Interval {
  double lo, hi;
};

// Sorted union of disjoint, non-touching closed intervals; the first lo and
// the last hi may be infinite (censoring).
class IntervalUnion {
 public:
  IntervalUnion() = default;

  static IntervalUnion of(std::vector<Interval> parts) {
    require(!parts.empty(), "IntervalUnion: empty");
    for (const auto& p : parts) {
      require(!(std::isnan(p.lo) || std::isnan(p.hi)), "IntervalUnion: NaN bound");
      require(p.lo <= p.hi, "IntervalUnion: lo > hi");
      require(p.lo < std::numeric_limits<double>::infinity() &&
                  p.hi > -std::numeric_limits<double>::infinity(),
              "IntervalUnion: degenerate infinite interval");
    }
    std::sort(parts.begin(), parts.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (const auto& p : parts) {
      if (!merged.empty() && p.lo <= merged.back().hi) {
        merged.back().hi = std::max(merged.back().hi, p.hi);
      } else {
        merged.push_back(p);
      }
    }
    IntervalUnion u;
    u.parts_ = std::move(merged);
    return u;
  }

  static IntervalUnion point(double v) { return of({{v, v}}); }

  const std::vector<Interval>& parts() const { return parts_; }
  int count() const { return static_cast<int>(parts_.size()); }
  double lo_min() const { return parts_.front().lo; }
  double hi_max() const { return parts_.back().hi; }
  bool bounded() const {
    return std::isfinite(lo_min()) && std::isfinite(hi_max());
  }

  bool contains(double z) const {
    for (const auto& p : parts_)
      if (z >= p.lo && z <= p.hi) return true;
    return false;
  }

  double total_length() const {
    double s = 0.0;
    for (const auto& p : parts_) s += p.hi - p.lo;
    return s;
  }

 private:
  std::vector<Interval> parts_;
};

// Squared distance from z to the set: 0 inside, else to the nearest endpoint.
inline double nearest_sq_dist(double z, const IntervalUnion& s) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : s.parts()) {
    if (z >= p.lo && z <= p.hi) return 0.0;
    const double d = z < p.lo ? p.lo - z : z - p.hi;
    best = std::min(best, d * d);
  }
  return best;
}

// Squared distance to the farthest point; requires a bounded set.
inline double farthest_sq_dist(double z, const IntervalUnion& s) {
  require(s.bounded(), "farthest_sq_dist: unbounded set");
  const double a = z - s.lo_min();
  const double b = s.hi_max() - z;
  return std::max(a * a, b * b);
}

// Weighted sum of per-set squared distances as an explicit piecewise
// quadratic, a*z^2 + b*z + c per region; regions.size() == breaks.size() + 1.
struct PiecewiseQuadratic {
  struct Quad {
    double a = 0.0, b = 0.0, c = 0.0;
    double eval(double z) const { return (a * z + b) * z + c; }
  };
  std::vector<double> breaks;
  std::vector<Quad> regions;

  int region_of(double z) const {
    int r = 0;
    while (r < static_cast<int>(breaks.size()) && z > breaks[r]) ++r;
    return r;
  }

  double eval(double z) const { return regions[region_of(z)].eval(z); }
};

namespace detail {

struct QuadDelta {
  double z;
  double a, b, c;
};

// Quadratic (z-e)^2 scaled by w, as coefficient triplet.
inline void add_sq(std::vector<detail::QuadDelta>& ev, double at, double w,
                   double e, int sign) {
  ev.push_back({at, sign * w, sign * w * -2.0 * e, sign * w * e * e});
}

// Piece list of w * nearest_sq_dist(z, s): for each interval, an approach
// parabola on the left (from the previous gap midpoint), zero inside, and a
// departure parabola on the right (until the next gap midpoint).
inline void nearest_pieces(std::vector<QuadDelta>& ev, double w,
                           const IntervalUnion& s) {
  const auto& parts = s.parts();
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < parts.size(); ++t) {
    const auto& p = parts[t];
    if (std::isfinite(p.lo)) {
      const double start = t == 0 ? -inf : 0.5 * (parts[t - 1].hi + p.lo);
      add_sq(ev, start, w, p.lo, +1);
      add_sq(ev, p.lo, w, p.lo, -1);
    }
    if (std::isfinite(p.hi)) {
      add_sq(ev, p.hi, w, p.hi, +1);
      if (t + 1 < parts.size())
        add_sq(ev, 0.5 * (p.hi + parts[t + 1].lo), w, p.hi, -1);
    }
  }
}

// Piece list of w * farthest_sq_dist: switches at the hull midpoint.
inline void farthest_pieces(std::vector<QuadDelta>& ev, double w,
                            const IntervalUnion& s) {
  const double neg_inf = -std::numeric_limits<double>::infinity();
  const double mid = 0.5 * (s.lo_min() + s.hi_max());
  add_sq(ev, neg_inf, w, s.hi_max(), +1);
  add_sq(ev, mid, w, s.hi_max(), -1);
  add_sq(ev, mid, w, s.lo_min(), +1);
}

inline PiecewiseQuadratic assemble(std::vector<QuadDelta> events) {
  std::sort(events.begin(), events.end(),
            [](const QuadDelta& a, const QuadDelta& b) { return a.z < b.z; });
  PiecewiseQuadratic f;
  PiecewiseQuadratic::Quad cur;
  std::size_t t = 0;
  while (t < events.size() && !std::isfinite(events[t].z)) {
    cur.a += events[t].a;
    cur.b += events[t].b;
    cur.c += events[t].c;
    ++t;
  }
  while (t < events.size()) {
    const double z = events[t].z;
    f.breaks.push_back(z);
    f.regions.push_back(cur);
    while (t < events.size() && events[t].z == z) {
      cur.a += events[t].a;
      cur.b += events[t].b;
      cur.c += events[t].c;
      ++t;
    }
  }
  f.regions.push_back(cur);
  return f;
}

// Global minimum with smallest-z tie rule: scan regions left to right,
// evaluating each finite break once and each interior stationary point.
inline double minimize(const PiecewiseQuadratic& f) {
  require(!f.regions.empty(), "minimize: empty objective");
  double best_z = 0.0;
  double best_v = std::numeric_limits<double>::infinity();
  bool found = false;
  const int nr = static_cast<int>(f.regions.size());
  // candidates arrive in ascending z; values within a 1e-12 relative band
  // count as ties, which the earlier (smaller) z wins
  auto consider = [&](double z, double v) {
    const double tol = 1e-12 * (1.0 + std::abs(v) + std::abs(best_v));
    if (!found || v < best_v - tol) {
      best_z = z;
      best_v = v;
      found = true;
    }
  };
  for (int r = 0; r < nr; ++r) {
    const auto& q = f.regions[r];
    const double lo = r == 0 ? -std::numeric_limits<double>::infinity()
                             : f.breaks[r - 1];
    const double hi = r == nr - 1 ? std::numeric_limits<double>::infinity()
                                  : f.breaks[r];
    const bool left_open = !std::isfinite(lo);
    const bool right_open = !std::isfinite(hi);
    if ((left_open || right_open) &&
        (q.a < 0.0 || (q.a == 0.0 && ((left_open && q.b > 0.0) ||
                                      (right_open && q.b < 0.0)))))
      throw std::domain_error("minimize: objective unbounded below");
    if (!left_open) consider(lo, q.eval(lo));
    if (q.a > 0.0) {
      const double v = -q.b / (2.0 * q.a);
      if (v > lo && v < hi) consider(v, q.eval(v));
    }
  }
  // rightmost finite break already handled as the last region's left edge
  require(found, "minimize: no candidate point");
  return best_z;
}

}  // namespace detail

// Objective sum_i alpha_i d_i(z) with d_i the nearest squared distance for
// alpha_i >= 0 and the farthest one for alpha_i < 0.
inline PiecewiseQuadratic build_il_objective(std::span<const double> alpha,
                                             std::span<const IntervalUnion> sets) {
  require(alpha.size() == sets.size(), "build_il_objective: length mismatch");
  require(!sets.empty(), "build_il_objective: empty sample list");
  std::vector<detail::QuadDelta> events;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (alpha[i] >= 0.0) {
      detail::nearest_pieces(events, alpha[i], sets[i]);
    } else {
      require(sets[i].bounded(),
              "build_il_objective: unbounded set with negative weight");
      detail::farthest_pieces(events, alpha[i], sets[i]);
    }
  }
  return detail::assemble(std::move(events));
}

// Exact global minimizer of the empirical infimum objective; ties -> smallest z.
inline double il_predict_reg(std::span<const double> alpha,
                             std::span<const IntervalUnion> sets) {
  return detail::minimize(build_il_objective(alpha, sets));
}

// Length-weighted mean of interval midpoints; point intervals fall back to a
// plain midpoint average when the set has zero total length.
inline double ac_center(const IntervalUnion& s) {
  require(s.bounded(), "ac_center: unbounded set");
  const double len = s.total_length();
  double num = 0.0;
  if (len > 0.0) {
    for (const auto& p : s.parts())
      num += (p.hi - p.lo) * 0.5 * (p.lo + p.hi);
    return num / len;
  }
  for (const auto& p : s.parts()) num += 0.5 * (p.lo + p.hi);
  return num / s.count();
}

// Stationary point of sum_i alpha_i (z - c(S_i))^2.
inline double ac_predict_reg(std::span<const double> alpha,
                             std::span<const IntervalUnion> sets) {
  require(alpha.size() == sets.size(), "ac_predict_reg: length mismatch");
  require(!sets.empty(), "ac_predict_reg: empty sample list");
  double wsum = 0.0, num = 0.0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    wsum += alpha[i];
    num += alpha[i] * ac_center(sets[i]);
  }
  require(std::abs(wsum) > 1e-12, "ac_predict_reg: weight sum near zero");
  return num / wsum;
}

// Minimizer of sum_i alpha_i farthest_sq_dist(z, S_i); convex only for
// non-negative weights, which are required.
inline double sp_predict_reg(std::span<const double> alpha,
                             std::span<const IntervalUnion> sets) {
  require(alpha.size() == sets.size(), "sp_predict_reg: length mismatch");
  require(!sets.empty(), "sp_predict_reg: empty sample list");
  std::vector<detail::QuadDelta> events;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    require(alpha[i] >= 0.0, "sp_predict_reg: negative weights unsupported");
    require(sets[i].bounded(), "sp_predict_reg: unbounded set");
    detail::farthest_pieces(events, alpha[i], sets[i]);
  }
  return detail::minimize(detail::assemble(std::move(events)));
}

// Amplitude band [a, b] around |y| with the sign revealed with probability
// p_phase; otherwise the symmetric union [-b,-a] u [a,b] (a clamped at 0,
// merging into [-b, b] when it reaches 0). Always contains y.
inline IntervalUnion phase_loss_sets(double y, double p_phase, double width_lo,
                                     double width_hi, RngStream& rng) {
  require(p_phase >= 0.0 && p_phase <= 1.0, "phase_loss_sets: bad p_phase");
  require(width_lo > 0.0 && width_hi > 0.0, "phase_loss_sets: bad widths");
  const double mag = std::abs(y);
  const double a = std::max(0.0, mag - width_lo * rng.uniform01());
  const double b = mag + width_hi * rng.uniform01();
  const bool phase_known = rng.bernoulli(p_phase);
  if (phase_known) {
    if (y < 0.0) return IntervalUnion::of({{-b, -a}});
    return IntervalUnion::of({{a, b}});
  }
  if (a == 0.0) return IntervalUnion::of({{-b, b}});
  return IntervalUnion::of({{-b, -a}, {a, b}});
}

}  // namespace infw
