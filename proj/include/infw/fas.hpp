#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "infw/common.hpp"
#include "infw/kendall.hpp"
#include "infw/simplex.hpp"

namespace infw {

// Objective of the pairwise-ordering problem
//   argmin_sigma sum_{i<j} c_ij * sign(rank(i) - rank(j)).
struct FasObjective {
  int m = 0;
  std::vector<double> c;

  FasObjective() = default;
  FasObjective(int m_, std::vector<double> c_) : m(m_), c(std::move(c_)) {
    require(m >= 1, "FasObjective: m must be positive");
    require(static_cast<int>(c.size()) == pair_count(m),
            "FasObjective: size mismatch");
    for (double v : c)
      require(std::isfinite(v), "FasObjective: entries must be finite");
  }

  bool zero() const {
    for (double v : c)
      if (v != 0.0) return false;
    return true;
  }

  double value_of(const KendallVec& phi) const { return dot(c, phi); }
};

struct FasSolution {
  Permutation sigma;
  double value = 0.0;
  bool integral = true;
  KendallVec vertex;  // LP primal point; empty on the brute-force path
};

// Exact minimizer over all permutations compatible with the constraint.
// Ties -> lexicographically smallest rank vector.
inline FasSolution fas_bruteforce(const FasObjective& obj,
                                  const PartialOrder& constraint) {
  require(obj.m <= 9, "fas_bruteforce: capped at m <= 9");
  require(constraint.m == obj.m, "fas_bruteforce: constraint size mismatch");
  FasSolution best;
  bool found = false;
  std::vector<int> r(obj.m);
  for (int i = 0; i < obj.m; ++i) r[i] = i + 1;
  do {
    Permutation sigma(r);
    KendallVec phi = kendall_embed(sigma);
    if (!constraint.admits(phi)) continue;
    const double v = obj.value_of(phi);
    if (!found || v < best.value) {
      best.sigma = std::move(sigma);
      best.value = v;
      found = true;
    }
  } while (std::next_permutation(r.begin(), r.end()));
  if (!found)
    throw std::invalid_argument("fas_bruteforce: infeasible constraint");
  return best;
}

// One two-sided transitivity constraint: -1 <= x_ij + x_jk - x_ik <= 1,
// expressed by the pair indices of (i,j), (j,k), (i,k), i<j<k.
struct TripleConstraint {
  int i, j, k;
  int p_ij, p_jk, p_ik;

  double expression(const KendallVec& x) const {
    return x[p_ij] + x[p_jk] - x[p_ik];
  }
  bool satisfied(const KendallVec& x, double tol = 1e-9) const {
    const double e = expression(x);
    return e >= -1.0 - tol && e <= 1.0 + tol;
  }
};

inline std::vector<TripleConstraint> transitivity_polytope(int m) {
  require(m >= 2, "transitivity_polytope: need m >= 2");
  std::vector<TripleConstraint> out;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k)
        out.push_back({i, j, k, pair_index(i, j, m), pair_index(j, k, m),
                       pair_index(i, k, m)});
  return out;
}

inline constexpr double kIntegralTol = 1e-7;

// Orders items by ascending row sums of the antisymmetric extension of x;
// ties -> smaller item index first. Recovers sigma exactly when x is the
// embedding of sigma.
inline Permutation fas_round(const KendallVec& x, int m) {
  require(static_cast<int>(x.size()) == pair_count(m), "fas_round: size mismatch");
  std::vector<double> rowsum(m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const double v = x[pair_index(i, j, m)];
      rowsum[i] += v;
      rowsum[j] -= v;
    }
  std::vector<int> items(m);
  for (int i = 0; i < m; ++i) items[i] = i;
  std::stable_sort(items.begin(), items.end(),
                   [&](int a, int b) { return rowsum[a] < rowsum[b]; });
  std::vector<int> ranks(m);
  for (int pos = 0; pos < m; ++pos) ranks[items[pos]] = pos + 1;
  return Permutation(std::move(ranks));
}

// Relaxation over the canonical polytope (transitivity constraints
// intersected with the box [-1,1]^{m_e}); fixed coordinates become tight
// bounds. Returns a vertex; the integral flag reports whether every entry is
// within 1e-7 of +-1, in which case the row-sum ordering recovers the exact
// minimizer.
inline FasSolution fas_lp(const FasObjective& obj, const PartialOrder& constraint) {
  require(obj.m >= 2, "fas_lp: need m >= 2");
  require(constraint.m == obj.m, "fas_lp: constraint size mismatch");
  const int me = pair_count(obj.m);
  const auto triples = transitivity_polytope(obj.m);
  const int nr = 2 * static_cast<int>(triples.size());

  LinearProgram lp;
  lp.objective = Eigen::Map<const Eigen::VectorXd>(obj.c.data(), me);
  lp.constraints = Eigen::MatrixXd::Zero(nr, me);
  lp.relations.assign(nr, Relation::LE);
  lp.rhs = Eigen::VectorXd::Ones(nr);
  lp.lower = Eigen::VectorXd::Constant(me, -1.0);
  lp.upper = Eigen::VectorXd::Constant(me, 1.0);
  for (std::size_t t = 0; t < triples.size(); ++t) {
    const auto& tc = triples[t];
    const int r = 2 * static_cast<int>(t);
    lp.constraints(r, tc.p_ij) = 1.0;
    lp.constraints(r, tc.p_jk) = 1.0;
    lp.constraints(r, tc.p_ik) = -1.0;
    lp.constraints.row(r + 1) = -lp.constraints.row(r);
  }
  for (int k = 0; k < me; ++k)
    if (constraint.signs[k] != 0) {
      lp.lower(k) = constraint.signs[k];
      lp.upper(k) = constraint.signs[k];
    }

  const SimplexSolution sol = lp_solve(lp);
  if (sol.status == LpStatus::Infeasible)
    throw std::invalid_argument("fas_lp: infeasible fixed coordinates");
  if (sol.status != LpStatus::Optimal)
    throw std::runtime_error("fas_lp: solver did not reach optimality");

  FasSolution out;
  out.vertex.assign(sol.x.data(), sol.x.data() + me);
  out.integral = true;
  for (double v : out.vertex)
    if (std::abs(std::abs(v) - 1.0) > kIntegralTol) {
      out.integral = false;
      break;
    }
  out.sigma = fas_round(out.vertex, obj.m);
  out.value = sol.objective;
  return out;
}

namespace detail {

// Round a fractional point to a permutation that honors the partial order:
// repeatedly place the constraint-available item with the smallest row sum
// (ties -> smaller index).
inline Permutation constrained_round(const KendallVec& x, const PartialOrder& po) {
  const int m = po.m;
  std::vector<double> rowsum(m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const double v = x[pair_index(i, j, m)];
      rowsum[i] += v;
      rowsum[j] -= v;
    }
  std::vector<int> ranks(m, 0);
  for (int pos = 1; pos <= m; ++pos) {
    int pick = -1;
    for (int i = 0; i < m; ++i) {
      if (ranks[i] != 0) continue;
      bool ready = true;
      for (int j = 0; j < m && ready; ++j)
        if (j != i && ranks[j] == 0 && po.sign(j, i) == -1) ready = false;
      if (!ready) continue;
      if (pick < 0 || rowsum[i] < rowsum[pick]) pick = i;
    }
    if (pick < 0)
      throw std::invalid_argument("constrained_round: inconsistent order");
    ranks[pick] = pos;
  }
  return Permutation(std::move(ranks));
}

}  // namespace detail

// Dispatch: exact enumeration for small m, LP relaxation plus
// constraint-aware rounding otherwise. Always returns a feasible permutation.
inline FasSolution fas_solve(const FasObjective& obj, const PartialOrder& constraint) {
  if (obj.zero()) {
    FasSolution out;
    out.sigma = Permutation::identity(obj.m);
    out.value = 0.0;
    if (!constraint.admits(kendall_embed(out.sigma)))
      out.sigma = detail::constrained_round(KendallVec(pair_count(obj.m), 0.0),
                                            constraint);
    out.value = obj.value_of(kendall_embed(out.sigma));
    return out;
  }
  if (obj.m <= 7) return fas_bruteforce(obj, constraint);
  FasSolution lp = fas_lp(obj, constraint);
  if (lp.integral && constraint.admits(kendall_embed(lp.sigma))) return lp;
  FasSolution out;
  out.sigma = detail::constrained_round(lp.vertex, constraint);
  out.integral = false;
  out.vertex = lp.vertex;
  out.value = obj.value_of(kendall_embed(out.sigma));
  return out;
}

inline FasSolution fas_solve(const FasObjective& obj) {
  return fas_solve(obj, PartialOrder::unconstrained(obj.m));
}

// Quicksort with the pairwise comparator "i before j iff placing i first
// lowers the objective for that pair" (antisymmetric extension c~_ij > 0;
// ties -> smaller index). Deterministic middle pivot.
inline Permutation fas_sort_heuristic(const FasObjective& obj) {
  const int m = obj.m;
  auto ctilde = [&](int i, int j) {  // i != j
    if (i < j) return obj.c[pair_index(i, j, m)];
    return -obj.c[pair_index(j, i, m)];
  };
  auto before = [&](int i, int j) {
    const double v = ctilde(i, j);
    if (v != 0.0) return v > 0.0;
    return i < j;
  };
  std::vector<int> items(m);
  for (int i = 0; i < m; ++i) items[i] = i;
  std::vector<int> tmp;
  auto qsort = [&](auto&& self, int lo, int hi) -> void {
    if (hi - lo <= 1) return;
    const int pivot = items[lo + (hi - lo) / 2];
    tmp.clear();
    std::vector<int> right;
    for (int t = lo; t < hi; ++t) {
      if (items[t] == pivot) continue;
      if (before(items[t], pivot))
        tmp.push_back(items[t]);
      else
        right.push_back(items[t]);
    }
    const int split = lo + static_cast<int>(tmp.size());
    std::copy(tmp.begin(), tmp.end(), items.begin() + lo);
    items[split] = pivot;
    std::copy(right.begin(), right.end(), items.begin() + split + 1);
    self(self, lo, split);
    self(self, split + 1, hi);
  };
  qsort(qsort, 0, m);
  std::vector<int> ranks(m);
  for (int pos = 0; pos < m; ++pos) ranks[items[pos]] = pos + 1;
  return Permutation(std::move(ranks));
}

}  // namespace infw
