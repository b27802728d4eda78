#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

#include "infw/common.hpp"

namespace infw {

enum class Relation { LE, EQ, GE };

// Dense LP: minimize objective^T x subject to per-row relations and
// per-variable bounds (+-infinity allowed in bounds).
struct LinearProgram {
  Eigen::VectorXd objective;
  Eigen::MatrixXd constraints;  // rows x vars
  std::vector<Relation> relations;
  Eigen::VectorXd rhs;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationCap };

// Basic (vertex) solution: every variable of the slack-extended system is
// either basic or sitting exactly on one of its bounds.
struct SimplexSolution {
  LpStatus status = LpStatus::IterationCap;
  Eigen::VectorXd x;         // structural variables
  double objective = 0.0;
  std::vector<int> basis;    // basic variable indices in the extended system
  int iterations = 0;
};

namespace detail {

class BoundedSimplex {
  static constexpr double kPivotTol = 1e-9;
  static constexpr double kCostTol = 1e-9;
  static constexpr double kFeasTol = 1e-7;
  enum State : char { AtLower, AtUpper, Basic, FreeZero };

 public:
  explicit BoundedSimplex(const LinearProgram& lp) {
    validate(lp);
    nv_ = static_cast<int>(lp.objective.size());
    nr_ = static_cast<int>(lp.rhs.size());
    int slacks = 0;
    for (Relation r : lp.relations)
      if (r != Relation::EQ) ++slacks;
    ntot_ = nv_ + slacks + nr_;  // structural + slacks + one artificial per row
    art0_ = nv_ + slacks;

    A_ = Eigen::MatrixXd::Zero(nr_, ntot_);
    A_.topLeftCorner(nr_, nv_) = lp.constraints;
    lo_.assign(ntot_, 0.0);
    hi_.assign(ntot_, 0.0);
    for (int j = 0; j < nv_; ++j) {
      lo_[j] = lp.lower(j);
      hi_[j] = lp.upper(j);
    }
    int s = nv_;
    const double inf = std::numeric_limits<double>::infinity();
    for (int r = 0; r < nr_; ++r) {
      if (lp.relations[r] == Relation::LE) {
        A_(r, s) = 1.0;
        lo_[s] = 0.0;
        hi_[s] = inf;
        ++s;
      } else if (lp.relations[r] == Relation::GE) {
        A_(r, s) = 1.0;
        lo_[s] = -inf;
        hi_[s] = 0.0;
        ++s;
      }
    }
    b_ = lp.rhs;
    cost_ = Eigen::VectorXd::Zero(ntot_);
    cost_.head(nv_) = lp.objective;
  }

  SimplexSolution solve(int iteration_cap) {
    // Start every non-artificial variable on a bound (or at 0 when free);
    // artificials absorb the row residuals and form the initial basis.
    x_.assign(ntot_, 0.0);
    state_.assign(ntot_, AtLower);
    for (int j = 0; j < art0_; ++j) {
      if (std::isfinite(lo_[j])) {
        x_[j] = lo_[j];
        state_[j] = AtLower;
      } else if (std::isfinite(hi_[j])) {
        x_[j] = hi_[j];
        state_[j] = AtUpper;
      } else {
        x_[j] = 0.0;
        state_[j] = FreeZero;
      }
    }
    Eigen::VectorXd resid = b_;
    for (int j = 0; j < art0_; ++j)
      if (x_[j] != 0.0) resid -= x_[j] * A_.col(j);

    basis_.resize(nr_);
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(ntot_);
    const double inf = std::numeric_limits<double>::infinity();
    for (int r = 0; r < nr_; ++r) {
      const int a = art0_ + r;
      A_(r, a) = 1.0;
      x_[a] = resid(r);
      if (resid(r) >= 0.0) {
        lo_[a] = 0.0;
        hi_[a] = inf;
        phase1(a) = 1.0;
      } else {
        lo_[a] = -inf;
        hi_[a] = 0.0;
        phase1(a) = -1.0;
      }
      basis_[r] = a;
      state_[a] = Basic;
    }
    binv_ = Eigen::MatrixXd::Identity(nr_, nr_);

    SimplexSolution sol;
    int used = 0;

    const LpStatus st1 = run(phase1, iteration_cap, &used, /*phase1=*/true);
    if (st1 == LpStatus::IterationCap) {
      sol.status = LpStatus::IterationCap;
      sol.iterations = used;
      return sol;
    }
    if (objective_of(phase1) > kFeasTol) {
      sol.status = LpStatus::Infeasible;
      sol.iterations = used;
      return sol;
    }
    // Pin artificials to zero for phase 2.
    for (int r = 0; r < nr_; ++r) {
      const int a = art0_ + r;
      lo_[a] = 0.0;
      hi_[a] = 0.0;
      if (state_[a] != Basic) {
        x_[a] = 0.0;
        state_[a] = AtLower;
      } else if (std::abs(x_[a]) <= kFeasTol) {
        x_[a] = 0.0;
      }
    }

    const LpStatus st2 = run(cost_, iteration_cap - used, &used, /*phase1=*/false);
    sol.status = st2;
    sol.iterations = used;
    if (st2 != LpStatus::Optimal) return sol;

    sol.x = Eigen::VectorXd(nv_);
    for (int j = 0; j < nv_; ++j) sol.x(j) = x_[j];
    sol.objective = 0.0;
    for (int j = 0; j < nv_; ++j) sol.objective += cost_(j) * x_[j];
    sol.basis = basis_;
    return sol;
  }

 private:
  static void validate(const LinearProgram& lp) {
    const auto nv = lp.objective.size();
    const auto nr = lp.rhs.size();
    require(nv >= 1, "lp_solve: no variables");
    require(lp.constraints.rows() == nr && lp.constraints.cols() == nv,
            "lp_solve: constraint matrix shape mismatch");
    require(static_cast<Eigen::Index>(lp.relations.size()) == nr,
            "lp_solve: relations size mismatch");
    require(lp.lower.size() == nv && lp.upper.size() == nv,
            "lp_solve: bounds size mismatch");
    require(lp.objective.allFinite(), "lp_solve: non-finite objective");
    require(nr == 0 || (lp.constraints.allFinite() && lp.rhs.allFinite()),
            "lp_solve: non-finite constraints");
    for (Eigen::Index j = 0; j < nv; ++j) {
      require(!std::isnan(lp.lower(j)) && !std::isnan(lp.upper(j)),
              "lp_solve: NaN bound");
      require(lp.lower(j) <= lp.upper(j), "lp_solve: lower > upper");
      require(lp.lower(j) < std::numeric_limits<double>::infinity() &&
                  lp.upper(j) > -std::numeric_limits<double>::infinity(),
              "lp_solve: infinite bound with wrong sign");
    }
  }

  double objective_of(const Eigen::VectorXd& c) const {
    double v = 0.0;
    for (int j = 0; j < ntot_; ++j)
      if (x_[j] != 0.0) v += c(j) * x_[j];
    return v;
  }

  // Bland's rule throughout: entering = smallest eligible index, leaving =
  // smallest blocking variable index. Deterministic and cycle-free.
  LpStatus run(const Eigen::VectorXd& c, int cap, int* used, bool phase1) {
    const double inf = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < cap; ++iter) {
      // dual prices y = c_B^T B^{-1}
      Eigen::VectorXd cb(nr_);
      for (int r = 0; r < nr_; ++r) cb(r) = c(basis_[r]);
      Eigen::VectorXd y = binv_.transpose() * cb;

      int enter = -1;
      int dir = 0;
      for (int j = 0; j < ntot_; ++j) {
        if (state_[j] == Basic) continue;
        if (lo_[j] == hi_[j]) continue;  // fixed variable, never enters
        const double d = c(j) - y.dot(A_.col(j));
        if (state_[j] == AtLower && d < -kCostTol) {
          enter = j;
          dir = +1;
          break;
        }
        if (state_[j] == AtUpper && d > kCostTol) {
          enter = j;
          dir = -1;
          break;
        }
        if (state_[j] == FreeZero && std::abs(d) > kCostTol) {
          enter = j;
          dir = d < 0 ? +1 : -1;
          break;
        }
      }
      if (enter < 0) {
        *used += iter;
        return LpStatus::Optimal;
      }

      Eigen::VectorXd w = binv_ * A_.col(enter);

      // Ratio test: the entering variable moves by t*dir; basic variables
      // move by -t*dir*w. Bound flip of the entering variable competes too.
      double t_best = inf;
      int block_var = -1;   // variable index for Bland tie-break
      int block_row = -1;   // -1 encodes a bound flip
      if (std::isfinite(lo_[enter]) && std::isfinite(hi_[enter])) {
        t_best = hi_[enter] - lo_[enter];
        block_var = enter;
      }
      for (int r = 0; r < nr_; ++r) {
        const double v = dir * w(r);
        const int bj = basis_[r];
        double t = inf;
        if (v > kPivotTol && std::isfinite(lo_[bj]))
          t = (x_[bj] - lo_[bj]) / v;
        else if (v < -kPivotTol && std::isfinite(hi_[bj]))
          t = (x_[bj] - hi_[bj]) / v;
        if (t < t_best - 1e-12 ||
            (t < t_best + 1e-12 && block_var >= 0 && bj < block_var) ||
            (t < t_best + 1e-12 && block_var < 0)) {
          if (t < inf) {
            t_best = std::max(t, 0.0);
            block_var = bj;
            block_row = r;
          }
        }
      }
      if (!std::isfinite(t_best)) {
        *used += iter;
        return phase1 ? LpStatus::Infeasible : LpStatus::Unbounded;
      }

      // apply the step
      for (int r = 0; r < nr_; ++r) x_[basis_[r]] -= t_best * dir * w(r);
      x_[enter] += t_best * dir;

      if (block_row < 0) {
        // bound flip, basis unchanged
        state_[enter] = dir > 0 ? AtUpper : AtLower;
        x_[enter] = dir > 0 ? hi_[enter] : lo_[enter];
        continue;
      }

      const int leave = basis_[block_row];
      const double vi = dir * w(block_row);
      if (vi > 0.0) {
        state_[leave] = AtLower;
        x_[leave] = lo_[leave];
      } else {
        state_[leave] = AtUpper;
        x_[leave] = hi_[leave];
      }
      basis_[block_row] = enter;
      state_[enter] = Basic;

      // B^{-1} update by pivoting on w(block_row)
      const double piv = w(block_row);
      binv_.row(block_row) /= piv;
      for (int r = 0; r < nr_; ++r) {
        if (r == block_row) continue;
        const double f = w(r);
        if (f != 0.0) binv_.row(r) -= f * binv_.row(block_row);
      }
      if ((iter & 0xFF) == 0xFF) refactorize();
    }
    *used += cap;
    return LpStatus::IterationCap;
  }

  void refactorize() {
    Eigen::MatrixXd B(nr_, nr_);
    for (int r = 0; r < nr_; ++r) B.col(r) = A_.col(basis_[r]);
    binv_ = B.partialPivLu().inverse();
    // keep basic values consistent with the nonbasic assignment
    Eigen::VectorXd rhs = b_;
    for (int j = 0; j < ntot_; ++j)
      if (state_[j] != Basic && x_[j] != 0.0) rhs -= x_[j] * A_.col(j);
    Eigen::VectorXd xb = binv_ * rhs;
    for (int r = 0; r < nr_; ++r) x_[basis_[r]] = xb(r);
  }

  int nv_ = 0, nr_ = 0, ntot_ = 0, art0_ = 0;
  Eigen::MatrixXd A_;
  Eigen::VectorXd b_;
  Eigen::VectorXd cost_;
  std::vector<double> lo_, hi_, x_;
  std::vector<char> state_;
  std::vector<int> basis_;
  Eigen::MatrixXd binv_;
};

}  // namespace detail

inline SimplexSolution lp_solve(const LinearProgram& lp, int iteration_cap = 20000) {
  detail::BoundedSimplex solver(lp);
  return solver.solve(iteration_cap);
}

}  // namespace infw
