#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "infw/common.hpp"

namespace infw {

// Subset of a finite output space, bit z set <=> output z is a member.
using Subset = std::uint32_t;

inline int subset_size(Subset s) { return std::popcount(s); }
inline bool subset_has(Subset s, int z) { return (s >> z) & 1u; }

// Loss matrix over a finite output space. Proper: zero on the diagonal,
// strictly positive off it.
struct FiniteLoss {
  int m = 0;
  std::vector<double> values;  // row-major, values[z*m + y] = loss(z, y)

  FiniteLoss() = default;
  FiniteLoss(int m_, std::vector<double> v) : m(m_), values(std::move(v)) {
    require(m >= 1 && m <= 24, "FiniteLoss: need 1 <= m <= 24");
    require(static_cast<int>(values.size()) == m * m,
            "FiniteLoss: matrix size mismatch");
    for (int z = 0; z < m; ++z)
      for (int y = 0; y < m; ++y) {
        const double v_zy = values[z * m + y];
        require(std::isfinite(v_zy) && v_zy >= 0.0,
                "FiniteLoss: entries must be finite and non-negative");
        if (z == y)
          require(v_zy == 0.0, "FiniteLoss: diagonal must be zero");
        else
          require(v_zy > 0.0, "FiniteLoss: off-diagonal must be positive");
      }
  }

  double operator()(int z, int y) const { return values[z * m + y]; }

  static FiniteLoss zero_one(int m) {
    std::vector<double> v(m * m, 1.0);
    for (int z = 0; z < m; ++z) v[z * m + z] = 0.0;
    return FiniteLoss(m, std::move(v));
  }

  FiniteLoss scaled(double t) const {
    std::vector<double> v = values;
    for (double& e : v) e *= t;
    return FiniteLoss(m, std::move(v));
  }
};

// Probability map over non-empty subsets of the output space.
struct WeakDist {
  int m = 0;
  std::vector<std::pair<Subset, double>> atoms;

  WeakDist() = default;
  WeakDist(int m_, std::vector<std::pair<Subset, double>> a)
      : m(m_), atoms(std::move(a)) {
    require(m >= 1 && m <= 24, "WeakDist: need 1 <= m <= 24");
    require(!atoms.empty(), "WeakDist: empty support");
    double total = 0.0;
    for (const auto& [s, p] : atoms) {
      require(s != 0, "WeakDist: charged subsets must be non-empty");
      require((s >> m) == 0, "WeakDist: subset out of range");
      require(p >= 0.0, "WeakDist: negative probability");
      total += p;
    }
    require(std::abs(total - 1.0) <= 1e-12, "WeakDist: probabilities must sum to 1");
  }

  // Intersection of all charged sets (atoms with zero mass are ignored).
  Subset support_intersection() const {
    Subset inter = ~0u;
    for (const auto& [s, p] : atoms)
      if (p > 0.0) inter &= s;
    return inter & ((m == 32 ? 0u : (1u << m)) - 1u);
  }
};

enum class Rule { IL, AC, SP };

inline double infimum_risk(int z, const WeakDist& tau, const FiniteLoss& loss) {
  double r = 0.0;
  for (const auto& [s, p] : tau.atoms) {
    double best = std::numeric_limits<double>::infinity();
    for (int y = 0; y < loss.m; ++y)
      if (subset_has(s, y)) best = std::min(best, loss(z, y));
    r += p * best;
  }
  return r;
}

inline double average_risk(int z, const WeakDist& tau, const FiniteLoss& loss) {
  double r = 0.0;
  for (const auto& [s, p] : tau.atoms) {
    double sum = 0.0;
    for (int y = 0; y < loss.m; ++y)
      if (subset_has(s, y)) sum += loss(z, y);
    r += p * sum / subset_size(s);
  }
  return r;
}

inline double supremum_risk(int z, const WeakDist& tau, const FiniteLoss& loss) {
  double r = 0.0;
  for (const auto& [s, p] : tau.atoms) {
    double worst = 0.0;
    for (int y = 0; y < loss.m; ++y)
      if (subset_has(s, y)) worst = std::max(worst, loss(z, y));
    r += p * worst;
  }
  return r;
}

// rho_ac(y) = sum_S tau(S) 1{y in S} / |S|
inline std::vector<double> ac_marginal(const WeakDist& tau) {
  std::vector<double> rho(tau.m, 0.0);
  for (const auto& [s, p] : tau.atoms) {
    const double w = p / subset_size(s);
    for (int y = 0; y < tau.m; ++y)
      if (subset_has(s, y)) rho[y] += w;
  }
  return rho;
}

inline double risk(int z, const WeakDist& tau, const FiniteLoss& loss, Rule rule) {
  switch (rule) {
    case Rule::IL: return infimum_risk(z, tau, loss);
    case Rule::AC: return average_risk(z, tau, loss);
    case Rule::SP: return supremum_risk(z, tau, loss);
  }
  return 0.0;
}

// Argmin of the rule's risk, ties broken by smallest output index.
inline int predict(const WeakDist& tau, const FiniteLoss& loss, Rule rule) {
  int best = 0;
  double best_risk = risk(0, tau, loss, rule);
  for (int z = 1; z < loss.m; ++z) {
    const double r = risk(z, tau, loss, rule);
    if (r < best_risk) {
      best = z;
      best_risk = r;
    }
  }
  return best;
}

// Minimum-variability disambiguation: the IL prediction together with the
// per-set assignment it induces.
struct Disambiguation {
  int y_star = 0;
  std::vector<std::pair<Subset, int>> per_set;  // (charged set, chosen member)
  double risk = 0.0;
};

inline Disambiguation disambiguate(const WeakDist& tau, const FiniteLoss& loss) {
  Disambiguation d;
  d.y_star = predict(tau, loss, Rule::IL);
  for (const auto& [s, p] : tau.atoms) {
    int pick = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int y = 0; y < loss.m; ++y)
      if (subset_has(s, y) && loss(d.y_star, y) < best) {
        best = loss(d.y_star, y);
        pick = y;
      }
    d.per_set.emplace_back(s, pick);
    d.risk += p * best;
  }
  return d;
}

// eta = 1 - max_{z not in S_x} P(z in S); nullopt when the support
// intersection S_x is not a singleton (ambiguous weak distribution).
inline std::optional<double> ambiguity_eta(const WeakDist& tau) {
  const Subset inter = tau.support_intersection();
  if (subset_size(inter) != 1) return std::nullopt;
  double worst = 0.0;
  for (int z = 0; z < tau.m; ++z) {
    if (subset_has(inter, z)) continue;
    double p_in = 0.0;
    for (const auto& [s, p] : tau.atoms)
      if (subset_has(s, z)) p_in += p;
    worst = std::max(worst, p_in);
  }
  return 1.0 - worst;
}

// nu = log max over (y, z, z' != z) of loss(z,y)/loss(z,z'); zero-numerator
// terms are skipped (they cannot dominate a supremum of positive ratios).
inline double discrepancy_nu(const FiniteLoss& loss) {
  double best = 0.0;
  for (int z = 0; z < loss.m; ++z) {
    double denom = std::numeric_limits<double>::infinity();
    for (int zp = 0; zp < loss.m; ++zp)
      if (zp != z) denom = std::min(denom, loss(z, zp));
    for (int y = 0; y < loss.m; ++y) {
      if (loss(z, y) == 0.0) continue;
      best = std::max(best, loss(z, y) / denom);
    }
  }
  return std::log(best);
}

// C = e^nu / eta. Throws when tau is ambiguous.
inline double comparison_constant(const FiniteLoss& loss, const WeakDist& tau) {
  const auto eta = ambiguity_eta(tau);
  require(eta.has_value(), "comparison_constant: ambiguous weak distribution");
  return std::exp(discrepancy_nu(loss)) / *eta;
}

// Empirically tightest constant: max over z != y* of
// loss(z, y*) / (R_S(z) - R_S(y*)), by enumeration. +infinity when some
// denominator vanishes with a non-zero numerator.
inline double tightest_constant(const FiniteLoss& loss, const WeakDist& tau) {
  const Subset inter = tau.support_intersection();
  require(subset_size(inter) == 1,
          "tightest_constant: ambiguous weak distribution");
  const int y_star = std::countr_zero(inter);
  const double base = infimum_risk(y_star, tau, loss);
  double best = 0.0;
  for (int z = 0; z < loss.m; ++z) {
    if (z == y_star) continue;
    const double num = loss(z, y_star);
    const double den = infimum_risk(z, tau, loss) - base;
    if (den <= 0.0) {
      if (num > 0.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    best = std::max(best, num / den);
  }
  return best;
}

}  // namespace infw
