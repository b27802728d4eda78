#include <catch2/catch_amalgamated.hpp>
#include <vector>

#include "infw/fas.hpp"
#include "infw/kendall.hpp"
#include "infw/rng.hpp"
#include "oracles.hpp"

using namespace infw;

TEST_CASE("kendall embedding of canonical permutations") {
  REQUIRE(kendall_embed(Permutation({1, 2, 3})) == KendallVec{-1, -1, -1});
  REQUIRE(kendall_embed(Permutation({3, 2, 1})) == KendallVec{1, 1, 1});
  REQUIRE(kendall_embed(Permutation({2, 1, 3})) == KendallVec{1, -1, -1});
}

TEST_CASE("kendall loss") {
  const Permutation id({1, 2, 3});
  REQUIRE(kendall_loss(id, id) == 0.0);
  REQUIRE(kendall_loss(id, Permutation({3, 2, 1})) == 6.0);
  REQUIRE(kendall_loss(id, Permutation({2, 1, 3})) == 2.0);
  REQUIRE_THROWS_AS(kendall_loss(id, Permutation({1, 2})), std::invalid_argument);
}

TEST_CASE("kendall loss counts discordant pairs twice") {
  RngStream rng(41);
  for (int m = 2; m <= 7; ++m) {
    for (int t = 0; t < 30; ++t) {
      std::vector<int> ry(m), rz(m);
      for (int i = 0; i < m; ++i) ry[i] = rz[i] = i + 1;
      for (int i = m - 1; i > 0; --i) {
        std::swap(ry[i], ry[rng.uniform_int(i + 1)]);
        std::swap(rz[i], rz[rng.uniform_int(i + 1)]);
      }
      const Permutation y(ry), z(rz);
      int discordant = 0;
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
          if ((y.rank(i) < y.rank(j)) != (z.rank(i) < z.rank(j))) ++discordant;
      REQUIRE(kendall_loss(y, z) == 2.0 * discordant);
    }
  }
}

TEST_CASE("every embedding satisfies the transitivity constraints, m <= 6") {
  for (int m = 2; m <= 6; ++m) {
    const auto constraints = transitivity_polytope(m);
    for (const auto& sigma : all_permutations(m)) {
      const KendallVec phi = kendall_embed(sigma);
      for (const auto& tc : constraints) REQUIRE(tc.satisfied(phi));
    }
  }
}

TEST_CASE("transitive closure adds implied pairs") {
  // 0 before 1 and 1 before 2 implies 0 before 2
  const PartialOrder po = transitive_closure({{0, 1, -1}, {1, 2, -1}}, 3);
  REQUIRE(po.sign(0, 1) == -1);
  REQUIRE(po.sign(1, 2) == -1);
  REQUIRE(po.sign(0, 2) == -1);
  REQUIRE(po.fixed_count() == 3);
}

TEST_CASE("transitive closure of nothing is unconstrained") {
  const PartialOrder po = transitive_closure({}, 4);
  REQUIRE(po.fixed_count() == 0);
}

TEST_CASE("contradictory pairs are a cycle error") {
  REQUIRE_THROWS_AS(transitive_closure({{0, 1, -1}, {0, 1, 1}}, 2),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(transitive_closure({{0, 1, -1}, {1, 2, -1}, {0, 2, 1}}, 3),
                    std::invalid_argument);
}

TEST_CASE("transitive closure is idempotent") {
  RngStream rng(42);
  for (int t = 0; t < 200; ++t) {
    const int m = 3 + static_cast<int>(rng.uniform_int(4));
    // random subset of a random total order stays acyclic
    std::vector<int> ranks(m);
    for (int i = 0; i < m; ++i) ranks[i] = i + 1;
    for (int i = m - 1; i > 0; --i)
      std::swap(ranks[i], ranks[rng.uniform_int(i + 1)]);
    const KendallVec phi = kendall_embed(Permutation(ranks));
    std::vector<PairSign> kept;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (rng.bernoulli(0.5))
          kept.push_back({i, j, static_cast<int>(phi[pair_index(i, j, m)])});
    const PartialOrder once = transitive_closure(kept, m);
    const PartialOrder twice = transitive_closure(once);
    REQUIRE(once.signs == twice.signs);
    // closure never contradicts the generating embedding
    REQUIRE(once.admits(phi));
  }
}

TEST_CASE("pair indexing round-trips") {
  for (int m = 2; m <= 9; ++m) {
    int k = 0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j, ++k) {
        REQUIRE(pair_index(i, j, m) == k);
        const auto p = pair_from_index(k, m);
        REQUIRE(p.i == i);
        REQUIRE(p.j == j);
      }
    REQUIRE(k == pair_count(m));
  }
}

TEST_CASE("permutation validation") {
  REQUIRE_THROWS_AS(Permutation({1, 1, 3}), std::invalid_argument);
  REQUIRE_THROWS_AS(Permutation({0, 1, 2}), std::invalid_argument);
  REQUIRE(Permutation::identity(4).order() == std::vector<int>{0, 1, 2, 3});
}
