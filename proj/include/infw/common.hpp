#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace infw {

// Number of unordered pairs {i,j}, i<j, over m items.
inline int pair_count(int m) { return m * (m - 1) / 2; }

// Index of the pair (i,j), 0 <= i < j < m, in lexicographic order
// (0,1),(0,2),...,(0,m-1),(1,2),...
inline int pair_index(int i, int j, int m) {
  return i * m - i * (i + 1) / 2 + (j - i - 1);
}

struct PairIndices {
  int i, j;
};

inline PairIndices pair_from_index(int k, int m) {
  int i = 0;
  int row = m - 1;
  while (k >= row) {
    k -= row;
    --row;
    ++i;
  }
  return {i, i + 1 + k};
}

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace infw
