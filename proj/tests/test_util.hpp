#pragma once

#include <random>

#include "lamogen/instances.hpp"
#include "lamogen/motion.hpp"

namespace lamogen::testutil {

inline InstanceSequence random_dense_sequence(std::mt19937_64& rng, int frames, int fps = 20) {
  InstanceSequence seq(frames, fps);
  for (int t = 0; t < frames; ++t)
    for (AttrId a = 0; a < kAttrCount; ++a) {
      int card = attr_cardinality(attr_fields()[a].kind);
      seq.set(t, a, static_cast<uint8_t>(std::uniform_int_distribution<int>(0, card - 1)(rng)));
    }
  return seq;
}

// Random dense sequence with piecewise-constant runs, closer to real
// annotations than frame-wise noise.
inline InstanceSequence random_runs_sequence(std::mt19937_64& rng, int frames, int fps = 20) {
  InstanceSequence seq(frames, fps);
  for (AttrId a = 0; a < kAttrCount; ++a) {
    int card = attr_cardinality(attr_fields()[a].kind);
    int t = 0;
    while (t < frames) {
      int run = std::uniform_int_distribution<int>(2, 9)(rng);
      uint8_t v = static_cast<uint8_t>(std::uniform_int_distribution<int>(0, card - 1)(rng));
      for (int i = 0; i < run && t < frames; ++i, ++t) seq.set(t, a, v);
    }
  }
  return seq;
}

// Brute-force LCS by recursion, exponential; only for tiny inputs.
template <typename T>
int lcs_brute(const std::vector<T>& a, const std::vector<T>& b, size_t i = 0, size_t j = 0) {
  if (i == a.size() || j == b.size()) return 0;
  if (a[i] == b[j]) return 1 + lcs_brute(a, b, i + 1, j + 1);
  return std::max(lcs_brute(a, b, i + 1, j), lcs_brute(a, b, i, j + 1));
}

// Memoized recursion, the independent oracle for longer pairs.
template <typename T>
int lcs_memo(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<std::vector<int>> memo(a.size() + 1, std::vector<int>(b.size() + 1, -1));
  struct Rec {
    const std::vector<T>& a;
    const std::vector<T>& b;
    std::vector<std::vector<int>>& memo;
    int operator()(size_t i, size_t j) {
      if (i == a.size() || j == b.size()) return 0;
      int& m = memo[i][j];
      if (m >= 0) return m;
      if (a[i] == b[j]) return m = 1 + (*this)(i + 1, j + 1);
      return m = std::max((*this)(i + 1, j), (*this)(i, j + 1));
    }
  } rec{a, b, memo};
  return rec(0, 0);
}

} // namespace lamogen::testutil
