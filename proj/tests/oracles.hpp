#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "minimaxlab/core.hpp"

// Brute-force reference computations used to cross-check the library.
// Everything here is deliberately naive: simplex grids and exhaustive
// scans, no LP, no shared code with the solvers under test.

namespace oracles {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Enumerates all ways to split `total` grid steps across `parts` bins,
// invoking fn(counts) for each composition.
template <typename Fn>
inline void for_each_composition(std::size_t parts, std::size_t total,
                                 std::vector<std::size_t>& cur, Fn&& fn) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    fn(cur);
    cur.pop_back();
    return;
  }
  for (std::size_t k = 0; k <= total; ++k) {
    cur.push_back(k);
    for_each_composition(parts, total - k, cur, fn);
    cur.pop_back();
  }
}

// min over the step-1/steps simplex grid of lambda of max_j (lambda' F)_j.
// An upper bound on the true mixed value that is exact whenever an optimal
// strategy lies on the grid.
inline double grid_game_value(const minimaxlab::BiMatrix& f, std::size_t steps) {
  const std::size_t m = f.rows(), n = f.cols();
  double best = kInf;
  std::vector<std::size_t> cur;
  for_each_composition(m, steps, cur, [&](const std::vector<std::size_t>& ks) {
    double worst = -kInf;
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i)
        s += static_cast<double>(ks[i]) * f(i, j);
      if (s > worst) worst = s;
    }
    if (worst < best) best = worst;
  });
  return best / static_cast<double>(steps);
}

// min over the simplex grid of the sup norm of the convex combination of
// the given vectors (all the same length). Early-exits each inner scan
// once the running max can no longer beat the incumbent.
inline double grid_min_supnorm(const std::vector<std::vector<double>>& fns,
                               std::size_t steps) {
  const std::size_t k = fns.size();
  const std::size_t len = fns.empty() ? 0 : fns[0].size();
  double best_raw = kInf;  // sup norm scaled by `steps`
  std::vector<std::size_t> cur;
  for_each_composition(k, steps, cur, [&](const std::vector<std::size_t>& ks) {
    double worst = 0.0;
    for (std::size_t p = 0; p < len; ++p) {
      double s = 0.0;
      for (std::size_t i = 0; i < k; ++i)
        s += static_cast<double>(ks[i]) * fns[i][p];
      s = std::abs(s);
      if (s > worst) {
        worst = s;
        if (worst >= best_raw) return;
      }
    }
    if (worst < best_raw) best_raw = worst;
  });
  return best_raw / static_cast<double>(steps);
}

// Canonical representative of a 3x3 integer matrix under independent row
// and column permutations: the lexicographically smallest flattening over
// all 6 column orders with rows sorted. Game values are invariant under
// these permutations, so this keys an oracle cache.
inline std::array<int, 9> canonical_3x3_key(const std::array<int, 9>& m) {
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                  {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::array<int, 9> best{};
  bool have = false;
  for (const auto& p : perms) {
    std::array<std::array<int, 3>, 3> rows;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) rows[r][c] = m[r * 3 + p[c]];
    std::sort(rows.begin(), rows.end());
    std::array<int, 9> flat{};
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) flat[r * 3 + c] = rows[r][c];
    if (!have || flat < best) {
      best = flat;
      have = true;
    }
  }
  return best;
}

// Pure saddle bounds by exhaustive scan.
inline double pure_upper_value(const minimaxlab::BiMatrix& f) {
  double best = kInf;
  for (std::size_t i = 0; i < f.rows(); ++i) {
    double worst = -kInf;
    for (std::size_t j = 0; j < f.cols(); ++j) worst = std::max(worst, f(i, j));
    best = std::min(best, worst);
  }
  return best;
}

inline double pure_lower_value(const minimaxlab::BiMatrix& f) {
  double best = -kInf;
  for (std::size_t j = 0; j < f.cols(); ++j) {
    double worst = kInf;
    for (std::size_t i = 0; i < f.rows(); ++i) worst = std::min(worst, f(i, j));
    best = std::max(best, worst);
  }
  return best;
}

}  // namespace oracles
