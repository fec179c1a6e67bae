#pragma once

// Extraction of norm-small convex combinations from sampled function
// sequences.  Given f_1..f_N sampled on a finite point set, find weights
// supported on a tail window [m, w] whose combination has minimal sup norm,
// and track how fast the achievable norm decays as the window advances.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "minimaxlab/core.hpp"
#include "minimaxlab/lp.hpp"

namespace minimaxlab {

// A sequence of N functions sampled at Z points, each value in R^d.
// data is indexed [n][z][c], row-major, n and z zero-based internally.
struct SampledSequence {
  std::size_t N = 0;
  std::size_t Z = 0;
  std::size_t d = 1;
  std::vector<double> data;

  SampledSequence() = default;
  SampledSequence(std::size_t n, std::size_t z, std::size_t d,
                  std::vector<double> values)
      : N(n), Z(z), d(d), data(std::move(values)) {
    validate();
  }

  void validate() const {
    if (N == 0 || Z == 0 || d == 0) {
      fail(Errc::EmptyDimension, "sequence dimensions must be positive");
    }
    if (data.size() != N * Z * d) {
      fail(Errc::LengthMismatch, "sequence data size does not match N*Z*d");
    }
    for (double v : data) {
      if (!std::isfinite(v)) {
        fail(Errc::NonFiniteEntry, "sequence entries must be finite");
      }
    }
  }

  // n, z, c zero-based.
  double at(std::size_t n, std::size_t z, std::size_t c) const {
    if (n >= N || z >= Z || c >= d) {
      fail(Errc::IndexOutOfRange, "sequence index out of range");
    }
    return data[(n * Z + z) * d + c];
  }
};

// A convex combination of f_m..f_w (indices 1-based, inclusive) together
// with the sup norm it achieves over the sample points.
struct MazurResult {
  std::size_t tail_start = 1;  // m
  std::size_t window_end = 1;  // w
  Weights weights;             // length w - m + 1, over f_m..f_w
  double norm = 0.0;
};

namespace detail {

// Sup norm over sample points of sum_n weights[n - m] * f_n, where the
// per-point magnitude is the max over coordinates.
inline double combination_norm(const SampledSequence& seq, std::size_t m,
                               std::size_t w, const Weights& weights) {
  double worst = 0.0;
  for (std::size_t z = 0; z < seq.Z; ++z) {
    for (std::size_t c = 0; c < seq.d; ++c) {
      double acc = 0.0;
      for (std::size_t n = m - 1; n < w; ++n) {
        acc += weights[n - (m - 1)] * seq.at(n, z, c);
      }
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

}  // namespace detail

// Minimal-sup-norm convex combination of f_m..f_w (1-based, inclusive):
// min over lambda in the simplex of max over z, c of |sum_n lambda_n
// f_n(z)_c|.  Written as the LP  min u  s.t.  -u <= sum lambda f <= u,
// this is exactly the matrix game in which the weights pick a function
// mixture and the adversary picks a sample point, a coordinate and a sign;
// solving it through the game reduction keeps every tableau coefficient
// near 1 even when the data spans many orders of magnitude, where the raw
// tableau with an explicit u variable stalls.
inline MazurResult mazur_extract(const SampledSequence& seq, std::size_t m,
                                 std::size_t w, const Tolerance& tol) {
  seq.validate();
  tol.validate();
  if (m < 1 || m > w || w > seq.N) {
    fail(Errc::BadWindow, "window must satisfy 1 <= m <= w <= N");
  }

  const std::size_t len = w - m + 1;
  const std::size_t pts = seq.Z * seq.d;
  std::vector<double> payoff(len * 2 * pts, 0.0);
  for (std::size_t j = 0; j < len; ++j) {
    std::size_t col = 0;
    for (std::size_t z = 0; z < seq.Z; ++z) {
      for (std::size_t c = 0; c < seq.d; ++c) {
        const double v = seq.at(m - 1 + j, z, c);
        payoff[j * 2 * pts + col] = v;
        payoff[j * 2 * pts + col + 1] = -v;
        col += 2;
      }
    }
  }
  const GameSolution game =
      solve_zero_sum(BiMatrix(len, 2 * pts, std::move(payoff)), tol);
  Weights weights = game.row_weights;
  const double norm = detail::combination_norm(seq, m, w, weights);
  return MazurResult{m, w, std::move(weights), norm};
}

// True when the claimed combination re-verifies from scratch: the weights
// are a valid distribution over the window and the directly evaluated norm
// matches the claimed one within eps_cert.
inline bool verify_mazur_result(const SampledSequence& seq,
                                const MazurResult& res, const Tolerance& tol) {
  seq.validate();
  tol.validate();
  if (res.tail_start < 1 || res.tail_start > res.window_end ||
      res.window_end > seq.N) {
    return false;
  }
  const std::size_t len = res.window_end - res.tail_start + 1;
  if (res.weights.size() != len) return false;
  try {
    (void)validate_weights(res.weights.values(), len, tol);
  } catch (const Error&) {
    return false;
  }
  const double direct =
      detail::combination_norm(seq, res.tail_start, res.window_end, res.weights);
  return std::abs(direct - res.norm) <= tol.eps_cert;
}

// How mazur_schedule picks candidate windows for each target.
enum class SchedulePolicy {
  FixedEnd,       // w = N, advance the tail start m upward
  GrowingWindow,  // m = 1, widen the window end w upward
};

// For each target, the first candidate window (under the chosen policy)
// whose optimal norm meets it.  Targets must be positive and strictly
// decreasing.  An unreachable target yields the best combination found
// (smallest norm seen); callers detect failure by norm > target.
inline std::vector<MazurResult> mazur_schedule(
    const SampledSequence& seq, const std::vector<double>& targets,
    const Tolerance& tol, SchedulePolicy policy = SchedulePolicy::FixedEnd) {
  seq.validate();
  tol.validate();
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (!std::isfinite(targets[i]) || targets[i] <= 0.0) {
      fail(Errc::BadTarget, "targets must be positive");
    }
    if (i > 0 && targets[i] >= targets[i - 1]) {
      fail(Errc::BadTarget, "targets must be strictly decreasing");
    }
  }

  std::vector<MazurResult> out;
  out.reserve(targets.size());
  for (double target : targets) {
    std::optional<MazurResult> best;
    bool met = false;
    for (std::size_t step = 1; step <= seq.N; ++step) {
      const std::size_t m = policy == SchedulePolicy::FixedEnd ? step : 1;
      const std::size_t w = policy == SchedulePolicy::FixedEnd ? seq.N : step;
      MazurResult cur = mazur_extract(seq, m, w, tol);
      if (!best || cur.norm < best->norm) best = cur;
      if (cur.norm <= target) {
        out.push_back(std::move(cur));
        met = true;
        break;
      }
    }
    if (!met) out.push_back(std::move(*best));
  }
  return out;
}

// Tail sup magnitudes: entry (m-1, z) is max over n >= m and coordinates c
// of |f_n(z)_c|, for every tail start m in 1..N.  Each column is
// nonincreasing in m.
inline BiMatrix pointwise_decay_report(const SampledSequence& seq) {
  seq.validate();
  std::vector<double> cells(seq.N * seq.Z, 0.0);
  // Fill bottom-up so each row reuses the suffix max of the row below.
  for (std::size_t m = seq.N; m >= 1; --m) {
    for (std::size_t z = 0; z < seq.Z; ++z) {
      double mag = 0.0;
      for (std::size_t c = 0; c < seq.d; ++c) {
        mag = std::max(mag, std::abs(seq.at(m - 1, z, c)));
      }
      if (m < seq.N) {
        mag = std::max(mag, cells[m * seq.Z + z]);
      }
      cells[(m - 1) * seq.Z + z] = mag;
    }
  }
  return BiMatrix(seq.N, seq.Z, std::move(cells));
}

}  // namespace minimaxlab
