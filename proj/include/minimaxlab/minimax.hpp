#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "minimaxlab/core.hpp"
#include "minimaxlab/genconvex.hpp"
#include "minimaxlab/lp.hpp"

// Pure and mixed minimax values, limsups over eventually-periodic index
// sequences, and executable checkers that replay the minimax implications
// on concrete finite instances.

namespace minimaxlab {

/// The three values of one instance and their pure gap.
struct ValueReport {
  double lower = 0.0;  // max over columns of the column minimum
  double upper = 0.0;  // min over rows of the row maximum
  double mixed = 0.0;  // zero-sum game value
  double gap = 0.0;    // upper - lower
  Weights row_weights;  // mixed-optimal measure over rows
  Weights col_weights;  // mixed-optimal measure over columns
};

struct HypothesisRecord {
  std::string name;
  bool satisfied = false;
  std::string detail;
};

/// Replay of one implication on one instance. When every hypothesis is
/// satisfied the conclusion must hold; a non-vacuous false conclusion is a
/// defect in the library, never a legitimate report state.
struct TheoremCheck {
  std::string theorem;  // "km1" | "km2" | "app2" | "cor_equic" | "lem2" |
                        // "corollary0"
  std::vector<HypothesisRecord> hypotheses;
  bool vacuous = false;
  bool conclusion_holds = false;
  std::map<std::string, double> numbers;
};

/// (max_j min_i F, min_i max_j F) by exact scans.
inline std::pair<double, double> pure_values(const BiMatrix& f) {
  return {detail::pure_lower(f), detail::pure_upper(f)};
}

/// Assembles pure bounds, the mixed value, and the attaining measures.
inline ValueReport value_report(const BiMatrix& f, const Tolerance& tol) {
  const auto [lower, upper] = pure_values(f);
  GameSolution gs = solve_zero_sum(f, tol);
  return ValueReport{lower,
                     upper,
                     gs.value,
                     upper - lower,
                     std::move(gs.row_weights),
                     std::move(gs.col_weights)};
}

/// Per-column limsup of F along the sequence. Exact on eventually-periodic
/// sequences: only the cycle matters, and the limsup at a column is the
/// max over the rows the cycle visits.
inline std::vector<double> limsup_over_sequence(const BiMatrix& f,
                                                const IndexSequence& seq) {
  seq.validate(f.rows());
  std::vector<double> out(f.cols(), -kInf);
  for (std::size_t j = 0; j < f.cols(); ++j)
    for (std::size_t i : seq.cycle) out[j] = std::max(out[j], f(i, j));
  return out;
}

struct SimonsCheck {
  bool holds = false;
  double slack = 0.0;  // max_j limsup - min_i max_j; nonnegative on finite X
};

/// Checks min_i max_j F <= max_j limsup_j along the sequence, within
/// eps_feas.
inline SimonsCheck simons_like_check(const BiMatrix& f, const IndexSequence& seq,
                                     const Tolerance& tol) {
  tol.validate();
  const std::vector<double> limsup = limsup_over_sequence(f, seq);
  double rhs = -kInf;
  for (double v : limsup) rhs = std::max(rhs, v);
  const double lhs = detail::pure_upper(f);
  return SimonsCheck{lhs <= rhs + tol.eps_feas, rhs - lhs};
}

namespace detail {

inline HypothesisRecord record_convexity(std::string name,
                                         const ConvexityReport& rep) {
  HypothesisRecord h;
  h.name = std::move(name);
  h.satisfied = rep.holds;
  if (rep.holds) {
    h.detail = "holds";
  } else if (rep.witness) {
    h.detail = "fails at pair (" + std::to_string(rep.witness->first) + "," +
               std::to_string(rep.witness->second) + ")";
  } else if (rep.lhs_value && rep.rhs_value) {
    h.detail = "pure " + std::to_string(*rep.lhs_value) + " vs mixed " +
               std::to_string(*rep.rhs_value);
  }
  return h;
}

inline HypothesisRecord entrywise_leq(std::string name, const BiMatrix& a,
                                      const BiMatrix& b, double eps) {
  HypothesisRecord h;
  h.name = std::move(name);
  h.satisfied = true;
  h.detail = "holds";
  for (std::size_t i = 0; i < a.rows() && h.satisfied; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) > b(i, j) + eps) {
        h.satisfied = false;
        h.detail = "violated at (" + std::to_string(i) + "," +
                   std::to_string(j) + ")";
        break;
      }
  return h;
}

inline HypothesisRecord by_finiteness(std::string name, std::string why) {
  return HypothesisRecord{std::move(name), true,
                          "satisfied-by-finiteness: " + std::move(why)};
}

inline void finalize(TheoremCheck& c) {
  c.vacuous = false;
  for (const HypothesisRecord& h : c.hypotheses)
    if (!h.satisfied) c.vacuous = true;
}

}  // namespace detail

/// Lowest row index minimizing the row maximum, plus a replay of the
/// net-selection argument on it: if F is t-convexlike, the row maximum at
/// the winner must not exceed the column-mixed value.
inline std::pair<std::size_t, TheoremCheck> witness_row(const BiMatrix& f,
                                                        double t,
                                                        const Tolerance& tol) {
  std::size_t best = 0;
  double best_val = kInf;
  for (std::size_t i = 0; i < f.rows(); ++i) {
    double rowmax = -kInf;
    for (std::size_t j = 0; j < f.cols(); ++j) rowmax = std::max(rowmax, f(i, j));
    if (rowmax < best_val) {
      best_val = rowmax;
      best = i;
    }
  }
  TheoremCheck c;
  c.theorem = "corollary0";
  c.hypotheses.push_back(
      detail::record_convexity("F t-convexlike", is_t_convexlike(f, t, tol)));
  detail::finalize(c);
  const double supinf = supinf_concave_value(f, tol);
  c.numbers["witness_row"] = static_cast<double>(best);
  c.numbers["upper_at_witness"] = best_val;
  c.numbers["supinf_concave_value"] = supinf;
  c.conclusion_holds = best_val <= supinf + tol.eps_opt;
  return {best, c};
}

/// Two-function comparison: F t-convexlike, G supinf-concave, F <= G
/// entrywise imply min_i max_j F <= max_j min_i G.
inline TheoremCheck check_km1(const BiMatrix& f, const BiMatrix& g, double t,
                              const Tolerance& tol) {
  if (!f.same_shape(g))
    fail(Errc::ShapeMismatch, "F and G must have identical shape");
  TheoremCheck c;
  c.theorem = "km1";
  c.hypotheses.push_back(
      detail::record_convexity("F t-convexlike", is_t_convexlike(f, t, tol)));
  c.hypotheses.push_back(detail::by_finiteness(
      "Simons-like inequality for F",
      "limsup along any sequence is a max over visited rows"));
  c.hypotheses.push_back(
      detail::record_convexity("G supinf-concave", is_supinf_concave(g, tol)));
  c.hypotheses.push_back(
      detail::entrywise_leq("F <= G entrywise", f, g, tol.eps_feas));
  detail::finalize(c);
  const double lhs = detail::pure_upper(f);
  const double rhs = detail::pure_lower(g);
  c.numbers["infsup_F"] = lhs;
  c.numbers["supinf_G"] = rhs;
  c.conclusion_holds = lhs <= rhs + tol.eps_opt;
  return c;
}

/// Single-function minimax equality: F t-convexlike and supinf-concave
/// imply zero pure gap. Also samples every cycle of length up to
/// max_cycle_len to confirm the sequence inequality on this instance.
inline TheoremCheck check_km2(const BiMatrix& f, double t, const Tolerance& tol,
                              std::size_t max_cycle_len = 3) {
  TheoremCheck c;
  c.theorem = "km2";
  c.hypotheses.push_back(
      detail::record_convexity("F t-convexlike", is_t_convexlike(f, t, tol)));
  c.hypotheses.push_back(
      detail::record_convexity("F supinf-concave", is_supinf_concave(f, tol)));

  // Exhaustive sequence sampling: all cycles over the rows up to the cap.
  std::size_t sampled = 0;
  double min_slack = kInf;
  bool all_hold = true;
  for (std::size_t len = 1; len <= max_cycle_len && all_hold; ++len) {
    std::vector<std::size_t> cyc(len, 0);
    while (true) {
      IndexSequence seq;
      seq.cycle = cyc;
      const SimonsCheck sc = simons_like_check(f, seq, tol);
      ++sampled;
      min_slack = std::min(min_slack, sc.slack);
      if (!sc.holds) {
        all_hold = false;
        break;
      }
      std::size_t pos = len;
      while (pos > 0 && ++cyc[pos - 1] == f.rows()) cyc[--pos] = 0;
      if (pos == 0) break;
      // odometer: positions right of the carry were reset above
    }
  }
  c.hypotheses.push_back(HypothesisRecord{
      "Simons-like inequality over sampled sequences", all_hold,
      std::to_string(sampled) + " cycles sampled, min slack " +
          std::to_string(min_slack)});
  detail::finalize(c);
  const auto [lower, upper] = pure_values(f);
  c.numbers["lower"] = lower;
  c.numbers["upper"] = upper;
  c.numbers["gap"] = upper - lower;
  c.numbers["min_sequence_slack"] = min_slack;
  c.conclusion_holds = std::abs(upper - lower) <= tol.eps_opt;
  return c;
}

/// Same comparison as check_km1 with the topological hypothesis recorded
/// explicitly; on finite discrete instances it always holds.
inline TheoremCheck check_app2(const BiMatrix& f, const BiMatrix& g, double t,
                               const Tolerance& tol) {
  TheoremCheck c = check_km1(f, g, t, tol);
  c.theorem = "app2";
  c.hypotheses.insert(c.hypotheses.begin(),
                      detail::by_finiteness("F lower semicontinuous on compact X",
                                            "finite discrete point set"));
  return c;
}

/// Equicontinuous-family comparison: H infsup-convex, L supinf-concave,
/// H <= L entrywise imply min_i max_j H <= max_j min_i L.
inline TheoremCheck check_cor_equic(const BiMatrix& h, const BiMatrix& l,
                                    const Tolerance& tol) {
  if (!h.same_shape(l))
    fail(Errc::ShapeMismatch, "H and L must have identical shape");
  TheoremCheck c;
  c.theorem = "cor_equic";
  c.hypotheses.push_back(
      detail::record_convexity("H infsup-convex", is_infsup_convex(h, tol)));
  c.hypotheses.push_back(detail::by_finiteness(
      "family {H(.,y)} bounded and equicontinuous", "finite discrete point set"));
  c.hypotheses.push_back(
      detail::record_convexity("L supinf-concave", is_supinf_concave(l, tol)));
  c.hypotheses.push_back(
      detail::entrywise_leq("H <= L entrywise", h, l, tol.eps_feas));
  detail::finalize(c);
  const double lhs = detail::pure_upper(h);
  const double rhs = detail::pure_lower(l);
  c.numbers["infsup_H"] = lhs;
  c.numbers["supinf_L"] = rhs;
  c.conclusion_holds = lhs <= rhs + tol.eps_opt;
  return c;
}

/// Attainment identities of the mixed value: the sandwich
/// lower <= mixed <= upper always, plus — under the matching convexity
/// hypothesis — the optimal measure of one player pins the other player's
/// pure value exactly.
inline TheoremCheck check_lem2(const BiMatrix& f, const Tolerance& tol) {
  TheoremCheck c;
  c.theorem = "lem2";
  const ConvexityReport convex = is_infsup_convex(f, tol);
  const ConvexityReport concave = is_supinf_concave(f, tol);
  c.hypotheses.push_back(detail::record_convexity("F infsup-convex", convex));
  c.hypotheses.push_back(detail::record_convexity("F supinf-concave", concave));
  detail::finalize(c);

  const ValueReport vr = value_report(f, tol);
  c.numbers["lower"] = vr.lower;
  c.numbers["mixed"] = vr.mixed;
  c.numbers["upper"] = vr.upper;
  bool ok = vr.lower <= vr.mixed + tol.eps_opt && vr.mixed <= vr.upper + tol.eps_opt;
  if (convex.holds) {
    // With zero row-side relaxation gain, the column measure attains the
    // pure upper value: min_i (F mu)_i = upper.
    double attained = kInf;
    for (std::size_t i = 0; i < f.rows(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < f.cols(); ++j) s += f(i, j) * vr.col_weights[j];
      attained = std::min(attained, s);
    }
    c.numbers["upper_attained_by_col_measure"] = attained;
    ok = ok && std::abs(attained - vr.upper) <= tol.eps_opt;
  }
  if (concave.holds) {
    double attained = -kInf;
    for (std::size_t j = 0; j < f.cols(); ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < f.rows(); ++i) s += vr.row_weights[i] * f(i, j);
      attained = std::max(attained, s);
    }
    c.numbers["lower_attained_by_row_measure"] = attained;
    ok = ok && std::abs(attained - vr.lower) <= tol.eps_opt;
  }
  c.conclusion_holds = ok;
  return c;
}

}  // namespace minimaxlab
