#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "minimaxlab/core.hpp"
#include "minimaxlab/lp.hpp"

// Finite alternative-theorem dichotomy: either some convex combination of
// the generators is strictly negative everywhere (A1), or some probability
// measure over the points pairs nonnegatively with every generator (A2).
// Both branches come with independently checkable certificates.

namespace minimaxlab {

/// Finitely generated family: row k holds generator k sampled over the m
/// points; the set under test is the convex hull of the rows.
struct FunctionFamily {
  BiMatrix members;  // k generators x m points

  std::size_t generators() const { return members.rows(); }
  std::size_t points() const { return members.cols(); }
};

enum class AlternativeTag { A1, A2 };

inline const char* tag_name(AlternativeTag t) {
  return t == AlternativeTag::A1 ? "A1" : "A2";
}

/// Decision plus certificate. A1 carries the negative combination and its
/// sup over the points; A2 carries the measure and its worst pairing.
/// margin is the distance of the underlying game value from zero.
struct AlternativeOutcome {
  AlternativeTag tag = AlternativeTag::A2;
  std::optional<Weights> combo;       // A1: weights over generators
  std::optional<double> sup_value;    // A1: max over points, < 0
  std::optional<Weights> measure;     // A2: weights over points
  std::optional<double> min_pairing;  // A2: min over generators, >= -eps_cert
  double margin = 0.0;
};

namespace detail {

// max over points of the combination's value.
inline double combo_sup(const BiMatrix& members, const Weights& combo) {
  double worst = -kInf;
  for (std::size_t j = 0; j < members.cols(); ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < members.rows(); ++k)
      s += combo[k] * members(k, j);
    worst = std::max(worst, s);
  }
  return worst;
}

// min over generators of the pairing with the measure.
inline double measure_min_pairing(const BiMatrix& members, const Weights& nu) {
  double worst = kInf;
  for (std::size_t k = 0; k < members.rows(); ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < members.cols(); ++j)
      s += members(k, j) * nu[j];
    worst = std::min(worst, s);
  }
  return worst;
}

}  // namespace detail

/// Decides the dichotomy by solving the zero-sum game on the member
/// matrix: generators minimize, points maximize. A value below -eps_feas
/// yields A1 with the optimal combination; anything else yields A2 with
/// the optimal measure, whose pairings are all >= value >= -eps_cert.
/// Exact zeros land in A2, where the certificate is robust.
inline AlternativeOutcome decide_alternative(const FunctionFamily& family,
                                             const Tolerance& tol) {
  GameSolution gs = solve_zero_sum(family.members, tol);
  AlternativeOutcome out;
  out.margin = std::abs(gs.value);
  if (gs.value < -tol.eps_feas) {
    out.tag = AlternativeTag::A1;
    out.sup_value = detail::combo_sup(family.members, gs.row_weights);
    out.combo = std::move(gs.row_weights);
  } else {
    out.tag = AlternativeTag::A2;
    out.min_pairing = detail::measure_min_pairing(family.members, gs.col_weights);
    out.measure = std::move(gs.col_weights);
  }
  return out;
}

/// Finite positive-cone membership: nonnegative componentwise within
/// eps_feas and pairing to one with the all-ones vector within eps_feas.
inline bool dual_cone_membership(const std::vector<double>& nu,
                                 const Tolerance& tol) {
  double sum = 0.0;
  for (double v : nu) {
    if (!std::isfinite(v) || v < -tol.eps_feas) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= tol.eps_feas;
}

/// From-scratch re-check of an outcome: certificate weights must be valid,
/// the recomputed sup or pairing must match the claimed number within
/// eps_cert, and the branch inequality must hold.
inline bool verify_certificate(const AlternativeOutcome& outcome,
                               const FunctionFamily& family,
                               const Tolerance& tol) {
  const std::size_t k = family.generators(), m = family.points();
  if (outcome.tag == AlternativeTag::A1) {
    if (!outcome.combo || !outcome.sup_value) return false;
    if (outcome.combo->size() != k)
      fail(Errc::ShapeMismatch, "combo length does not match generators");
    try {
      validate_weights(outcome.combo->values(), k, tol);
    } catch (const Error&) {
      return false;
    }
    const double s = detail::combo_sup(family.members, *outcome.combo);
    return s < 0.0 && std::abs(s - *outcome.sup_value) <= tol.eps_cert;
  }
  if (!outcome.measure || !outcome.min_pairing) return false;
  if (outcome.measure->size() != m)
    fail(Errc::ShapeMismatch, "measure length does not match points");
  if (!dual_cone_membership(outcome.measure->values(), tol)) return false;
  const double p = detail::measure_min_pairing(family.members, *outcome.measure);
  return p >= -tol.eps_cert && std::abs(p - *outcome.min_pairing) <= tol.eps_cert;
}

}  // namespace minimaxlab
