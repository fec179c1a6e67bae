#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "minimaxlab/core.hpp"
#include "minimaxlab/lp.hpp"

// Generalized-convexity classifiers: pairwise mixture-domination scans,
// mixed-vs-pure value comparisons, and the iterated binary t-mixture
// enumeration with witness extraction.

namespace minimaxlab {

/// Offending pair for a failed pairwise property, together with the
/// mixture vector no row (or column) matched.
struct PairWitness {
  std::size_t first = 0;
  std::size_t second = 0;
  std::vector<double> mixture;
};

/// Outcome of a single convexity-style classification. Pairwise properties
/// fill `witness` on failure; value-based properties fill the two compared
/// numbers.
struct ConvexityReport {
  std::string property;  // "t-convexlike" | "t-concavelike" |
                         // "infsup-convex" | "supinf-concave"
  bool holds = false;
  std::optional<double> t;
  std::optional<PairWitness> witness;
  std::optional<double> lhs_value;
  std::optional<double> rhs_value;
};

namespace detail {

inline double pure_upper(const BiMatrix& f) {
  double best = kInf;
  for (std::size_t i = 0; i < f.rows(); ++i) {
    double worst = -kInf;
    for (std::size_t j = 0; j < f.cols(); ++j) worst = std::max(worst, f(i, j));
    best = std::min(best, worst);
  }
  return best;
}

inline double pure_lower(const BiMatrix& f) {
  double best = -kInf;
  for (std::size_t j = 0; j < f.cols(); ++j) {
    double worst = kInf;
    for (std::size_t i = 0; i < f.rows(); ++i) worst = std::min(worst, f(i, j));
    best = std::max(best, worst);
  }
  return best;
}

}  // namespace detail

/// Checks that every ordered row pair has some row lying below its
/// t-mixture componentwise, within eps_feas. Lowest-index witness wins;
/// the first failing pair (scan order) is reported.
inline ConvexityReport is_t_convexlike(const BiMatrix& f, double t,
                                       const Tolerance& tol) {
  tol.validate();
  if (!(t > 0.0 && t < 1.0))
    fail(Errc::TOutOfRange, "t = " + std::to_string(t) + " outside (0,1)");
  const std::size_t m = f.rows(), n = f.cols();
  ConvexityReport rep;
  rep.property = "t-convexlike";
  rep.t = t;
  std::vector<double> mix(n);
  for (std::size_t i1 = 0; i1 < m; ++i1) {
    for (std::size_t i2 = 0; i2 < m; ++i2) {
      for (std::size_t j = 0; j < n; ++j)
        mix[j] = t * f(i1, j) + (1.0 - t) * f(i2, j);
      bool found = false;
      for (std::size_t i3 = 0; i3 < m && !found; ++i3) {
        bool below = true;
        for (std::size_t j = 0; j < n; ++j) {
          if (f(i3, j) > mix[j] + tol.eps_feas) {
            below = false;
            break;
          }
        }
        found = below;
      }
      if (!found) {
        rep.holds = false;
        rep.witness = PairWitness{i1, i2, mix};
        return rep;
      }
    }
  }
  rep.holds = true;
  return rep;
}

/// Column-side dual of is_t_convexlike: every ordered column pair needs
/// some column lying above its s-mixture componentwise, within eps_feas.
inline ConvexityReport is_s_concavelike(const BiMatrix& f, double s,
                                        const Tolerance& tol) {
  tol.validate();
  if (!(s > 0.0 && s < 1.0))
    fail(Errc::SOutOfRange, "s = " + std::to_string(s) + " outside (0,1)");
  const std::size_t m = f.rows(), n = f.cols();
  ConvexityReport rep;
  rep.property = "t-concavelike";
  rep.t = s;
  std::vector<double> mix(m);
  for (std::size_t j1 = 0; j1 < n; ++j1) {
    for (std::size_t j2 = 0; j2 < n; ++j2) {
      for (std::size_t i = 0; i < m; ++i)
        mix[i] = s * f(i, j1) + (1.0 - s) * f(i, j2);
      bool found = false;
      for (std::size_t j3 = 0; j3 < n && !found; ++j3) {
        bool above = true;
        for (std::size_t i = 0; i < m; ++i) {
          if (f(i, j3) < mix[i] - tol.eps_feas) {
            above = false;
            break;
          }
        }
        found = above;
      }
      if (!found) {
        rep.holds = false;
        rep.witness = PairWitness{j1, j2, mix};
        return rep;
      }
    }
  }
  rep.holds = true;
  return rep;
}

/// min over row Weights of the worst column response. The infimum over
/// arbitrary-length convex combinations collapses to the LP over the
/// m-simplex because the objective is a max of linear functions.
inline double infsup_convex_value(const BiMatrix& f, const Tolerance& tol) {
  return solve_zero_sum(f, tol).value;
}

/// max over column Weights of the worst row response, computed through the
/// negated-transpose game so the two mixed values are obtained by
/// genuinely dual routes.
inline double supinf_concave_value(const BiMatrix& f, const Tolerance& tol) {
  return -solve_zero_sum(f.negated().transposed(), tol).value;
}

/// Holds iff relaxing the row player from pure choices to Weights gains
/// nothing: pure min-max equals the mixed value within eps_opt.
inline ConvexityReport is_infsup_convex(const BiMatrix& f, const Tolerance& tol) {
  ConvexityReport rep;
  rep.property = "infsup-convex";
  rep.lhs_value = detail::pure_upper(f);
  rep.rhs_value = infsup_convex_value(f, tol);
  rep.holds = std::abs(*rep.lhs_value - *rep.rhs_value) <= tol.eps_opt;
  return rep;
}

/// Column-side counterpart: pure max-min equals the mixed value within
/// eps_opt.
inline ConvexityReport is_supinf_concave(const BiMatrix& f, const Tolerance& tol) {
  ConvexityReport rep;
  rep.property = "supinf-concave";
  rep.lhs_value = detail::pure_lower(f);
  rep.rhs_value = supinf_concave_value(f, tol);
  rep.holds = std::abs(*rep.lhs_value - *rep.rhs_value) <= tol.eps_opt;
  return rep;
}

namespace detail {

// Enumeration of all coefficient vectors reachable by binary t-mixture
// trees over the n simplex vertices, with the first derivation of each
// vector recorded so witnesses can be rebuilt bottom-up.
struct MixtureEntry {
  std::vector<double> v;
  std::ptrdiff_t left = -1;   // entry indices of the recorded derivation
  std::ptrdiff_t right = -1;
  int vertex = -1;            // leaf: simplex vertex index
};

inline std::string mixture_key(const std::vector<double>& v) {
  std::string key(v.size() * sizeof(std::int64_t), '\0');
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto r = static_cast<std::int64_t>(std::llround(v[i] * 1e12));
    std::memcpy(key.data() + i * sizeof(std::int64_t), &r, sizeof(std::int64_t));
  }
  return key;
}

struct MixtureEnumeration {
  std::vector<MixtureEntry> entries;
  std::unordered_map<std::string, std::size_t> index;

  bool add(std::vector<double> v, std::ptrdiff_t left, std::ptrdiff_t right,
           int vertex) {
    std::string key = mixture_key(v);
    if (index.count(key)) return false;
    index.emplace(std::move(key), entries.size());
    entries.push_back(MixtureEntry{std::move(v), left, right, vertex});
    return true;
  }
};

// Grows the enumeration level by level. Stops early once `stop_key` (if
// any) appears or a level adds nothing new. Guards both the vector count
// and the pairwise work per level.
inline MixtureEnumeration enumerate_mixtures(double t, std::size_t n,
                                             std::size_t depth,
                                             std::size_t max_vectors,
                                             const std::string* stop_key) {
  constexpr std::size_t kPairWorkCap = 50'000'000;
  MixtureEnumeration en;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> e(n, 0.0);
    e[k] = 1.0;
    en.add(std::move(e), -1, -1, static_cast<int>(k));
  }
  if (stop_key && en.index.count(*stop_key)) return en;
  for (std::size_t level = 1; level <= depth; ++level) {
    const std::size_t prev = en.entries.size();
    if (prev * prev > kPairWorkCap)
      fail(Errc::DepthTooLarge,
           "mixture enumeration level would need " + std::to_string(prev * prev) +
               " combinations");
    bool grew = false;
    for (std::size_t a = 0; a < prev; ++a) {
      for (std::size_t b = 0; b < prev; ++b) {
        std::vector<double> v(n);
        for (std::size_t k = 0; k < n; ++k)
          v[k] = t * en.entries[a].v[k] + (1.0 - t) * en.entries[b].v[k];
        if (en.add(std::move(v), static_cast<std::ptrdiff_t>(a),
                   static_cast<std::ptrdiff_t>(b), -1)) {
          grew = true;
          if (en.entries.size() > max_vectors)
            fail(Errc::DepthTooLarge,
                 "mixture enumeration exceeds " + std::to_string(max_vectors) +
                     " vectors");
          if (stop_key && en.index.count(*stop_key)) return en;
        }
      }
    }
    if (!grew) break;
  }
  return en;
}

}  // namespace detail

/// All distinct coefficient vectors reachable by binary t-mixture trees of
/// depth at most `depth` over the n simplex vertices, deduplicated after
/// rounding to 12 decimal digits and returned in lexicographic order.
inline std::vector<Weights> dense_coefficients(double t, std::size_t n,
                                               std::size_t depth,
                                               std::size_t max_vectors = 1'000'000) {
  if (!(t > 0.0 && t < 1.0))
    fail(Errc::TOutOfRange, "t = " + std::to_string(t) + " outside (0,1)");
  if (n == 0) fail(Errc::EmptyDimension, "need at least one vertex");
  detail::MixtureEnumeration en =
      detail::enumerate_mixtures(t, n, depth, max_vectors, nullptr);
  std::vector<std::vector<double>> vecs;
  vecs.reserve(en.entries.size());
  for (auto& e : en.entries) vecs.push_back(e.v);
  std::sort(vecs.begin(), vecs.end());
  std::vector<Weights> out;
  out.reserve(vecs.size());
  const Tolerance tol;
  for (auto& v : vecs) out.push_back(validate_weights(std::move(v), n, tol));
  return out;
}

/// Rebuilds the recorded mixture tree of `coeffs` and walks it bottom-up:
/// leaves map to `rows`, and each internal node is replaced by the
/// lowest-index row lying below the t-mixture of its children's rows.
/// The returned row is below the full combination within depth*eps_feas.
inline std::size_t fact1_witness(const BiMatrix& f, double t,
                                 const std::vector<std::size_t>& rows,
                                 const Weights& coeffs, const Tolerance& tol) {
  tol.validate();
  if (!(t > 0.0 && t < 1.0))
    fail(Errc::TOutOfRange, "t = " + std::to_string(t) + " outside (0,1)");
  const std::size_t n = coeffs.size();
  if (rows.size() != n)
    fail(Errc::LengthMismatch, "rows and coeffs lengths differ");
  for (std::size_t r : rows)
    if (r >= f.rows())
      fail(Errc::IndexOutOfRange, "row index " + std::to_string(r));

  const std::string key = detail::mixture_key(coeffs.values());
  detail::MixtureEnumeration en =
      detail::enumerate_mixtures(t, n, 64, 1'000'000, &key);
  auto it = en.index.find(key);
  if (it == en.index.end())
    fail(Errc::DepthTooLarge,
         "coefficients are not a recorded t-mixture of the vertices");

  const std::size_t ncols = f.cols();
  std::vector<std::ptrdiff_t> resolved(en.entries.size(), -1);
  // Iterative bottom-up resolution over the needed sub-DAG.
  std::vector<std::size_t> stack = {it->second};
  while (!stack.empty()) {
    const std::size_t cur = stack.back();
    const detail::MixtureEntry& e = en.entries[cur];
    if (resolved[cur] >= 0) {
      stack.pop_back();
      continue;
    }
    if (e.vertex >= 0) {
      resolved[cur] = static_cast<std::ptrdiff_t>(rows[e.vertex]);
      stack.pop_back();
      continue;
    }
    const std::size_t l = static_cast<std::size_t>(e.left);
    const std::size_t r = static_cast<std::size_t>(e.right);
    if (resolved[l] < 0 || resolved[r] < 0) {
      if (resolved[l] < 0) stack.push_back(l);
      if (resolved[r] < 0) stack.push_back(r);
      continue;
    }
    const std::size_t ia = static_cast<std::size_t>(resolved[l]);
    const std::size_t ib = static_cast<std::size_t>(resolved[r]);
    std::ptrdiff_t found = -1;
    for (std::size_t i3 = 0; i3 < f.rows() && found < 0; ++i3) {
      bool below = true;
      for (std::size_t j = 0; j < ncols; ++j) {
        const double mix = t * f(ia, j) + (1.0 - t) * f(ib, j);
        if (f(i3, j) > mix + tol.eps_feas) {
          below = false;
          break;
        }
      }
      if (below) found = static_cast<std::ptrdiff_t>(i3);
    }
    if (found < 0)
      fail(Errc::NotTConvexlike,
           "no row lies below the t-mixture of rows " + std::to_string(ia) +
               " and " + std::to_string(ib));
    resolved[cur] = found;
    stack.pop_back();
  }
  return static_cast<std::size_t>(resolved[it->second]);
}

/// Joint report for "t-convexlike implies infsup-convex" on one instance.
struct Prop22Report {
  ConvexityReport hypothesis;
  ConvexityReport conclusion;
  bool vacuous = false;  // hypothesis failed; implication holds trivially
  bool ok = false;
};

/// Tests the implication "t-convexlike implies infsup-convex": whenever
/// the pairwise scan accepts, the pure and mixed row values must agree.
inline Prop22Report check_prop22(const BiMatrix& f, double t, const Tolerance& tol) {
  Prop22Report rep;
  rep.hypothesis = is_t_convexlike(f, t, tol);
  rep.conclusion = is_infsup_convex(f, tol);
  rep.vacuous = !rep.hypothesis.holds;
  rep.ok = rep.vacuous || rep.conclusion.holds;
  return rep;
}

}  // namespace minimaxlab
