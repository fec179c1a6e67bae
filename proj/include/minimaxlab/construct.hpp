#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minimaxlab/core.hpp"

// Instance constructions with guarantees that hold by the way they are
// built: the nonnegative gauge phi from a potential xi, inf-convolution
// over rows (always t-convexlike), its column-side dual, and the seeded
// generators feeding the property suites.

namespace minimaxlab {

/// A real potential on the row point set.
struct XiVector {
  std::vector<double> xi;

  std::size_t size() const { return xi.size(); }
  double operator[](std::size_t i) const { return xi[i]; }

  void validate() const {
    if (xi.empty()) fail(Errc::EmptyDimension, "xi must be nonempty");
    for (double v : xi)
      if (!std::isfinite(v)) fail(Errc::NonFiniteEntry, "xi entry not finite");
  }
};

/// phi[x][z] = max(xi[x] - xi[z], 0): zero diagonal, nonnegative, and
/// triangle-compatible (phi[x][z] + phi[z][w] >= phi[x][w]).
inline BiMatrix phi_from_xi(const XiVector& xi) {
  xi.validate();
  const std::size_t m = xi.size();
  std::vector<double> data(m * m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t z = 0; z < m; ++z)
      data[x * m + z] = std::max(xi[x] - xi[z], 0.0);
  return BiMatrix(m, m, std::move(data));
}

/// Record of one inf-convolution: the source g, the gauge data, the
/// constructed f, and a minimizing z per cell for replaying witnesses.
struct InfConvInstance {
  BiMatrix g;
  XiVector xi;
  double K = 0.0;
  BiMatrix f;
  std::vector<std::size_t> argmin_z;  // row-major, same shape as f

  std::size_t argmin(std::size_t x, std::size_t y) const {
    return argmin_z[x * f.cols() + y];
  }
};

/// f[x][y] = min_z (g[z][y] + K*phi[x][z]), lowest minimizing z recorded.
/// The result lies between the columnwise min of g and g itself, and is
/// t-convexlike for every t: for any two rows, the one with smaller xi is
/// a pairwise witness, because its phi-distances to both rows vanish.
inline InfConvInstance inf_convolution(const BiMatrix& g, const XiVector& xi,
                                       double k) {
  xi.validate();
  if (xi.size() != g.rows())
    fail(Errc::LengthMismatch, "xi length must equal rows of g");
  if (std::isnan(k) || k < 0.0)
    fail(Errc::NegativeK, "K must be a nonnegative real");
  if (!std::isfinite(k)) fail(Errc::NonFiniteEntry, "K must be finite");
  const std::size_t m = g.rows(), n = g.cols();
  const BiMatrix phi = phi_from_xi(xi);
  std::vector<double> fdata(m * n);
  std::vector<std::size_t> arg(m * n);
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      double best = kInf;
      std::size_t best_z = 0;
      for (std::size_t z = 0; z < m; ++z) {
        const double cand = g(z, y) + k * phi(x, z);
        if (cand < best) {
          best = cand;
          best_z = z;
        }
      }
      fdata[x * n + y] = best;
      arg[x * n + y] = best_z;
    }
  }
  return InfConvInstance{g, xi, k, BiMatrix(m, n, std::move(fdata)),
                         std::move(arg)};
}

/// Entrywise transfer bound: f(x1,y) - f(x2,y) <= K*phi(x1,x2) + eps_feas
/// over all triples.
inline bool lipschitz_transfer_check(const InfConvInstance& inst,
                                     const Tolerance& tol) {
  tol.validate();
  const std::size_t m = inst.f.rows(), n = inst.f.cols();
  const BiMatrix phi = phi_from_xi(inst.xi);
  for (std::size_t x1 = 0; x1 < m; ++x1)
    for (std::size_t x2 = 0; x2 < m; ++x2) {
      const double bound = inst.K * phi(x1, x2) + tol.eps_feas;
      for (std::size_t y = 0; y < n; ++y)
        if (inst.f(x1, y) - inst.f(x2, y) > bound) return false;
    }
  return true;
}

/// Column-side dual construction: G[x][y] = max_w (h[x][w] -
/// K*phi_eta[y][w]), realized by inf-convolving -h transposed and mapping
/// back. G >= h entrywise and is s-concavelike on columns for every s.
inline BiMatrix sup_convolution(const BiMatrix& h, const XiVector& eta,
                                double k) {
  eta.validate();
  if (eta.size() != h.cols())
    fail(Errc::LengthMismatch, "eta length must equal cols of h");
  const InfConvInstance dual = inf_convolution(h.negated().transposed(), eta, k);
  return dual.f.negated().transposed();
}

/// sup over x of (xi[x] - h[x]).
inline double star_conjugate(const std::vector<double>& h, const XiVector& xi) {
  xi.validate();
  if (h.size() != xi.size())
    fail(Errc::LengthMismatch, "h and xi lengths differ");
  double best = -kInf;
  for (std::size_t x = 0; x < h.size(); ++x) {
    if (!std::isfinite(h[x])) fail(Errc::NonFiniteEntry, "h entry not finite");
    best = std::max(best, xi[x] - h[x]);
  }
  return best;
}

/// Both iterated values of the box family {phi : phi(x) <= bound_x}: the
/// bound vector itself is in the family and attains min bound on both
/// sides, so the two components are always equal.
inline std::pair<double, double> delta_set_value(
    const std::vector<double>& lambda_bounds) {
  if (lambda_bounds.empty())
    fail(Errc::EmptyDimension, "bounds must be nonempty");
  double lo = kInf;
  for (double v : lambda_bounds) {
    if (!std::isfinite(v)) fail(Errc::NonFiniteEntry, "bound not finite");
    lo = std::min(lo, v);
  }
  return {lo, lo};
}

// ---------------------------------------------------------------------------
// Seeded generation

/// Tiny counter-style generator with a fixed, platform-independent output
/// sequence; keeps generated instances byte-identical across toolchains.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 significant bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

/// Seed for the index-th instance of a batch rooted at base.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  SplitMix64 s(base + 0x632BE59BD9B4E019ull * index);
  return s.next();
}

enum class GenKind { Random, Convexlike, Concavelike, TwoFunction, Km2Ready };

inline const char* gen_kind_name(GenKind k) {
  switch (k) {
    case GenKind::Random: return "random";
    case GenKind::Convexlike: return "convexlike";
    case GenKind::Concavelike: return "concavelike";
    case GenKind::TwoFunction: return "two_function";
    case GenKind::Km2Ready: return "km2_ready";
  }
  return "unknown";
}

inline GenKind parse_gen_kind(const std::string& s) {
  if (s == "random") return GenKind::Random;
  if (s == "convexlike") return GenKind::Convexlike;
  if (s == "concavelike") return GenKind::Concavelike;
  if (s == "two_function") return GenKind::TwoFunction;
  if (s == "km2_ready") return GenKind::Km2Ready;
  fail(Errc::ParseError, "unknown generator kind '" + s + "'");
}

/// One generated instance plus the guarantees that hold by construction.
struct GeneratedInstance {
  GenKind kind = GenKind::Random;
  std::uint64_t seed = 0;
  BiMatrix primary;                        // the instance matrix (F for pairs)
  std::optional<BiMatrix> secondary;       // two_function: the dominating G
  std::optional<InfConvInstance> infconv;  // full record when convolved
  std::vector<std::string> guarantees;
};

inline constexpr std::size_t kShapeCap = 2000;

namespace detail {

inline BiMatrix random_entries(SplitMix64& rng, std::size_t m, std::size_t n,
                               double lo, double hi) {
  std::vector<double> data(m * n);
  for (double& v : data) v = rng.uniform(lo, hi);
  return BiMatrix(m, n, std::move(data));
}

inline XiVector random_xi(SplitMix64& rng, std::size_t len) {
  XiVector xi;
  xi.xi.resize(len);
  for (double& v : xi.xi) v = rng.uniform();
  return xi;
}

}  // namespace detail

/// Deterministic instance generation. Entries are drawn on [-1, 1], gauges
/// on [0, 1], K = 1; the guarantees list records what each recipe ensures.
inline GeneratedInstance gen_instance(std::uint64_t seed, std::size_t rows,
                                      std::size_t cols, GenKind kind) {
  if (rows == 0 || cols == 0 || rows > kShapeCap || cols > kShapeCap)
    fail(Errc::ShapeCap, "shape " + std::to_string(rows) + "x" +
                             std::to_string(cols) + " outside [1," +
                             std::to_string(kShapeCap) + "]^2");
  SplitMix64 rng(seed);
  const double k_transfer = 1.0;
  switch (kind) {
    case GenKind::Random: {
      BiMatrix f = detail::random_entries(rng, rows, cols, -1.0, 1.0);
      return GeneratedInstance{kind, seed, std::move(f), std::nullopt,
                               std::nullopt, {}};
    }
    case GenKind::Convexlike: {
      const BiMatrix g = detail::random_entries(rng, rows, cols, -1.0, 1.0);
      const XiVector xi = detail::random_xi(rng, rows);
      InfConvInstance inst = inf_convolution(g, xi, k_transfer);
      BiMatrix f = inst.f;
      return GeneratedInstance{kind,
                               seed,
                               std::move(f),
                               std::nullopt,
                               std::move(inst),
                               {"t-convexlike", "lipschitz-transfer", "f<=g"}};
    }
    case GenKind::Concavelike: {
      const BiMatrix h = detail::random_entries(rng, rows, cols, -1.0, 1.0);
      const XiVector eta = detail::random_xi(rng, cols);
      BiMatrix g = sup_convolution(h, eta, k_transfer);
      return GeneratedInstance{kind, seed, std::move(g), std::nullopt,
                               std::nullopt, {"s-concavelike"}};
    }
    case GenKind::TwoFunction: {
      // F convexlike by inf-convolution; G concavelike above F by adding
      // nonnegative noise and sup-convolving (which only increases).
      const BiMatrix g0 = detail::random_entries(rng, rows, cols, -1.0, 1.0);
      const XiVector xi = detail::random_xi(rng, rows);
      InfConvInstance inst = inf_convolution(g0, xi, k_transfer);
      std::vector<double> bumped = inst.f.data();
      for (double& v : bumped) v += rng.uniform(0.0, 0.5);
      const XiVector eta = detail::random_xi(rng, cols);
      BiMatrix gsup = sup_convolution(BiMatrix(rows, cols, std::move(bumped)),
                                      eta, k_transfer);
      BiMatrix f = inst.f;
      return GeneratedInstance{kind,
                               seed,
                               std::move(f),
                               std::move(gsup),
                               std::move(inst),
                               {"F:t-convexlike", "G:s-concavelike", "F<=G"}};
    }
    case GenKind::Km2Ready: {
      // Concavelike source first, then inf-convolution: the result keeps
      // the column-side witnesses and gains the row-side ones, so both
      // mixed relaxations collapse and the pure gap closes.
      const BiMatrix h = detail::random_entries(rng, rows, cols, -1.0, 1.0);
      const XiVector eta = detail::random_xi(rng, cols);
      const BiMatrix g = sup_convolution(h, eta, k_transfer);
      const XiVector xi = detail::random_xi(rng, rows);
      InfConvInstance inst = inf_convolution(g, xi, k_transfer);
      BiMatrix f = inst.f;
      return GeneratedInstance{
          kind,
          seed,
          std::move(f),
          std::nullopt,
          std::move(inst),
          {"t-convexlike", "s-concavelike", "km2-ready", "zero-gap"}};
    }
  }
  fail(Errc::ParseError, "unhandled generator kind");
}

}  // namespace minimaxlab
