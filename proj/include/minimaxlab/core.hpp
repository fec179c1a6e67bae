#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Core instance model shared by every other header: dense bivariate
// matrices, probability vectors, tolerance policy, eventually-periodic
// index sequences, and the validation entry points.

namespace minimaxlab {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Errors

enum class Errc {
  NonFiniteEntry,
  EmptyDimension,
  RaggedRows,
  NegativeWeight,
  SumNotOne,
  LengthMismatch,
  TOutOfRange,
  SOutOfRange,
  DepthTooLarge,
  NotTConvexlike,
  IndexOutOfRange,
  ShapeMismatch,
  BadWindow,
  BadTarget,
  NegativeK,
  ShapeCap,
  CycleLimitExceeded,
  DimensionMismatch,
  BadTolerance,
  ParseError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonFiniteEntry: return "NonFiniteEntry";
    case Errc::EmptyDimension: return "EmptyDimension";
    case Errc::RaggedRows: return "RaggedRows";
    case Errc::NegativeWeight: return "NegativeWeight";
    case Errc::SumNotOne: return "SumNotOne";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::TOutOfRange: return "TOutOfRange";
    case Errc::SOutOfRange: return "SOutOfRange";
    case Errc::DepthTooLarge: return "DepthTooLarge";
    case Errc::NotTConvexlike: return "NotTConvexlike";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::BadWindow: return "BadWindow";
    case Errc::BadTarget: return "BadTarget";
    case Errc::NegativeK: return "NegativeK";
    case Errc::ShapeCap: return "ShapeCap";
    case Errc::CycleLimitExceeded: return "CycleLimitExceeded";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::BadTolerance: return "BadTolerance";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

// ---------------------------------------------------------------------------
// Tolerance policy

/// Absolute tolerances used throughout: eps_feas for feasibility slack,
/// eps_opt for duality gaps, eps_cert for re-verifying certificates.
struct Tolerance {
  double eps_feas = 1e-9;
  double eps_opt = 1e-7;
  double eps_cert = 1e-7;

  void validate() const {
    if (!(eps_feas > 0.0) || !(eps_opt > 0.0) || !(eps_cert > 0.0))
      fail(Errc::BadTolerance, "tolerances must be strictly positive");
    if (eps_feas > eps_cert)
      fail(Errc::BadTolerance, "eps_feas must not exceed eps_cert");
  }
};

// ---------------------------------------------------------------------------
// BiMatrix

/// Dense row-major matrix F with entry (i,j) the value of the bivariate
/// function at the i-th X-point and j-th Y-point. Immutable once built.
class BiMatrix {
 public:
  BiMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows_ == 0 || cols_ == 0)
      fail(Errc::EmptyDimension, "matrix must have at least one row and one column");
    if (data_.size() != rows_ * cols_)
      fail(Errc::RaggedRows, "data size does not match rows*cols");
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!std::isfinite(data_[i * cols_ + j]))
          fail(Errc::NonFiniteEntry, "entry (" + std::to_string(i) + "," +
                                         std::to_string(j) + ") is not finite");
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<double>& data() const noexcept { return data_; }

  BiMatrix transposed() const {
    std::vector<double> t(rows_ * cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t[j * rows_ + i] = (*this)(i, j);
    return BiMatrix(cols_, rows_, std::move(t));
  }

  BiMatrix negated() const {
    std::vector<double> n(data_);
    for (double& v : n) v = -v;
    return BiMatrix(rows_, cols_, std::move(n));
  }

  BiMatrix shifted(double c) const {
    std::vector<double> s(data_);
    for (double& v : s) v += c;
    return BiMatrix(rows_, cols_, std::move(s));
  }

  double min_entry() const {
    double m = data_[0];
    for (double v : data_) m = std::min(m, v);
    return m;
  }

  double max_entry() const {
    double m = data_[0];
    for (double v : data_) m = std::max(m, v);
    return m;
  }

  /// Row i as a contiguous span of cols() doubles.
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  bool same_shape(const BiMatrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  friend bool operator==(const BiMatrix& a, const BiMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

/// Builds a BiMatrix from nested rows, rejecting ragged or non-finite input.
inline BiMatrix validate_bimatrix(const std::vector<std::vector<double>>& raw) {
  if (raw.empty() || raw.front().empty())
    fail(Errc::EmptyDimension, "matrix must have at least one row and one column");
  const std::size_t cols = raw.front().size();
  std::vector<double> flat;
  flat.reserve(raw.size() * cols);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].size() != cols)
      fail(Errc::RaggedRows, "row " + std::to_string(i) + " has length " +
                                 std::to_string(raw[i].size()) + ", expected " +
                                 std::to_string(cols));
    for (std::size_t j = 0; j < cols; ++j) {
      if (!std::isfinite(raw[i][j]))
        fail(Errc::NonFiniteEntry, "entry (" + std::to_string(i) + "," +
                                       std::to_string(j) + ") is not finite");
      flat.push_back(raw[i][j]);
    }
  }
  return BiMatrix(raw.size(), cols, std::move(flat));
}

// ---------------------------------------------------------------------------
// Weights

/// A probability vector over an index set. Always nonnegative and summing
/// to one within the tolerance it was validated under.
class Weights {
 public:
  explicit Weights(std::vector<double> w) : w_(std::move(w)) {}

  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  const std::vector<double>& values() const noexcept { return w_; }

  friend bool operator==(const Weights& a, const Weights& b) {
    return a.w_ == b.w_;
  }

 private:
  std::vector<double> w_;
};

/// Accepts a candidate probability vector. Negative dust in [-eps_feas, 0)
/// is clamped to zero and the vector renormalized; anything worse is
/// rejected. Already-clean vectors pass through unchanged, so validation
/// is idempotent on accepted inputs.
inline Weights validate_weights(std::vector<double> candidate,
                                std::size_t expected_len, const Tolerance& tol) {
  tol.validate();
  if (candidate.size() != expected_len)
    fail(Errc::LengthMismatch, "expected length " + std::to_string(expected_len) +
                                   ", got " + std::to_string(candidate.size()));
  bool clamped = false;
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    const double v = candidate[i];
    if (!std::isfinite(v))
      fail(Errc::NonFiniteEntry, "weight " + std::to_string(i) + " is not finite");
    if (v < -tol.eps_feas)
      fail(Errc::NegativeWeight, "weight " + std::to_string(i) + " = " +
                                     std::to_string(v) + " below -eps_feas");
    if (v < 0.0) {
      candidate[i] = 0.0;
      clamped = true;
    } else if (v == 0.0) {
      candidate[i] = 0.0;  // canonicalize -0.0
    }
  }
  double sum = 0.0;
  for (double v : candidate) sum += v;
  if (std::abs(sum - 1.0) > tol.eps_feas)
    fail(Errc::SumNotOne, "weights sum to " + std::to_string(sum));
  if (clamped && sum > 0.0)
    for (double& v : candidate) v /= sum;
  return Weights(std::move(candidate));
}

// ---------------------------------------------------------------------------
// IndexSequence

/// An eventually-periodic sequence of row indices: a finite prefix followed
/// by a nonempty cycle repeated forever. Exact model of sequential limsup
/// behaviour on a finite point set.
struct IndexSequence {
  std::vector<std::size_t> prefix;
  std::vector<std::size_t> cycle;

  void validate(std::size_t rows) const {
    if (cycle.empty()) fail(Errc::EmptyDimension, "cycle must be nonempty");
    for (std::size_t i : prefix)
      if (i >= rows)
        fail(Errc::IndexOutOfRange,
             "prefix index " + std::to_string(i) + " out of range");
    for (std::size_t i : cycle)
      if (i >= rows)
        fail(Errc::IndexOutOfRange,
             "cycle index " + std::to_string(i) + " out of range");
  }
};

// ---------------------------------------------------------------------------
// Small shared helpers

/// FNV-1a over raw bytes; used for instance digests in reports.
inline std::uint64_t fnv1a(const void* data, std::size_t len,
                           std::uint64_t seed = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t digest_matrix(const BiMatrix& f) {
  const std::uint64_t dims[2] = {f.rows(), f.cols()};
  std::uint64_t h = fnv1a(dims, sizeof(dims));
  h = fnv1a(f.data().data(), f.data().size() * sizeof(double), h);
  return h;
}

}  // namespace minimaxlab
