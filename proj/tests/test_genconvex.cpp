#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "minimaxlab/core.hpp"
#include "minimaxlab/genconvex.hpp"
#include "oracles.hpp"

using namespace minimaxlab;

namespace {

BiMatrix random_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n,
                       double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> data(m * n);
  for (double& v : data) v = dist(rng);
  return BiMatrix(m, n, std::move(data));
}

// Random matrix whose last row is the componentwise minimum of the others;
// that row witnesses every pair for every t, so the result is t-convexlike
// by construction.
BiMatrix random_convexlike(std::mt19937_64& rng, std::size_t m, std::size_t n) {
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::vector<double> data((m + 1) * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) data[i * n + j] = dist(rng);
  for (std::size_t j = 0; j < n; ++j) {
    double lo = data[j];
    for (std::size_t i = 1; i < m; ++i) lo = std::min(lo, data[i * n + j]);
    data[m * n + j] = lo;
  }
  return BiMatrix(m + 1, n, std::move(data));
}

}  // namespace

TEST_CASE("is_t_convexlike: dominating zero row") {
  const Tolerance tol;
  const ConvexityReport r =
      is_t_convexlike(validate_bimatrix({{0.0, 0.0}, {5.0, 5.0}}), 0.5, tol);
  CHECK(r.holds);
  CHECK(r.property == "t-convexlike");
  REQUIRE(r.t.has_value());
  CHECK(*r.t == 0.5);
  CHECK_FALSE(r.witness.has_value());
}

TEST_CASE("is_t_convexlike: matching pennies fails with witness") {
  const Tolerance tol;
  const ConvexityReport r =
      is_t_convexlike(validate_bimatrix({{0.0, 1.0}, {1.0, 0.0}}), 0.5, tol);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->first == 0);
  CHECK(r.witness->second == 1);
  REQUIRE(r.witness->mixture.size() == 2);
  CHECK_THAT(r.witness->mixture[0], Catch::Matchers::WithinAbs(0.5, 1e-15));
  CHECK_THAT(r.witness->mixture[1], Catch::Matchers::WithinAbs(0.5, 1e-15));
}

TEST_CASE("is_t_convexlike rejects t outside (0,1)") {
  const BiMatrix f = validate_bimatrix({{0.0}});
  for (double t : {0.0, 1.0, -0.5, 2.0}) {
    try {
      is_t_convexlike(f, t, Tolerance{});
      FAIL("expected TOutOfRange");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::TOutOfRange);
    }
  }
}

TEST_CASE("is_s_concavelike: dominating column") {
  const Tolerance tol;
  const ConvexityReport r =
      is_s_concavelike(validate_bimatrix({{0.0, 5.0}, {0.0, 5.0}}), 0.5, tol);
  CHECK(r.holds);
  CHECK(r.property == "t-concavelike");
}

TEST_CASE("is_s_concavelike: matching pennies fails") {
  const ConvexityReport r =
      is_s_concavelike(validate_bimatrix({{0.0, 1.0}, {1.0, 0.0}}), 0.5, Tolerance{});
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness.has_value());
}

TEST_CASE("is_s_concavelike rejects s outside (0,1)") {
  try {
    is_s_concavelike(validate_bimatrix({{0.0}}), 1.0, Tolerance{});
    FAIL("expected SOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SOutOfRange);
  }
}

TEST_CASE("concavelike/convexlike duality identity") {
  std::mt19937_64 rng(42);
  const Tolerance tol;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 1 + rng() % 5, n = 1 + rng() % 5;
    const BiMatrix f = random_matrix(rng, m, n, -1.0, 1.0);
    const double s = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
    const bool direct = is_s_concavelike(f, s, tol).holds;
    const bool via_dual = is_t_convexlike(f.negated().transposed(), s, tol).holds;
    CHECK(direct == via_dual);
  }
}

TEST_CASE("mixed values on the frozen examples") {
  const Tolerance tol;
  const BiMatrix pennies = validate_bimatrix({{0.0, 1.0}, {1.0, 0.0}});
  CHECK_THAT(infsup_convex_value(pennies, tol),
             Catch::Matchers::WithinAbs(0.5, 1e-9));
  CHECK_THAT(supinf_concave_value(pennies, tol),
             Catch::Matchers::WithinAbs(0.5, 1e-9));
  CHECK_THAT(infsup_convex_value(validate_bimatrix({{-2.5}}), tol),
             Catch::Matchers::WithinAbs(-2.5, 1e-12));
  CHECK_THAT(supinf_concave_value(validate_bimatrix({{-2.5}}), tol),
             Catch::Matchers::WithinAbs(-2.5, 1e-12));
  CHECK_THAT(infsup_convex_value(validate_bimatrix({{0.0, 0.0}, {1.0, 1.0}}), tol),
             Catch::Matchers::WithinAbs(0.0, 1e-9));
  CHECK_THAT(supinf_concave_value(validate_bimatrix({{0.0, 1.0}, {0.0, 1.0}}), tol),
             Catch::Matchers::WithinAbs(1.0, 1e-9));
}

TEST_CASE("value classifier examples") {
  const Tolerance tol;
  const BiMatrix pennies = validate_bimatrix({{0.0, 1.0}, {1.0, 0.0}});
  const ConvexityReport a = is_infsup_convex(pennies, tol);
  CHECK_FALSE(a.holds);
  CHECK_THAT(*a.lhs_value, Catch::Matchers::WithinAbs(1.0, 1e-12));
  CHECK_THAT(*a.rhs_value, Catch::Matchers::WithinAbs(0.5, 1e-9));
  const ConvexityReport b =
      is_infsup_convex(validate_bimatrix({{0.0, 0.0}, {1.0, 1.0}}), tol);
  CHECK(b.holds);
  CHECK_THAT(*b.lhs_value, Catch::Matchers::WithinAbs(0.0, 1e-12));
  const ConvexityReport c = is_supinf_concave(pennies, tol);
  CHECK_FALSE(c.holds);
  CHECK_THAT(*c.lhs_value, Catch::Matchers::WithinAbs(0.0, 1e-12));
  CHECK_THAT(*c.rhs_value, Catch::Matchers::WithinAbs(0.5, 1e-9));
}

TEST_CASE("weak duality ordering chain on random matrices") {
  std::mt19937_64 rng(2024);
  const Tolerance tol;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 1 + rng() % 8, n = 1 + rng() % 8;
    const BiMatrix f = random_matrix(rng, m, n, -4.0, 4.0);
    const double lower = oracles::pure_lower_value(f);
    const double upper = oracles::pure_upper_value(f);
    const double vi = infsup_convex_value(f, tol);
    const double vs = supinf_concave_value(f, tol);
    CHECK(lower <= vs + tol.eps_opt);
    CHECK(std::abs(vs - vi) <= tol.eps_opt);
    CHECK(vi <= upper + tol.eps_opt);
  }
}

TEST_CASE("dense_coefficients: vertices only at depth 0") {
  const std::vector<Weights> d0 = dense_coefficients(0.5, 2, 0);
  REQUIRE(d0.size() == 2);
  CHECK(d0[0].values() == std::vector<double>{0.0, 1.0});
  CHECK(d0[1].values() == std::vector<double>{1.0, 0.0});
}

TEST_CASE("dense_coefficients: depth-2 halving set") {
  const std::vector<Weights> d2 = dense_coefficients(0.5, 2, 2);
  REQUIRE(d2.size() == 5);
  const std::vector<std::vector<double>> expect = {
      {0.0, 1.0}, {0.25, 0.75}, {0.5, 0.5}, {0.75, 0.25}, {1.0, 0.0}};
  for (std::size_t i = 0; i < expect.size(); ++i) {
    REQUIRE(d2[i].size() == 2);
    CHECK_THAT(d2[i][0], Catch::Matchers::WithinAbs(expect[i][0], 1e-12));
    CHECK_THAT(d2[i][1], Catch::Matchers::WithinAbs(expect[i][1], 1e-12));
  }
}

TEST_CASE("dense_coefficients: single vertex") {
  for (std::size_t depth : {0u, 1u, 5u}) {
    const std::vector<Weights> d = dense_coefficients(0.5, 1, depth);
    REQUIRE(d.size() == 1);
    CHECK(d[0].values() == std::vector<double>{1.0});
  }
}

TEST_CASE("dense_coefficients grows monotonically with depth") {
  for (double t : {0.5, 0.25}) {
    const std::vector<Weights> d2 = dense_coefficients(t, 3, 2);
    const std::vector<Weights> d3 = dense_coefficients(t, 3, 3);
    REQUIRE(d2.size() <= d3.size());
    // Sorted vectors: containment by merge scan.
    std::size_t k = 0;
    for (const Weights& w : d2) {
      while (k < d3.size() && !(d3[k] == w)) ++k;
      CHECK(k < d3.size());
    }
  }
}

TEST_CASE("dense_coefficients enforces the vector cap") {
  try {
    dense_coefficients(0.3777215, 3, 12, 200);
    FAIL("expected DepthTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DepthTooLarge);
  }
}

TEST_CASE("fact1_witness: dominating row under an even mixture") {
  const BiMatrix f = validate_bimatrix({{0.0, 0.0}, {4.0, 4.0}, {2.0, 2.0}});
  const Tolerance tol;
  const Weights coeffs = validate_weights({0.5, 0.5}, 2, tol);
  const std::size_t i0 = fact1_witness(f, 0.5, {1, 2}, coeffs, tol);
  CHECK(i0 == 0);
}

TEST_CASE("fact1_witness: identity mixture") {
  const BiMatrix f = validate_bimatrix({{0.0, 0.0}, {5.0, 5.0}});
  const Tolerance tol;
  const Weights coeffs = validate_weights({1.0}, 1, tol);
  CHECK(fact1_witness(f, 0.5, {0}, coeffs, tol) == 0);
}

TEST_CASE("fact1_witness re-verifies by direct scan on convexlike instances") {
  std::mt19937_64 rng(77);
  const Tolerance tol;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 3 + rng() % 4, n = 2 + rng() % 4;
    const BiMatrix f = random_convexlike(rng, m, n);
    const double t = (trial % 2) ? 0.5 : 0.25;
    const std::vector<Weights> coeff_set = dense_coefficients(t, 3, 3);
    const Weights& coeffs = coeff_set[rng() % coeff_set.size()];
    std::vector<std::size_t> rows = {rng() % f.rows(), rng() % f.rows(),
                                     rng() % f.rows()};
    const std::size_t i0 = fact1_witness(f, t, rows, coeffs, tol);
    REQUIRE(i0 < f.rows());
    for (std::size_t j = 0; j < f.cols(); ++j) {
      double combo = 0.0;
      for (std::size_t k = 0; k < rows.size(); ++k)
        combo += coeffs[k] * f(rows[k], j);
      CHECK(f(i0, j) <= combo + 1e-6);
    }
  }
}

TEST_CASE("fact1_witness reports a missing pairwise witness") {
  const BiMatrix pennies = validate_bimatrix({{0.0, 1.0}, {1.0, 0.0}});
  const Tolerance tol;
  const Weights coeffs = validate_weights({0.5, 0.5}, 2, tol);
  try {
    fact1_witness(pennies, 0.5, {0, 1}, coeffs, tol);
    FAIL("expected NotTConvexlike");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotTConvexlike);
  }
}

TEST_CASE("check_prop22 on the frozen pair") {
  const Tolerance tol;
  const Prop22Report a =
      check_prop22(validate_bimatrix({{0.0, 0.0}, {1.0, 1.0}}), 0.5, tol);
  CHECK(a.hypothesis.holds);
  CHECK(a.conclusion.holds);
  CHECK_FALSE(a.vacuous);
  CHECK(a.ok);
  const Prop22Report b =
      check_prop22(validate_bimatrix({{0.0, 1.0}, {1.0, 0.0}}), 0.5, tol);
  CHECK_FALSE(b.hypothesis.holds);
  CHECK(b.vacuous);
  CHECK(b.ok);
}

TEST_CASE("t-convexlike implies infsup-convex on generated instances") {
  std::mt19937_64 rng(31337);
  const Tolerance tol;
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = 2 + rng() % 5, n = 2 + rng() % 5;
    const BiMatrix f = random_convexlike(rng, m, n);
    const double t = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
    const Prop22Report rep = check_prop22(f, t, tol);
    CHECK(rep.hypothesis.holds);
    CHECK_FALSE(rep.vacuous);
    CHECK(rep.ok);
  }
}
