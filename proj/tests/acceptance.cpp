// Acceptance gate: exercises the full toolkit at desk scale and prints one
// [PASS]/[FAIL] line per criterion. Exits nonzero if anything fails.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "minimaxlab/json_io.hpp"
#include "minimaxlab/report.hpp"
#include "oracles.hpp"

using namespace minimaxlab;
namespace fs = std::filesystem;

namespace {

const Tolerance kTol{};
bool g_all_ok = true;

void report(int idx, bool ok, const std::string& text) {
  std::printf("[%s] %d. %s\n", ok ? "PASS" : "FAIL", idx, text.c_str());
  if (!ok) g_all_ok = false;
}

BiMatrix random_matrix(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  std::uniform_int_distribution<std::size_t> side(lo, hi);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  const std::size_t m = side(rng), n = side(rng);
  std::vector<double> data(m * n);
  for (double& v : data) v = entry(rng);
  return BiMatrix(m, n, std::move(data));
}

// everything emitted while running criteria 1-7, re-verified in criterion 8
std::vector<std::pair<BiMatrix, GameSolution>> g_games;
std::vector<std::pair<FunctionFamily, AlternativeOutcome>> g_outcomes;
std::vector<std::pair<SampledSequence, MazurResult>> g_mazur;

// ---------------------------------------------------------------------------

void criterion1() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  int bad_chain = 0, bad_duality = 0;
  for (int it = 0; it < 1000; ++it) {
    const BiMatrix f = random_matrix(rng, 1, 30);
    const ValueReport vr = value_report(f, kTol);
    if (vr.lower > vr.mixed + 1e-7 || vr.mixed > vr.upper + 1e-7) ++bad_chain;
    // mixed min-max from the row mixture vs mixed max-min from the column one
    double minmax = -kInf, maxmin = kInf;
    for (std::size_t j = 0; j < f.cols(); ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < f.rows(); ++i) s += vr.row_weights[i] * f(i, j);
      minmax = std::max(minmax, s);
    }
    for (std::size_t i = 0; i < f.rows(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < f.cols(); ++j) s += vr.col_weights[j] * f(i, j);
      maxmin = std::min(maxmin, s);
    }
    if (std::abs(minmax - maxmin) > 1e-7) ++bad_duality;
    g_games.emplace_back(f, GameSolution{vr.mixed, vr.row_weights, vr.col_weights});
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "weak-duality chain on 1000 random games: %d chain / %d duality "
                "violations, %.1fs (budget 30s)",
                bad_chain, bad_duality, secs);
  report(1, bad_chain == 0 && bad_duality == 0 && secs < 30.0, buf);
}

void criterion2() {
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<std::size_t> side(1, 30);
  int bad = 0;
  for (int it = 0; it < 500; ++it) {
    const GeneratedInstance inst = gen_instance(
        static_cast<std::uint64_t>(it), side(rng), side(rng), GenKind::Convexlike);
    const BiMatrix& f = inst.primary;
    bool ok = is_infsup_convex(f, kTol).holds;
    for (double t : {0.25, 0.5, 0.75}) {
      if (!is_t_convexlike(f, t, kTol).holds) ok = false;
      const Prop22Report rep = check_prop22(f, t, kTol);
      if (rep.vacuous || !rep.ok) ok = false;
    }
    if (!ok) ++bad;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "convexlike-implies-infsup-convex on 500 convolution instances: "
                "%d failures, all non-vacuous",
                bad);
  report(2, bad == 0, buf);
}

void criterion3() {
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<std::size_t> side(1, 30);
  int bad = 0;
  double worst_gap = 0.0;
  for (int it = 0; it < 500; ++it) {
    const GeneratedInstance inst = gen_instance(
        static_cast<std::uint64_t>(it), side(rng), side(rng), GenKind::Km2Ready);
    const ValueReport vr = value_report(inst.primary, kTol);
    worst_gap = std::max(worst_gap, std::abs(vr.gap));
    if (std::abs(vr.gap) > 1e-7) ++bad;
    g_games.emplace_back(inst.primary,
                         GameSolution{vr.mixed, vr.row_weights, vr.col_weights});
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "minimax equality on 500 km2_ready instances: %d gaps above 1e-7 "
                "(worst %.3g)",
                bad, worst_gap);
  report(3, bad == 0, buf);
}

void criterion4() {
  int mismatches = 0, unverified = 0, compared = 0, skipped = 0;
  std::map<std::array<int, 9>, double> oracle_cache;
  std::array<int, 9> digits{};
  digits.fill(-1);
  for (;;) {
    std::vector<double> data(9);
    for (int i = 0; i < 9; ++i) data[static_cast<std::size_t>(i)] = digits[i];
    const FunctionFamily fam{BiMatrix(3, 3, std::move(data))};

    const AlternativeOutcome outcome = decide_alternative(fam, kTol);
    if (!verify_certificate(outcome, fam, kTol)) ++unverified;

    const GameSolution game = solve_zero_sum(fam.members, kTol);
    g_games.emplace_back(fam.members, game);
    if (std::abs(game.value) < 2e-3) {
      ++skipped;
    } else {
      std::array<int, 9> key{};
      for (int i = 0; i < 9; ++i) key[i] = digits[i];
      key = oracles::canonical_3x3_key(key);
      auto it = oracle_cache.find(key);
      if (it == oracle_cache.end())
        it = oracle_cache.emplace(key, oracles::grid_game_value(fam.members, 1000)).first;
      const AlternativeTag oracle_tag =
          it->second < 0.0 ? AlternativeTag::A1 : AlternativeTag::A2;
      ++compared;
      if (outcome.tag != oracle_tag) ++mismatches;
    }
    g_outcomes.emplace_back(fam, outcome);

    int pos = 8;
    while (pos >= 0 && digits[pos] == 1) digits[pos--] = -1;
    if (pos < 0) break;
    ++digits[pos];
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "dichotomy tags on 19683 sign families: %d/%d oracle mismatches "
                "(%d near-zero skipped), %d unverified certificates",
                mismatches, compared, skipped, unverified);
  report(4, mismatches == 0 && unverified == 0, buf);
}

void criterion5() {
  std::mt19937_64 rng(505);
  int bad = 0;
  double worst = kInf;
  for (int it = 0; it < 1000; ++it) {
    const BiMatrix f = random_matrix(rng, 1, 30);
    std::uniform_int_distribution<std::size_t> row(0, f.rows() - 1);
    std::uniform_int_distribution<std::size_t> plen(0, 4), clen(1, 5);
    IndexSequence seq;
    for (std::size_t i = plen(rng); i > 0; --i) seq.prefix.push_back(row(rng));
    for (std::size_t i = clen(rng); i > 0; --i) seq.cycle.push_back(row(rng));
    const SimonsCheck sc = simons_like_check(f, seq, kTol);
    worst = std::min(worst, sc.slack);
    if (!sc.holds || sc.slack < -1e-9) ++bad;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "inf-sup inequality along 1000 eventually-periodic sequences: "
                "%d violations (worst slack %.3g)",
                bad, worst);
  report(5, bad == 0, buf);
}

void criterion6() {
  std::mt19937_64 rng(606);
  std::uniform_int_distribution<std::size_t> side(2, 30);
  int bad_conclusion = 0, false_vacuous = 0;
  for (int it = 0; it < 500; ++it) {
    const GeneratedInstance inst = gen_instance(
        static_cast<std::uint64_t>(it), side(rng), side(rng), GenKind::TwoFunction);
    const BiMatrix& f = inst.primary;
    const BiMatrix& g = *inst.secondary;
    const TheoremCheck km1 = check_km1(f, g, 0.5, kTol);
    const TheoremCheck app2 = check_app2(f, g, 0.5, kTol);
    const TheoremCheck equic = check_cor_equic(f, g, kTol);
    if (km1.vacuous || app2.vacuous || equic.vacuous) ++false_vacuous;
    if (!km1.conclusion_holds || !app2.conclusion_holds || !equic.conclusion_holds)
      ++bad_conclusion;
    if (oracles::pure_upper_value(f) > oracles::pure_lower_value(g) + 1e-7)
      ++bad_conclusion;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "two-function bridge on 500 generated pairs: %d conclusion "
                "failures, %d false vacuous",
                bad_conclusion, false_vacuous);
  report(6, bad_conclusion == 0 && false_vacuous == 0, buf);
}

void criterion7() {
  bool ok = true;
  std::string note;

  std::vector<double> flat(100 * 64);
  for (std::size_t n = 1; n <= 100; ++n)
    for (std::size_t i = 0; i < 64; ++i)
      flat[(n - 1) * 64 + i] = std::pow(0.9 * double(i) / 63.0, double(n));
  const SampledSequence powers(100, 64, 1, std::move(flat));
  const MazurResult full = mazur_extract(powers, 1, 100, kTol);
  g_mazur.emplace_back(powers, full);
  const double expected = std::pow(0.9, 100.0);
  if (std::abs(full.norm - expected) > 1e-9 * expected) {
    ok = false;
    note += " power-norm off;";
  }
  if (full.weights[99] < 1.0 - 1e-6) {
    ok = false;
    note += " weights not concentrated;";
  }

  const SampledSequence alternating(2, 2, 1, {1.0, -1.0, -1.0, 1.0});
  const MazurResult alt = mazur_extract(alternating, 1, 2, kTol);
  g_mazur.emplace_back(alternating, alt);
  if (alt.norm > 1e-12) {
    ok = false;
    note += " alternating-norm off;";
  }

  // independent grid confirmation on the three slowest-decaying members
  std::vector<std::vector<double>> fns;
  std::vector<double> sub_flat;
  for (std::size_t n = 98; n <= 100; ++n) {
    std::vector<double> row(64);
    for (std::size_t i = 0; i < 64; ++i) row[i] = powers.at(n - 1, i, 0);
    sub_flat.insert(sub_flat.end(), row.begin(), row.end());
    fns.push_back(std::move(row));
  }
  const SampledSequence sub(3, 64, 1, std::move(sub_flat));
  const MazurResult lp3 = mazur_extract(sub, 1, 3, kTol);
  g_mazur.emplace_back(sub, lp3);
  const double grid = oracles::grid_min_supnorm(fns, 10000);
  if (lp3.norm > grid + 1e-9 || std::abs(lp3.norm - grid) > 1e-8) {
    ok = false;
    note += " grid-oracle disagrees;";
  }

  char buf[200];
  std::snprintf(buf, sizeof buf,
                "closed-form norm extraction: power %.6g (expect %.6g), "
                "alternating %.3g, grid oracle |diff| %.2g%s",
                full.norm, expected, alt.norm, std::abs(lp3.norm - grid),
                note.c_str());
  report(7, ok, buf);
}

void criterion8() {
  std::size_t bad_games = 0, bad_outcomes = 0, bad_mazur = 0;
  for (const auto& [f, g] : g_games)
    if (!verify_game_solution(f, g, kTol).ok) ++bad_games;
  for (const auto& [fam, outcome] : g_outcomes)
    if (!verify_certificate(outcome, fam, kTol)) ++bad_outcomes;
  for (const auto& [seq, res] : g_mazur)
    if (!verify_mazur_result(seq, res, kTol)) ++bad_mazur;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "certificate round-trips: games %zu/%zu, outcomes %zu/%zu, "
                "combinations %zu/%zu re-verified",
                g_games.size() - bad_games, g_games.size(),
                g_outcomes.size() - bad_outcomes, g_outcomes.size(),
                g_mazur.size() - bad_mazur, g_mazur.size());
  report(8, bad_games == 0 && bad_outcomes == 0 && bad_mazur == 0, buf);
}

// ---------------------------------------------------------------------------

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(MINIMAXLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  CliRun r;
  if (!pipe) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
  return r;
}

void criterion9() {
  const fs::path dir =
      fs::temp_directory_path() /
      ("mml_accept_" + std::to_string(static_cast<long>(::getpid())));
  fs::create_directories(dir);
  const auto scratch = [&](const char* name, const std::string& text) {
    const fs::path p = dir / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  };
  const std::string mp =
      scratch("mp.json", R"({"kind":"bimatrix","rows":2,"cols":2,"data":[[1,0],[0,1]]})");
  const std::string csv = scratch("seq.csv", "1,1,0.25\n1,2,0.5\n2,1,0.125\n2,2,0.25\n");
  const std::string fam = scratch(
      "fam.json",
      R"({"kind":"family","generators":2,"points":3,"members":[[1,-1,0],[-1,1,0]]})");
  const std::string gen_file = (dir / "gen.json").string();
  run_cli("gen --seed 11 --kind convexlike --shape 7x5 --output " + gen_file);

  const std::vector<std::string> invocations = {
      "gen --seed 1 --kind km2_ready --shape 6x5",
      "gen --seed 42 --kind two_function --shape 8x6",
      "game --input " + mp,
      "analyze --json " + gen_file,
      "mazur --input " + csv,
      "alternative --json --input " + fam,
  };
  int unstable = 0, failed = 0;
  for (const std::string& args : invocations) {
    const CliRun a = run_cli(args);
    const CliRun b = run_cli(args);
    if (a.out != b.out || a.code != b.code) ++unstable;
    if (a.code < 0) ++failed;
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "cli determinism: %zu invocation pairs, %d byte mismatches, %d spawn "
                "failures",
                invocations.size(), unstable, failed);
  report(9, unstable == 0 && failed == 0, buf);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  std::printf("%s\n", g_all_ok ? "acceptance: all criteria hold"
                               : "acceptance: FAILURES PRESENT");
  return g_all_ok ? 0 : 1;
}
