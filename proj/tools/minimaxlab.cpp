// Command-line front end: ingest instances, run analyses, emit reports and
// generated artifacts. Exit codes: 0 success, 1 a non-vacuous conclusion or
// certificate failed, 2 parse/validation trouble.

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "minimaxlab/json_io.hpp"
#include "minimaxlab/report.hpp"

namespace {

using namespace minimaxlab;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes through a temporary in the same directory and renames into place,
// so readers never observe a half-written artifact.
void emit(const std::string& output_path, const std::string& text) {
  if (output_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  const std::string tmp = output_path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::ParseError, "cannot write '" + tmp + "'");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) fail(Errc::ParseError, "short write to '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), output_path.c_str()) != 0)
    fail(Errc::ParseError, "cannot move output into place at '" + output_path + "'");
}

std::vector<double> parse_double_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(tok, &pos);
      while (pos < tok.size() && (tok[pos] == ' ' || tok[pos] == '\t')) ++pos;
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      fail(Errc::ParseError,
           std::string(flag) + " entry '" + tok + "' is not a number");
    }
  }
  if (out.empty())
    fail(Errc::ParseError, std::string(flag) + " needs at least one value");
  return out;
}

std::vector<std::string> parse_name_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

SampledSequence load_sequence(const std::string& path) {
  if (ends_with(path, ".csv")) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::ParseError, "cannot open '" + path + "'");
    return sequence_from_csv(in);
  }
  return sequence_from_json(parse_json_text(read_file(path)));
}

std::pair<std::size_t, std::size_t> parse_shape(const std::string& text) {
  const std::size_t x = text.find('x');
  if (x == std::string::npos || x == 0 || x + 1 >= text.size())
    fail(Errc::ParseError, "--shape must look like ROWSxCOLS, e.g. 6x5");
  try {
    std::size_t pos = 0;
    const unsigned long long r = std::stoull(text.substr(0, x), &pos);
    if (pos != x) throw std::invalid_argument(text);
    const std::string ctext = text.substr(x + 1);
    const unsigned long long c = std::stoull(ctext, &pos);
    if (pos != ctext.size()) throw std::invalid_argument(text);
    return {static_cast<std::size_t>(r), static_cast<std::size_t>(c)};
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(Errc::ParseError, "--shape must look like ROWSxCOLS, e.g. 6x5");
  }
}

std::size_t worker_pool_size(std::size_t jobs) {
  std::size_t cap = std::thread::hardware_concurrency();
  if (cap == 0) cap = 1;
  if (const char* env = std::getenv("MINIMAXLAB_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != nullptr && *end == '\0') cap = v == 0 ? 1 : static_cast<std::size_t>(v);
  }
  if (cap > jobs) cap = jobs;
  return cap == 0 ? 1 : cap;
}

// ---------------------------------------------------------------------------
// Subcommand argument bundles

struct AnalyzeArgs {
  std::vector<std::string> inputs;
  bool as_json = false;
  std::string t_list = "0.25,0.5,0.75";
  std::string s_list = "0.25,0.5,0.75";
  std::string checks = "km2,lem2,corollary0";
  Tolerance tol;
};

struct AlternativeArgs {
  std::string input;
  bool as_json = false;
  Tolerance tol;
};

struct GameArgs {
  std::string input;
  std::string output;
  Tolerance tol;
};

struct GenArgs {
  std::uint64_t seed = 0;
  std::string kind = "random";
  std::string shape;
  std::string output;
};

struct ConstructArgs {
  std::string input;
  std::string xi_list;
  double k = 1.0;
  std::string mode = "inf";
  std::string output;
};

struct MazurArgs {
  std::string input;
  std::size_t tail = 1;
  std::size_t window = 0;  // 0 = full sequence
  std::string targets;
  std::string policy = "fixed_end";
  std::string output;
  Tolerance tol;
};

struct VerifyArgs {
  std::string input;
  std::string cert;
  bool as_json = false;
  Tolerance tol;
};

// ---------------------------------------------------------------------------
// Handlers

int run_analyze(const AnalyzeArgs& args) {
  AnalyzeOptions opt;
  opt.t_samples = parse_double_list(args.t_list, "--t");
  opt.s_samples = parse_double_list(args.s_list, "--s");
  opt.checks = parse_name_list(args.checks);
  opt.tol = args.tol;
  opt.tol.validate();

  struct Slot {
    std::string text;
    std::string error;
    int code = 0;
  };
  std::vector<Slot> slots(args.inputs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= args.inputs.size()) return;
      Slot& slot = slots[i];
      try {
        const json j = parse_json_text(read_file(args.inputs[i]));
        const std::string kind = detail::require_string(j, "kind");
        AnalysisReport rep;
        if (kind == "bimatrix") {
          rep = analyze_bimatrix(bimatrix_from_json(j), opt);
        } else if (kind == "family") {
          rep = analyze_family(family_from_json(j), opt);
        } else if (kind == "infconv") {
          rep = analyze_bimatrix(infconv_from_json(j).instance.f, opt);
        } else if (kind == "generated") {
          rep = analyze_bimatrix(
              bimatrix_from_json(detail::require_field(j, "matrix")), opt);
        } else {
          fail(Errc::ParseError,
               "analyze does not handle kind '" + kind +
                   "' (sequences go through the mazur subcommand; pair members "
                   "can be analyzed as bimatrix files)");
        }
        slot.text = args.as_json ? analysis_to_json(rep).dump() + "\n"
                                 : render_analysis_text(rep);
        slot.code = rep.any_failed_theorem() ? 1 : 0;
      } catch (const std::exception& e) {
        slot.error = e.what();
        slot.code = 2;
      }
    }
  };
  const std::size_t pool = worker_pool_size(args.inputs.size());
  if (pool <= 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(pool - 1);
    for (std::size_t i = 0; i + 1 < pool; ++i) threads.emplace_back(work);
    work();
    for (std::thread& t : threads) t.join();
  }

  int final_code = 0;
  bool first_text = true;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i].error.empty()) {
      std::fprintf(stderr, "error: %s: %s\n", args.inputs[i].c_str(),
                   slots[i].error.c_str());
    } else {
      if (!args.as_json && !first_text) std::fputc('\n', stdout);
      std::fwrite(slots[i].text.data(), 1, slots[i].text.size(), stdout);
      first_text = false;
    }
    if (slots[i].code > final_code) final_code = slots[i].code;
  }
  return final_code;
}

int run_alternative(const AlternativeArgs& args) {
  args.tol.validate();
  const FunctionFamily fam = family_from_json(parse_json_text(read_file(args.input)));
  const AlternativeOutcome outcome = decide_alternative(fam, args.tol);
  const bool verified = verify_certificate(outcome, fam, args.tol);
  if (args.as_json) {
    const json j{{"outcome", outcome_to_json(outcome)}, {"verified", verified}};
    emit("", j.dump() + "\n");
  } else {
    std::string text = std::string("tag ") + tag_name(outcome.tag) + "   margin " +
                       detail::fmt_num(outcome.margin) + "\n";
    if (outcome.combo)
      text += "combo " + detail::fmt_weights(*outcome.combo) + "   sup " +
              detail::fmt_num(*outcome.sup_value) + "\n";
    if (outcome.measure)
      text += "measure " + detail::fmt_weights(*outcome.measure) +
              "   min_pairing " + detail::fmt_num(*outcome.min_pairing) + "\n";
    text += std::string("certificate ") + (verified ? "verified" : "REJECTED") + "\n";
    emit("", text);
  }
  return verified ? 0 : 1;
}

int run_game(const GameArgs& args) {
  args.tol.validate();
  const BiMatrix f = bimatrix_from_json(parse_json_text(read_file(args.input)));
  const GameSolution g = solve_zero_sum(f, args.tol);
  if (!verify_game_solution(f, g, args.tol).ok)
    fail(Errc::CycleLimitExceeded, "game certificate failed re-verification");
  emit(args.output, game_to_json(g).dump() + "\n");
  return 0;
}

int run_gen(const GenArgs& args) {
  const auto [rows, cols] = parse_shape(args.shape);
  const GeneratedInstance inst =
      gen_instance(args.seed, rows, cols, parse_gen_kind(args.kind));
  emit(args.output, generated_to_json(inst).dump() + "\n");
  return 0;
}

int run_construct(const ConstructArgs& args) {
  const BiMatrix g = bimatrix_from_json(parse_json_text(read_file(args.input)));
  const XiVector xi{parse_double_list(args.xi_list, "--xi")};
  if (args.mode == "inf") {
    const InfConvInstance inst = inf_convolution(g, xi, args.k);
    emit(args.output,
         infconv_to_json(inst, {"t-convexlike", "lipschitz-transfer", "f<=g"})
                 .dump() +
             "\n");
  } else if (args.mode == "sup") {
    const BiMatrix out = sup_convolution(g, xi, args.k);
    emit(args.output,
         generated_to_json_single(out, {"s-concavelike"}).dump() + "\n");
  } else {
    fail(Errc::ParseError, "--mode must be 'inf' or 'sup'");
  }
  return 0;
}

int run_mazur(const MazurArgs& args) {
  args.tol.validate();
  const SampledSequence seq = load_sequence(args.input);
  if (!args.targets.empty()) {
    SchedulePolicy policy = SchedulePolicy::FixedEnd;
    if (args.policy == "growing") {
      policy = SchedulePolicy::GrowingWindow;
    } else if (args.policy != "fixed_end") {
      fail(Errc::ParseError, "--policy must be 'fixed_end' or 'growing'");
    }
    const auto plan = mazur_schedule(
        seq, parse_double_list(args.targets, "--targets"), args.tol, policy);
    json arr = json::array();
    for (const MazurResult& r : plan) arr.push_back(mazur_to_json(r));
    emit(args.output, arr.dump() + "\n");
    return 0;
  }
  const std::size_t w = args.window == 0 ? seq.N : args.window;
  const MazurResult res = mazur_extract(seq, args.tail, w, args.tol);
  if (!verify_mazur_result(seq, res, args.tol))
    fail(Errc::CycleLimitExceeded, "norm certificate failed re-verification");
  emit(args.output, mazur_to_json(res).dump() + "\n");
  return 0;
}

int run_verify(const VerifyArgs& args) {
  args.tol.validate();
  const json cert = parse_json_text(read_file(args.cert));
  bool ok = false;
  std::string what;
  // A certificate that parses but fails weight validation is a failed
  // certificate, not a parse error; only structurally broken JSON is 2.
  try {
    if (cert.contains("tag")) {
      what = "alternative outcome";
      const FunctionFamily fam =
          family_from_json(parse_json_text(read_file(args.input)));
      const AlternativeOutcome outcome =
          outcome_from_json(cert, fam.generators(), fam.points(), args.tol);
      ok = verify_certificate(outcome, fam, args.tol);
    } else if (cert.contains("tail_start")) {
      what = "norm combination";
      const SampledSequence seq = load_sequence(args.input);
      const MazurResult res = mazur_from_json(cert, args.tol);
      ok = verify_mazur_result(seq, res, args.tol);
    } else if (cert.contains("row_weights")) {
      what = "game solution";
      const BiMatrix f = bimatrix_from_json(parse_json_text(read_file(args.input)));
      const GameSolution g = game_from_json(cert, f.rows(), f.cols(), args.tol);
      ok = verify_game_solution(f, g, args.tol).ok;
    } else {
      fail(Errc::ParseError,
           "certificate not recognized: expected one of the emitted artifact forms");
    }
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) throw;
    ok = false;
    what += std::string(" (") + e.what() + ")";
  }
  if (args.as_json)
    emit("", json{{"verified", ok}}.dump() + "\n");
  else
    emit("", what + (ok ? " verified" : " REJECTED") + "\n");
  return ok ? 0 : 1;
}

void add_tol_flags(CLI::App* sub, Tolerance& tol) {
  sub->add_option("--tol-feas", tol.eps_feas, "feasibility tolerance");
  sub->add_option("--tol-opt", tol.eps_opt, "optimality tolerance");
  sub->add_option("--tol-cert", tol.eps_cert, "certificate tolerance");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite minimax analysis toolkit"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  CLI::App* analyze = app.add_subcommand("analyze", "full report on instances");
  analyze->add_option("inputs", analyze_args.inputs, "instance files")->required();
  analyze->add_flag("--json", analyze_args.as_json, "single-line JSON output");
  analyze->add_option("--t", analyze_args.t_list, "comma list of t samples");
  analyze->add_option("--s", analyze_args.s_list, "comma list of s samples");
  analyze->add_option("--checks", analyze_args.checks, "comma list of theorem ids");
  add_tol_flags(analyze, analyze_args.tol);

  AlternativeArgs alternative_args;
  CLI::App* alternative =
      app.add_subcommand("alternative", "dichotomy decision for a family");
  alternative->add_option("--input", alternative_args.input, "family JSON")->required();
  alternative->add_flag("--json", alternative_args.as_json, "single-line JSON output");
  add_tol_flags(alternative, alternative_args.tol);

  GameArgs game_args;
  CLI::App* game = app.add_subcommand("game", "solve a zero-sum matrix game");
  game->add_option("--input", game_args.input, "bimatrix JSON")->required();
  game->add_option("--output", game_args.output, "write artifact here (default stdout)");
  add_tol_flags(game, game_args.tol);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate a seeded instance");
  gen->add_option("--seed", gen_args.seed, "64-bit seed");
  gen->add_option("--kind", gen_args.kind,
                  "random|convexlike|concavelike|two_function|km2_ready");
  gen->add_option("--shape", gen_args.shape, "ROWSxCOLS")->required();
  gen->add_option("--output", gen_args.output, "write artifact here (default stdout)");

  ConstructArgs construct_args;
  CLI::App* construct =
      app.add_subcommand("construct", "convolve a matrix against a potential");
  construct->add_option("--input", construct_args.input, "bimatrix JSON")->required();
  construct->add_option("--xi", construct_args.xi_list, "comma list potential")->required();
  construct->add_option("--k", construct_args.k, "transfer constant (default 1)");
  construct->add_option("--mode", construct_args.mode, "inf|sup (default inf)");
  construct->add_option("--output", construct_args.output,
                        "write artifact here (default stdout)");

  MazurArgs mazur_args;
  CLI::App* mazur =
      app.add_subcommand("mazur", "minimal-norm combinations of a sequence");
  mazur->add_option("--input", mazur_args.input, "sequence JSON or CSV")->required();
  mazur->add_option("--tail", mazur_args.tail, "window start m (1-based, default 1)");
  mazur->add_option("--window", mazur_args.window, "window end w (default N)");
  mazur->add_option("--targets", mazur_args.targets,
                    "comma list of decreasing norm targets (schedule mode)");
  mazur->add_option("--policy", mazur_args.policy, "fixed_end|growing");
  mazur->add_option("--output", mazur_args.output,
                    "write artifact here (default stdout)");
  add_tol_flags(mazur, mazur_args.tol);

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "re-check an emitted certificate");
  verify->add_option("--input", verify_args.input, "instance file")->required();
  verify->add_option("--cert", verify_args.cert, "certificate JSON")->required();
  verify->add_flag("--json", verify_args.as_json, "single-line JSON output");
  add_tol_flags(verify, verify_args.tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return run_analyze(analyze_args);
    if (*alternative) return run_alternative(alternative_args);
    if (*game) return run_game(game_args);
    if (*gen) return run_gen(gen_args);
    if (*construct) return run_construct(construct_args);
    if (*mazur) return run_mazur(mazur_args);
    if (*verify) return run_verify(verify_args);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
