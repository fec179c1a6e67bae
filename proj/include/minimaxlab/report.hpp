#pragma once

// Orchestration of a full instance analysis: values, convexity
// classifications at sampled mixing parameters, theorem replays, and the
// alternative decision for families, bundled with the instance digest and
// the tolerance that produced everything.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "minimaxlab/alternative.hpp"
#include "minimaxlab/core.hpp"
#include "minimaxlab/genconvex.hpp"
#include "minimaxlab/json_io.hpp"
#include "minimaxlab/lp.hpp"
#include "minimaxlab/minimax.hpp"

namespace minimaxlab {

struct InstanceDigest {
  std::string kind;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string hash;
};

struct AnalysisReport {
  InstanceDigest digest;
  std::optional<ValueReport> value;
  std::vector<ConvexityReport> convexity;
  std::vector<TheoremCheck> theorems;
  std::optional<AlternativeOutcome> alternative;
  std::string tool_version = kToolVersion;
  Tolerance tolerance;

  // True when some replay with every hypothesis satisfied still reports a
  // failed conclusion -- the condition the CLI maps to exit code 1.
  bool any_failed_theorem() const {
    for (const TheoremCheck& c : theorems)
      if (!c.vacuous && !c.conclusion_holds) return true;
    return false;
  }
};

struct AnalyzeOptions {
  std::vector<double> t_samples{0.25, 0.5, 0.75};
  std::vector<double> s_samples{0.25, 0.5, 0.75};
  std::vector<std::string> checks{"km2", "lem2", "corollary0"};
  Tolerance tol;
};

namespace detail {

inline bool wants_check(const AnalyzeOptions& opt, const char* id) {
  for (const std::string& c : opt.checks)
    if (c == id) return true;
  return false;
}

}  // namespace detail

inline AnalysisReport analyze_bimatrix(const BiMatrix& f, const AnalyzeOptions& opt) {
  opt.tol.validate();
  AnalysisReport rep;
  rep.tolerance = opt.tol;
  rep.digest = InstanceDigest{"bimatrix", f.rows(), f.cols(), digest_hex(f)};

  ValueReport value = value_report(f, opt.tol);
  const GameSolution as_game{value.mixed, value.row_weights, value.col_weights};
  if (!verify_game_solution(f, as_game, opt.tol).ok)
    fail(Errc::CycleLimitExceeded, "value certificate failed re-verification");
  rep.value = std::move(value);

  for (double t : opt.t_samples) rep.convexity.push_back(is_t_convexlike(f, t, opt.tol));
  for (double s : opt.s_samples) rep.convexity.push_back(is_s_concavelike(f, s, opt.tol));
  rep.convexity.push_back(is_infsup_convex(f, opt.tol));
  rep.convexity.push_back(is_supinf_concave(f, opt.tol));

  for (double t : opt.t_samples) {
    if (detail::wants_check(opt, "km2")) {
      TheoremCheck c = check_km2(f, t, opt.tol);
      c.numbers["t"] = t;
      rep.theorems.push_back(std::move(c));
    }
    if (detail::wants_check(opt, "corollary0")) {
      TheoremCheck c = witness_row(f, t, opt.tol).second;
      c.numbers["t"] = t;
      rep.theorems.push_back(std::move(c));
    }
  }
  if (detail::wants_check(opt, "lem2")) rep.theorems.push_back(check_lem2(f, opt.tol));
  return rep;
}

inline AnalysisReport analyze_family(const FunctionFamily& fam, const AnalyzeOptions& opt) {
  opt.tol.validate();
  AnalysisReport rep;
  rep.tolerance = opt.tol;
  rep.digest = InstanceDigest{"family", fam.generators(), fam.points(),
                              digest_hex(fam.members)};
  AlternativeOutcome outcome = decide_alternative(fam, opt.tol);
  if (!verify_certificate(outcome, fam, opt.tol))
    fail(Errc::CycleLimitExceeded, "alternative certificate failed re-verification");
  rep.alternative = std::move(outcome);
  return rep;
}

inline json analysis_to_json(const AnalysisReport& rep) {
  json convexity = json::array();
  for (const ConvexityReport& r : rep.convexity) convexity.push_back(convexity_to_json(r));
  json theorems = json::array();
  for (const TheoremCheck& c : rep.theorems) theorems.push_back(theorem_to_json(c));
  return json{
      {"digest",
       json{{"kind", rep.digest.kind},
            {"rows", rep.digest.rows},
            {"cols", rep.digest.cols},
            {"hash", rep.digest.hash}}},
      {"value", rep.value ? value_report_to_json(*rep.value) : json()},
      {"convexity", std::move(convexity)},
      {"theorems", std::move(theorems)},
      {"alternative", rep.alternative ? outcome_to_json(*rep.alternative) : json()},
      {"tool_version", rep.tool_version},
      {"tolerance",
       json{{"eps_feas", rep.tolerance.eps_feas},
            {"eps_opt", rep.tolerance.eps_opt},
            {"eps_cert", rep.tolerance.eps_cert}}}};
}

namespace detail {

inline std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return std::string(buf);
}

inline std::string fmt_weights(const Weights& w) {
  std::string out = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ", ";
    out += fmt_num(w[i]);
  }
  out += "]";
  return out;
}

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width)
    s.append(width - s.size(), ' ');
  else
    s += ' ';  // keep columns separated when content overflows
  return s;
}

}  // namespace detail

// Fixed-width human rendering of the report.
inline std::string render_analysis_text(const AnalysisReport& rep) {
  using detail::fmt_num;
  using detail::fmt_weights;
  using detail::pad;
  std::string out;
  out += pad("instance", 12) + rep.digest.kind + " " +
         std::to_string(rep.digest.rows) + "x" + std::to_string(rep.digest.cols) +
         "   hash " + rep.digest.hash + "   tool " + rep.tool_version + "\n";
  out += pad("tolerance", 12) + "feas " + fmt_num(rep.tolerance.eps_feas) +
         "   opt " + fmt_num(rep.tolerance.eps_opt) + "   cert " +
         fmt_num(rep.tolerance.eps_cert) + "\n";
  if (rep.value) {
    out += pad("value", 12) + pad("lower " + fmt_num(rep.value->lower), 22) +
           pad("upper " + fmt_num(rep.value->upper), 22) +
           pad("mixed " + fmt_num(rep.value->mixed), 22) + "gap " +
           fmt_num(rep.value->gap) + "\n";
    out += pad("", 12) + "row_weights " + fmt_weights(rep.value->row_weights) + "\n";
    out += pad("", 12) + "col_weights " + fmt_weights(rep.value->col_weights) + "\n";
  }
  if (!rep.convexity.empty()) {
    out += pad("convexity", 12) + pad("property", 18) + pad("t", 8) +
           pad("holds", 8) + "detail\n";
    for (const ConvexityReport& r : rep.convexity) {
      std::string detail_col;
      if (r.witness)
        detail_col = "witness (" + std::to_string(r.witness->first) + "," +
                     std::to_string(r.witness->second) + ")";
      else if (r.lhs_value && r.rhs_value)
        detail_col = "lhs " + fmt_num(*r.lhs_value) + "  rhs " + fmt_num(*r.rhs_value);
      out += pad("", 12) + pad(r.property, 18) + pad(r.t ? fmt_num(*r.t) : "-", 8) +
             pad(r.holds ? "yes" : "no", 8) + detail_col + "\n";
    }
  }
  if (!rep.theorems.empty()) {
    out += pad("theorems", 12) + pad("id", 20) + pad("vacuous", 9) + "conclusion\n";
    for (const TheoremCheck& c : rep.theorems) {
      std::string id = c.theorem;
      const auto it = c.numbers.find("t");
      if (it != c.numbers.end()) id += " t=" + fmt_num(it->second);
      out += pad("", 12) + pad(id, 20) + pad(c.vacuous ? "yes" : "no", 9) +
             (c.conclusion_holds ? "holds" : "FAILS") + "\n";
    }
  }
  if (rep.alternative) {
    const AlternativeOutcome& o = *rep.alternative;
    out += pad("alternative", 12) + std::string("tag ") + tag_name(o.tag) +
           "   margin " + fmt_num(o.margin) + "\n";
    if (o.combo)
      out += pad("", 12) + "combo " + fmt_weights(*o.combo) + "   sup " +
             fmt_num(*o.sup_value) + "\n";
    if (o.measure)
      out += pad("", 12) + "measure " + fmt_weights(*o.measure) + "   min_pairing " +
             fmt_num(*o.min_pairing) + "\n";
  }
  return out;
}

}  // namespace minimaxlab
