#pragma once

// JSON (and CSV) ingestion and emission for every instance kind and report
// type. Key order in emitted JSON is lexicographic (nlohmann's default
// object container), so a fixed input always dumps to identical bytes.

#include <cstdio>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "minimaxlab/alternative.hpp"
#include "minimaxlab/construct.hpp"
#include "minimaxlab/core.hpp"
#include "minimaxlab/genconvex.hpp"
#include "minimaxlab/lp.hpp"
#include "minimaxlab/mazur.hpp"
#include "minimaxlab/minimax.hpp"

namespace minimaxlab {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& what) {
  fail(Errc::ParseError, what);
}

inline const json& require_field(const json& j, const char* key) {
  if (!j.is_object()) parse_fail("expected an object around field '" + std::string(key) + "'");
  const auto it = j.find(key);
  if (it == j.end()) parse_fail("missing field '" + std::string(key) + "'");
  return *it;
}

inline double require_number(const json& j, const char* key) {
  const json& v = require_field(j, key);
  if (!v.is_number()) parse_fail("field '" + std::string(key) + "' must be a number");
  return v.get<double>();
}

inline std::size_t require_size(const json& j, const char* key) {
  const json& v = require_field(j, key);
  if (!v.is_number_unsigned())
    parse_fail("field '" + std::string(key) + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

inline std::string require_string(const json& j, const char* key) {
  const json& v = require_field(j, key);
  if (!v.is_string()) parse_fail("field '" + std::string(key) + "' must be a string");
  return v.get<std::string>();
}

inline std::vector<double> number_array(const json& v, const char* key) {
  if (!v.is_array()) parse_fail("field '" + std::string(key) + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number()) parse_fail("field '" + std::string(key) + "' must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

inline std::vector<std::vector<double>> nested_rows(const json& v, const char* key) {
  if (!v.is_array()) parse_fail("field '" + std::string(key) + "' must be an array of rows");
  std::vector<std::vector<double>> out;
  out.reserve(v.size());
  for (const json& row : v) out.push_back(number_array(row, key));
  return out;
}

}  // namespace detail

// Wraps the library parser so malformed text surfaces as Errc::ParseError.
inline json parse_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) detail::parse_fail("input is not valid JSON");
  return j;
}

inline std::string digest_hex(const BiMatrix& m) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(digest_matrix(m)));
  return std::string(buf);
}

// ---------------------------------------------------------------------------
// Instances

inline json matrix_rows_json(const BiMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json bimatrix_to_json(const BiMatrix& m) {
  return json{{"kind", "bimatrix"},
              {"rows", m.rows()},
              {"cols", m.cols()},
              {"data", matrix_rows_json(m)}};
}

inline BiMatrix bimatrix_from_json(const json& j) {
  if (detail::require_string(j, "kind") != "bimatrix")
    detail::parse_fail("field 'kind' must be \"bimatrix\"");
  const std::size_t rows = detail::require_size(j, "rows");
  const std::size_t cols = detail::require_size(j, "cols");
  BiMatrix m = validate_bimatrix(detail::nested_rows(detail::require_field(j, "data"), "data"));
  if (m.rows() != rows || m.cols() != cols)
    detail::parse_fail("field 'data' shape disagrees with 'rows'/'cols'");
  return m;
}

inline json family_to_json(const FunctionFamily& fam) {
  return json{{"kind", "family"},
              {"generators", fam.generators()},
              {"points", fam.points()},
              {"members", matrix_rows_json(fam.members)}};
}

inline FunctionFamily family_from_json(const json& j) {
  if (detail::require_string(j, "kind") != "family")
    detail::parse_fail("field 'kind' must be \"family\"");
  const std::size_t gens = detail::require_size(j, "generators");
  const std::size_t pts = detail::require_size(j, "points");
  BiMatrix m = validate_bimatrix(
      detail::nested_rows(detail::require_field(j, "members"), "members"));
  if (m.rows() != gens || m.cols() != pts)
    detail::parse_fail("field 'members' shape disagrees with 'generators'/'points'");
  return FunctionFamily{std::move(m)};
}

inline json sequence_to_json(const SampledSequence& seq) {
  json data = json::array();
  for (std::size_t n = 0; n < seq.N; ++n) {
    json per_point = json::array();
    for (std::size_t z = 0; z < seq.Z; ++z) {
      json coords = json::array();
      for (std::size_t c = 0; c < seq.d; ++c) coords.push_back(seq.at(n, z, c));
      per_point.push_back(std::move(coords));
    }
    data.push_back(std::move(per_point));
  }
  return json{{"kind", "sequence"},
              {"N", seq.N},
              {"Z", seq.Z},
              {"d", seq.d},
              {"data", std::move(data)}};
}

inline SampledSequence sequence_from_json(const json& j) {
  if (detail::require_string(j, "kind") != "sequence")
    detail::parse_fail("field 'kind' must be \"sequence\"");
  const std::size_t N = detail::require_size(j, "N");
  const std::size_t Z = detail::require_size(j, "Z");
  const std::size_t d = detail::require_size(j, "d");
  const json& data = detail::require_field(j, "data");
  if (!data.is_array() || data.size() != N)
    detail::parse_fail("field 'data' must be an array of N function samples");
  std::vector<double> flat;
  flat.reserve(N * Z * d);
  for (const json& per_point : data) {
    if (!per_point.is_array() || per_point.size() != Z)
      detail::parse_fail("field 'data' entries must hold Z sample points");
    for (const json& coords : per_point) {
      // A bare number is accepted for scalar sequences.
      if (coords.is_number() && d == 1) {
        flat.push_back(coords.get<double>());
        continue;
      }
      if (!coords.is_array() || coords.size() != d)
        detail::parse_fail("field 'data' points must hold d coordinates");
      for (const json& v : coords) {
        if (!v.is_number()) detail::parse_fail("field 'data' must hold numbers");
        flat.push_back(v.get<double>());
      }
    }
  }
  return SampledSequence(N, Z, d, std::move(flat));
}

// CSV sequence: one line per (n, z) pair, columns n, z, value_1 .. value_d,
// indices 1-based, every (n, z) pair present exactly once. Lines starting
// with '#' and blank lines are skipped; an optional leading non-numeric
// header row is skipped as well.
inline SampledSequence sequence_from_csv(std::istream& in) {
  struct Cell {
    std::size_t n, z;
    std::vector<double> values;
  };
  std::vector<Cell> cells;
  std::size_t N = 0, Z = 0, d = 0;
  std::string line;
  bool first_content = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (first_content) {
      first_content = false;
      bool numeric = true;
      try {
        std::size_t pos = 0;
        (void)std::stod(fields.at(0), &pos);
        numeric = pos == fields.at(0).find_last_not_of(" \t") + 1;
      } catch (...) {
        numeric = false;
      }
      if (!numeric) continue;  // header row
    }
    if (fields.size() < 3)
      detail::parse_fail("csv rows need n, z and at least one value column");
    Cell cell;
    try {
      const long long n = std::stoll(fields[0]);
      const long long z = std::stoll(fields[1]);
      if (n < 1 || z < 1) detail::parse_fail("csv indices are 1-based");
      cell.n = static_cast<std::size_t>(n);
      cell.z = static_cast<std::size_t>(z);
      for (std::size_t i = 2; i < fields.size(); ++i)
        cell.values.push_back(std::stod(fields[i]));
    } catch (const Error&) {
      throw;
    } catch (...) {
      detail::parse_fail("csv field is not numeric: '" + line + "'");
    }
    if (d == 0) d = cell.values.size();
    if (cell.values.size() != d)
      detail::parse_fail("csv rows disagree on the number of value columns");
    N = std::max(N, cell.n);
    Z = std::max(Z, cell.z);
    cells.push_back(std::move(cell));
  }
  if (cells.empty()) detail::parse_fail("csv input holds no data rows");
  if (cells.size() != N * Z)
    detail::parse_fail("csv grid is incomplete: expected " + std::to_string(N * Z) +
                       " rows, got " + std::to_string(cells.size()));
  std::vector<double> flat(N * Z * d, kInf);
  for (const Cell& cell : cells) {
    const std::size_t base = ((cell.n - 1) * Z + (cell.z - 1)) * d;
    if (flat[base] != kInf)
      detail::parse_fail("csv repeats the pair (" + std::to_string(cell.n) + "," +
                         std::to_string(cell.z) + ")");
    for (std::size_t c = 0; c < d; ++c) flat[base + c] = cell.values[c];
  }
  return SampledSequence(N, Z, d, std::move(flat));
}

// ---------------------------------------------------------------------------
// Generated-instance manifests

inline json infconv_to_json(const InfConvInstance& inst,
                            const std::vector<std::string>& guarantees) {
  return json{{"kind", "infconv"},
              {"xi", inst.xi.xi},
              {"K", inst.K},
              {"g", matrix_rows_json(inst.g)},
              {"f", matrix_rows_json(inst.f)},
              {"guarantees", guarantees}};
}

struct InfConvManifest {
  InfConvInstance instance;
  std::vector<std::string> guarantees;
};

// Reconstructs the instance from its sources and insists the stored f is
// the one the construction actually produces.
inline InfConvManifest infconv_from_json(const json& j) {
  if (detail::require_string(j, "kind") != "infconv")
    detail::parse_fail("field 'kind' must be \"infconv\"");
  XiVector xi{detail::number_array(detail::require_field(j, "xi"), "xi")};
  const double k = detail::require_number(j, "K");
  BiMatrix g = validate_bimatrix(detail::nested_rows(detail::require_field(j, "g"), "g"));
  BiMatrix f = validate_bimatrix(detail::nested_rows(detail::require_field(j, "f"), "f"));
  std::vector<std::string> guarantees;
  for (const json& s : detail::require_field(j, "guarantees")) {
    if (!s.is_string()) detail::parse_fail("field 'guarantees' must hold strings");
    guarantees.push_back(s.get<std::string>());
  }
  InfConvInstance inst = inf_convolution(g, xi, k);
  if (!(inst.f == f))
    detail::parse_fail("field 'f' does not match the convolution of 'g'");
  return InfConvManifest{std::move(inst), std::move(guarantees)};
}

inline json pair_to_json(const BiMatrix& f, const BiMatrix& g,
                         const std::vector<std::string>& guarantees) {
  return json{{"kind", "pair"},
              {"f", matrix_rows_json(f)},
              {"g", matrix_rows_json(g)},
              {"guarantees", guarantees}};
}

struct PairManifest {
  BiMatrix f;
  BiMatrix g;
  std::vector<std::string> guarantees;
};

inline PairManifest pair_from_json(const json& j) {
  if (detail::require_string(j, "kind") != "pair")
    detail::parse_fail("field 'kind' must be \"pair\"");
  BiMatrix f = validate_bimatrix(detail::nested_rows(detail::require_field(j, "f"), "f"));
  BiMatrix g = validate_bimatrix(detail::nested_rows(detail::require_field(j, "g"), "g"));
  if (!f.same_shape(g)) detail::parse_fail("fields 'f' and 'g' must share a shape");
  std::vector<std::string> guarantees;
  for (const json& s : detail::require_field(j, "guarantees")) {
    if (!s.is_string()) detail::parse_fail("field 'guarantees' must hold strings");
    guarantees.push_back(s.get<std::string>());
  }
  return PairManifest{std::move(f), std::move(g), std::move(guarantees)};
}

// Single-matrix generated instance whose construction has no fuller record.
inline json generated_to_json_single(const BiMatrix& m,
                                     const std::vector<std::string>& guarantees) {
  return json{{"kind", "generated"},
              {"matrix", bimatrix_to_json(m)},
              {"guarantees", guarantees}};
}

// Serializes whatever record the generator produced: the convolution
// manifest when one exists, the pair form for dominating pairs, the plain
// instance schema when there are no guarantees to carry.
inline json generated_to_json(const GeneratedInstance& inst) {
  if (inst.secondary)
    return pair_to_json(inst.primary, *inst.secondary, inst.guarantees);
  if (inst.infconv) return infconv_to_json(*inst.infconv, inst.guarantees);
  if (inst.guarantees.empty()) return bimatrix_to_json(inst.primary);
  return generated_to_json_single(inst.primary, inst.guarantees);
}

// ---------------------------------------------------------------------------
// Reports and certificates

inline json weights_to_json(const Weights& w) {
  json arr = json::array();
  for (std::size_t i = 0; i < w.size(); ++i) arr.push_back(w[i]);
  return arr;
}

inline Weights weights_from_json(const json& v, std::size_t expected_len,
                                 const Tolerance& tol, const char* key) {
  return validate_weights(detail::number_array(v, key), expected_len, tol);
}

inline json value_report_to_json(const ValueReport& r) {
  return json{{"lower", r.lower},
              {"upper", r.upper},
              {"mixed", r.mixed},
              {"gap", r.gap},
              {"row_weights", weights_to_json(r.row_weights)},
              {"col_weights", weights_to_json(r.col_weights)}};
}

inline json convexity_to_json(const ConvexityReport& r) {
  json witness;
  if (r.witness) {
    witness = json{{"first", r.witness->first},
                   {"second", r.witness->second},
                   {"mixture", r.witness->mixture}};
  }
  return json{{"property", r.property},
              {"holds", r.holds},
              {"t", r.t ? json(*r.t) : json()},
              {"witness", std::move(witness)},
              {"lhs_value", r.lhs_value ? json(*r.lhs_value) : json()},
              {"rhs_value", r.rhs_value ? json(*r.rhs_value) : json()}};
}

inline json theorem_to_json(const TheoremCheck& c) {
  json hyps = json::array();
  for (const HypothesisRecord& h : c.hypotheses)
    hyps.push_back(json{{"name", h.name}, {"satisfied", h.satisfied}, {"detail", h.detail}});
  return json{{"theorem", c.theorem},
              {"hypotheses", std::move(hyps)},
              {"vacuous", c.vacuous},
              {"conclusion_holds", c.conclusion_holds},
              {"numbers", json(c.numbers)}};
}

inline json game_to_json(const GameSolution& g) {
  return json{{"value", g.value},
              {"row_weights", weights_to_json(g.row_weights)},
              {"col_weights", weights_to_json(g.col_weights)}};
}

inline GameSolution game_from_json(const json& j, std::size_t rows,
                                   std::size_t cols, const Tolerance& tol) {
  return GameSolution{
      detail::require_number(j, "value"),
      weights_from_json(detail::require_field(j, "row_weights"), rows, tol, "row_weights"),
      weights_from_json(detail::require_field(j, "col_weights"), cols, tol, "col_weights")};
}

inline json outcome_to_json(const AlternativeOutcome& o) {
  return json{{"tag", tag_name(o.tag)},
              {"combo", o.combo ? weights_to_json(*o.combo) : json()},
              {"sup_value", o.sup_value ? json(*o.sup_value) : json()},
              {"measure", o.measure ? weights_to_json(*o.measure) : json()},
              {"min_pairing", o.min_pairing ? json(*o.min_pairing) : json()},
              {"margin", o.margin}};
}

inline AlternativeOutcome outcome_from_json(const json& j, std::size_t generators,
                                            std::size_t points, const Tolerance& tol) {
  const std::string tag = detail::require_string(j, "tag");
  if (tag != "A1" && tag != "A2")
    detail::parse_fail("field 'tag' must be \"A1\" or \"A2\"");
  AlternativeOutcome out;
  out.tag = tag == "A1" ? AlternativeTag::A1 : AlternativeTag::A2;
  out.margin = detail::require_number(j, "margin");
  const json& combo = detail::require_field(j, "combo");
  if (!combo.is_null())
    out.combo = weights_from_json(combo, generators, tol, "combo");
  const json& sup = detail::require_field(j, "sup_value");
  if (!sup.is_null()) {
    if (!sup.is_number()) detail::parse_fail("field 'sup_value' must be a number");
    out.sup_value = sup.get<double>();
  }
  const json& measure = detail::require_field(j, "measure");
  if (!measure.is_null())
    out.measure = weights_from_json(measure, points, tol, "measure");
  const json& pairing = detail::require_field(j, "min_pairing");
  if (!pairing.is_null()) {
    if (!pairing.is_number()) detail::parse_fail("field 'min_pairing' must be a number");
    out.min_pairing = pairing.get<double>();
  }
  return out;
}

inline json mazur_to_json(const MazurResult& r) {
  return json{{"tail_start", r.tail_start},
              {"window_end", r.window_end},
              {"weights", weights_to_json(r.weights)},
              {"norm", r.norm}};
}

inline MazurResult mazur_from_json(const json& j, const Tolerance& tol) {
  const std::size_t m = detail::require_size(j, "tail_start");
  const std::size_t w = detail::require_size(j, "window_end");
  if (m < 1 || m > w) detail::parse_fail("fields 'tail_start'/'window_end' are not a window");
  Weights weights = weights_from_json(detail::require_field(j, "weights"),
                                      w - m + 1, tol, "weights");
  const double norm = detail::require_number(j, "norm");
  return MazurResult{m, w, std::move(weights), norm};
}

}  // namespace minimaxlab
