// Copyright 2026 The quwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "quwit/dependence.hpp"
#include "quwit/error.hpp"
#include "quwit/graph.hpp"
#include "quwit/graph_state.hpp"
#include "quwit/hyperentanglement.hpp"
#include "quwit/linalg.hpp"
#include "quwit/measurement.hpp"
#include "quwit/witness.hpp"

namespace quwit::io {

using Json = nlohmann::ordered_json;

/// Doubles at 17 significant digits, independent of the C locale's decimal
/// point; non-finite values become null.
inline std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", x);
  std::string s(buf.data());
  for (auto& ch : s) {
    if (ch == ',') ch = '.';
  }
  return s;
}

namespace detail {

inline void write_json(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::null:
      out += "null";
      break;
    case Json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case Json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      break;
    case Json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      break;
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      break;
    case Json::value_t::string:
      out += j.dump();
      break;
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ", ";
        first = false;
        write_json(e, out);
      }
      out += ']';
      break;
    }
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ", ";
        first = false;
        out += Json(key).dump();
        out += ": ";
        write_json(value, out);
      }
      out += '}';
      break;
    }
    default:
      throw InvalidArgument("unsupported JSON value");
  }
}

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

inline double number_or_nan(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace detail

/// Single-line rendering with ", " and ": " separators.
inline std::string dump(const Json& j) {
  std::string out;
  detail::write_json(j, out);
  return out;
}

inline Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
  if (!out) throw InvalidArgument("failed writing '" + path + "'");
}

// Graphs.

struct GraphFile {
  Graph graph;
  int d = 2;
  std::optional<ColoredPartition> coloring;
};

inline Json to_json(const GraphFile& f) {
  Json j;
  j["vertices"] = f.graph.vertex_count();
  j["d"] = f.d;
  Json edges = Json::array();
  for (const auto& e : f.graph.edges()) edges.push_back(Json::array({e.first, e.second}));
  j["edges"] = std::move(edges);
  if (f.coloring) j["coloring"] = f.coloring->classes();
  return j;
}

inline GraphFile graph_from_json(const Json& j) {
  const auto n = detail::field<std::size_t>(j, "vertices");
  const auto d = detail::field<int>(j, "d");
  const auto pairs = detail::field<std::vector<std::vector<std::size_t>>>(j, "edges");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& p : pairs) {
    if (p.size() != 2) throw ParseError("every edge must be a pair [i, j]");
    edges.emplace_back(p[0], p[1]);
  }
  GraphFile f{Graph(n, std::move(edges)), d, std::nullopt};
  quwit::detail::require(d >= 2, "graph file needs d >= 2");
  if (j.contains("coloring") && !j.at("coloring").is_null()) {
    ColoredPartition c(detail::field<std::vector<std::vector<std::size_t>>>(j, "coloring"));
    (void)c.color_map(n);
    f.coloring = std::move(c);
  }
  return f;
}

inline std::string write_graph(const GraphFile& f) { return dump(to_json(f)) + "\n"; }
inline GraphFile read_graph(const std::string& text) { return graph_from_json(parse(text)); }

inline ColoredPartition coloring_from_json(const Json& j) {
  const Json& classes = j.is_object() ? j.at("coloring") : j;
  try {
    return ColoredPartition(classes.get<std::vector<std::vector<std::size_t>>>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid colouring: ") + e.what());
  }
}

// Criterion reports.

inline Json big_integer(const BigInt& v) {
  if (v <= std::numeric_limits<std::uint64_t>::max()) return Json(v.convert_to<std::uint64_t>());
  return Json(v.str());
}

inline Json to_json(const CriterionReport& r) {
  Json j;
  j["d"] = r.d;
  j["value"] = r.value;
  j["bound"] = r.bound;
  j["l"] = r.l;
  j["q"] = r.q;
  j["eta_q"] = r.eta_q;
  j["f_q"] = r.f_q;
  j["t_d"] = big_integer(r.t_d);
  j["violated"] = r.violated;
  j["noise_tolerance"] = r.noise_tolerance;
  j["fidelity_lower_bound"] = r.fidelity_lower_bound;
  j["per_color_terms"] = r.per_color_terms;
  j["max_detected_level"] = r.max_detected_level ? Json(*r.max_detected_level) : Json(nullptr);
  if (!r.shots.empty()) j["shots"] = r.shots;
  if (r.standard_error) j["standard_error"] = *r.standard_error;
  return j;
}

inline CriterionReport criterion_report_from_json(const Json& j) {
  CriterionReport r;
  r.d = detail::field<int>(j, "d");
  r.value = detail::number_or_nan(j.at("value"));
  r.bound = detail::field<double>(j, "bound");
  r.l = detail::field<int>(j, "l");
  r.q = detail::field<std::size_t>(j, "q");
  r.eta_q = detail::field<double>(j, "eta_q");
  r.f_q = detail::field<int>(j, "f_q");
  const auto& t = j.at("t_d");
  r.t_d = t.is_string() ? BigInt(t.get<std::string>()) : BigInt(t.get<std::uint64_t>());
  r.violated = detail::field<bool>(j, "violated");
  r.noise_tolerance = detail::field<double>(j, "noise_tolerance");
  r.fidelity_lower_bound = detail::number_or_nan(j.at("fidelity_lower_bound"));
  r.per_color_terms = detail::field<std::vector<double>>(j, "per_color_terms");
  if (j.contains("max_detected_level") && !j.at("max_detected_level").is_null()) {
    r.max_detected_level = j.at("max_detected_level").get<int>();
  }
  if (j.contains("shots")) r.shots = detail::field<std::vector<std::uint64_t>>(j, "shots");
  if (j.contains("standard_error")) r.standard_error = detail::field<double>(j, "standard_error");
  return r;
}

// Count tables.

inline std::string outcome_key(const QuditDims& dims, std::size_t index) {
  std::string key;
  for (std::size_t s = 0; s < dims.sites(); ++s) {
    if (s > 0) key += ',';
    key += std::to_string(dims.digit(index, s));
  }
  return key;
}

inline std::vector<int> parse_outcome_key(const std::string& key) {
  std::vector<int> digits;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError("invalid outcome key '" + key + "'");
    }
    digits.push_back(std::stoi(part));
  }
  return digits;
}

inline bool uniform_levels(const QuditDims& dims) {
  for (int l : dims.levels()) {
    if (l != dims.level(0)) return false;
  }
  return true;
}

/// Nonzero counts only, keys in index order.
inline Json to_json(const CountTable& t) {
  Json j;
  Json setting = Json::array();
  for (auto b : t.setting.bases) setting.push_back(basis_name(b));
  j["setting"] = std::move(setting);
  if (uniform_levels(t.dims)) {
    j["d"] = t.dims.level(0);
  } else {
    j["levels"] = t.dims.levels();
  }
  j["shots"] = t.shots;
  j["seed"] = t.seed;
  Json counts = Json::object();
  for (std::size_t i = 0; i < t.counts.size(); ++i) {
    if (t.counts[i] > 0) counts[outcome_key(t.dims, i)] = t.counts[i];
  }
  j["counts"] = std::move(counts);
  return j;
}

inline CountTable count_table_from_json(const Json& j) {
  CountTable t;
  for (const auto& b : detail::field<std::vector<std::string>>(j, "setting")) {
    t.setting.bases.push_back(parse_basis(b));
  }
  const auto n = t.setting.bases.size();
  if (n == 0) throw ParseError("setting must name at least one site");
  if (j.contains("levels")) {
    auto levels = detail::field<std::vector<int>>(j, "levels");
    if (levels.size() != n) throw ParseError("levels and setting differ in length");
    t.dims = QuditDims(std::move(levels));
  } else {
    const auto d = detail::field<int>(j, "d");
    if (d < 2) throw ParseError("count table needs d >= 2");
    t.dims = QuditDims::uniform(d, n);
  }
  quwit::detail::require_pure_cap(t.dims.total());
  t.shots = detail::field<std::uint64_t>(j, "shots");
  t.seed = detail::field<std::uint64_t>(j, "seed");
  t.counts.assign(t.dims.total(), 0);
  const auto& counts = j.at("counts");
  if (!counts.is_object()) throw ParseError("counts must be an object");
  std::uint64_t total = 0;
  for (const auto& [key, value] : counts.items()) {
    const auto digits = parse_outcome_key(key);
    if (digits.size() != n) throw ParseError("outcome '" + key + "' has the wrong length");
    for (std::size_t s = 0; s < n; ++s) {
      if (digits[s] >= t.dims.level(s)) throw ParseError("outcome '" + key + "' out of range");
    }
    const auto c = value.get<std::uint64_t>();
    t.counts[t.dims.index_of(digits)] += c;
    total += c;
  }
  if (total != t.shots) throw ParseError("counts do not sum to shots");
  return t;
}

// Dependence schemes and tables.

inline Json to_json(const CoefficientScheme& s) {
  Json c = Json::array();
  Json phi = Json::array();
  for (std::size_t m = 0; m < s.rows; ++m) {
    Json crow = Json::array();
    Json prow = Json::array();
    for (std::size_t n = 0; n < s.cols; ++n) {
      crow.push_back(s.coefficient(m, n));
      prow.push_back(s.phase(m, n));
    }
    c.push_back(std::move(crow));
    phi.push_back(std::move(prow));
  }
  Json j;
  j["rows"] = s.rows;
  j["cols"] = s.cols;
  j["c"] = std::move(c);
  j["phi"] = std::move(phi);
  return j;
}

namespace detail {

template <typename T>
std::vector<T> flatten(const Json& j, const char* key, std::size_t rows, std::size_t cols) {
  const auto nested = field<std::vector<std::vector<T>>>(j, key);
  if (nested.size() != rows) throw ParseError(std::string("'") + key + "' has the wrong row count");
  std::vector<T> flat;
  for (const auto& row : nested) {
    if (row.size() != cols) {
      throw ParseError(std::string("'") + key + "' has the wrong column count");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return flat;
}

}  // namespace detail

inline CoefficientScheme scheme_from_json(const Json& j) {
  CoefficientScheme s;
  s.rows = detail::field<std::size_t>(j, "rows");
  s.cols = detail::field<std::size_t>(j, "cols");
  s.c = detail::flatten<int>(j, "c", s.rows, s.cols);
  s.phi = detail::flatten<double>(j, "phi", s.rows, s.cols);
  return s;
}

inline Json to_json(const JointTable& t) {
  Json p = Json::array();
  for (std::size_t m = 0; m < t.rows; ++m) {
    Json row = Json::array();
    for (std::size_t n = 0; n < t.cols; ++n) row.push_back(t.at(m, n));
    p.push_back(std::move(row));
  }
  Json j;
  j["rows"] = t.rows;
  j["cols"] = t.cols;
  j["p"] = std::move(p);
  return j;
}

inline JointTable table_from_json(const Json& j) {
  JointTable t;
  t.rows = detail::field<std::size_t>(j, "rows");
  t.cols = detail::field<std::size_t>(j, "cols");
  t.p = detail::flatten<double>(j, "p", t.rows, t.cols);
  return t;
}

// Hyperentanglement.

inline Json to_json(const HESpec& s) {
  Json j;
  j["dofs"] = s.dofs();
  return j;
}

inline HESpec he_spec_from_json(const Json& j) {
  return HESpec(detail::field<std::vector<int>>(j, "dofs"));
}

inline Json to_json(const HEReport& r) {
  Json j;
  j["dofs"] = r.dofs;
  j["d"] = r.d;
  j["D"] = r.big_d;
  j["value"] = r.value;
  j["bound"] = r.bound;
  j["violated"] = r.violated;
  j["noise_tolerance"] = r.noise_tolerance;
  Json per = Json::array();
  for (const auto& c : r.per_dof) per.push_back(to_json(c));
  j["per_dof_criterion_reports"] = std::move(per);
  return j;
}

// State files.

inline Json state_to_json(const PureState& psi) {
  Json amps = Json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
    amps.push_back(Json::array({psi.amplitudes()(i).real(), psi.amplitudes()(i).imag()}));
  }
  Json j;
  j["levels"] = psi.dims().levels();
  j["amplitudes"] = std::move(amps);
  return j;
}

inline PureState state_from_json(const Json& j) {
  QuditDims dims(detail::field<std::vector<int>>(j, "levels"));
  quwit::detail::require_pure_cap(dims.total());
  const auto amps = detail::field<std::vector<std::array<double, 2>>>(j, "amplitudes");
  if (amps.size() != dims.total()) throw ParseError("amplitude count does not match levels");
  Vector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = Complex(amps[i][0], amps[i][1]);
  }
  return PureState(std::move(dims), std::move(v));
}

inline constexpr std::array<char, 4> state_magic{'Q', 'W', 'S', 'T'};
inline constexpr std::uint32_t state_version = 1;

namespace detail {

inline void put_u32(std::string& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out += static_cast<char>((v >> (8 * b)) & 0xffu);
}

inline void put_f64(std::string& out, double x) {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  for (int b = 0; b < 8; ++b) out += static_cast<char>((bits >> (8 * b)) & 0xffu);
}

inline std::uint64_t get_le(const std::string& in, std::size_t& pos, int bytes) {
  if (pos + static_cast<std::size_t>(bytes) > in.size()) throw ParseError("truncated state file");
  std::uint64_t v = 0;
  for (int b = 0; b < bytes; ++b) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos++])) << (8 * b);
  }
  return v;
}

}  // namespace detail

/// "QWST", u32 version, u32 site count, u32 level per site, then (re, im)
/// pairs as IEEE-754 doubles; all little-endian.
inline std::string state_to_binary(const PureState& psi) {
  std::string out(state_magic.begin(), state_magic.end());
  detail::put_u32(out, state_version);
  detail::put_u32(out, static_cast<std::uint32_t>(psi.dims().sites()));
  for (int l : psi.dims().levels()) detail::put_u32(out, static_cast<std::uint32_t>(l));
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
    detail::put_f64(out, psi.amplitudes()(i).real());
    detail::put_f64(out, psi.amplitudes()(i).imag());
  }
  return out;
}

inline PureState state_from_binary(const std::string& in) {
  if (in.size() < 4 || !std::equal(state_magic.begin(), state_magic.end(), in.begin())) {
    throw ParseError("not a state file");
  }
  std::size_t pos = 4;
  if (detail::get_le(in, pos, 4) != state_version) throw ParseError("unsupported state file version");
  const auto sites = detail::get_le(in, pos, 4);
  if (sites == 0 || sites > 64) throw ParseError("implausible site count in state file");
  std::vector<int> levels;
  for (std::uint64_t s = 0; s < sites; ++s) {
    const auto l = detail::get_le(in, pos, 4);
    if (l < 2 || l > 1024) throw ParseError("implausible level count in state file");
    levels.push_back(static_cast<int>(l));
  }
  QuditDims dims(std::move(levels));
  quwit::detail::require_pure_cap(dims.total());
  Vector v(static_cast<Eigen::Index>(dims.total()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = std::bit_cast<double>(detail::get_le(in, pos, 8));
    const double im = std::bit_cast<double>(detail::get_le(in, pos, 8));
    v(i) = Complex(re, im);
  }
  if (pos != in.size()) throw ParseError("trailing bytes in state file");
  return PureState(std::move(dims), std::move(v));
}

}  // namespace quwit::io
