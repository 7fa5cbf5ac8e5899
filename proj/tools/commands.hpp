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

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "quwit/quwit.hpp"

namespace quwit::cli {

enum ExitCode : int { detected = 0, not_detected = 1, usage_error = 2, cap_exceeded = 3 };

/// Either a graph file or a named family with a vertex count.
struct StateSource {
  std::string graph_file;
  std::string family;
  std::size_t vertices = 0;
  std::optional<int> d;
};

struct ResolvedGraph {
  GraphStateSpec spec;
  std::optional<ColoredPartition> coloring;
};

inline Graph family_graph(const std::string& family, std::size_t vertices) {
  if (family == "bell") {
    detail::require(vertices == 0 || vertices == 2, "the bell family has two vertices");
    return Graph::bar();
  }
  detail::require(vertices >= 2, "family '" + family + "' needs --vertices >= 2");
  if (family == "ghz") return Graph::star(vertices);
  if (family == "cluster") return Graph::chain(vertices);
  throw InvalidArgument("unknown family '" + family + "'; expected bell, ghz or cluster");
}

inline ResolvedGraph resolve(const StateSource& src) {
  detail::require(src.graph_file.empty() != src.family.empty(),
                  "give exactly one of --graph or --family");
  if (!src.family.empty()) {
    detail::require(src.d.has_value(), "--d is required with --family");
    return {GraphStateSpec(family_graph(src.family, src.vertices), *src.d), std::nullopt};
  }
  auto file = io::read_graph(io::read_text(src.graph_file));
  return {GraphStateSpec(std::move(file.graph), src.d.value_or(file.d)), std::move(file.coloring)};
}

inline std::optional<ColoredPartition> resolve_coloring(const ResolvedGraph& g,
                                                        const std::string& coloring_file) {
  if (coloring_file.empty()) return g.coloring;
  return io::coloring_from_json(io::parse(io::read_text(coloring_file)));
}

/// Runs `body` and maps library errors onto exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const DimensionCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return cap_exceeded;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }
}

struct StateBuildOptions {
  StateSource source;
  std::string out;
  std::string format = "json";
};

inline int state_build(const StateBuildOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto g = resolve(o.source);
    const auto psi = build_graph_state(g.spec);
    detail::require(o.format == "json" || o.format == "binary",
                    "--format must be json or binary");
    if (o.format == "binary") {
      detail::require(!o.out.empty(), "binary output needs --out");
      io::write_text(o.out, io::state_to_binary(psi));
    } else if (o.out.empty()) {
      out << io::dump(io::state_to_json(psi)) << "\n";
    } else {
      io::write_text(o.out, io::dump(io::state_to_json(psi)) + "\n");
    }
    return 0;
  });
}

struct WitnessOptions {
  StateSource source;
  int l = 2;
  double noise = 0.0;
  std::string coloring_file;
};

inline int witness_eval(const WitnessOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto g = resolve(o.source);
    const auto coloring = resolve_coloring(g, o.coloring_file);
    const WhiteNoiseState rho(build_graph_state(g.spec), o.noise);
    const auto report = evaluate_criterion(rho, g.spec, o.l, coloring);
    out << io::dump(io::to_json(report)) << "\n";
    return report.violated ? detected : not_detected;
  });
}

struct SweepOptions {
  std::string family;
  std::string variable;
  std::vector<double> values;
  std::optional<double> start, stop, step;
  std::optional<int> d;
  std::size_t vertices = 0;
  /// An integer, or "d" to tie the level to the qudit dimension.
  std::string l = "2";
  double noise = 0.0;
  std::string out;
};

inline std::vector<double> sweep_points(const SweepOptions& o) {
  if (!o.values.empty()) {
    detail::require(!o.start && !o.stop && !o.step, "give either --values or a range, not both");
    return o.values;
  }
  detail::require(o.start && o.stop && o.step, "a sweep needs --values or --start/--stop/--step");
  detail::require(*o.step > 0.0 && *o.stop >= *o.start, "invalid range");
  const auto count = static_cast<std::size_t>(std::floor((*o.stop - *o.start) / *o.step + 1e-9)) + 1;
  std::vector<double> points;
  for (std::size_t i = 0; i < count; ++i) points.push_back(*o.start + static_cast<double>(i) * *o.step);
  return points;
}

inline int as_integer(double x, const char* what) {
  detail::require(std::isfinite(x) && x == std::floor(x) && std::abs(x) < 1e9,
                  std::string(what) + " must be an integer");
  return static_cast<int>(x);
}

/// CSV of the closed-form white-noise line at every sweep point.
inline int sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    detail::require(o.variable == "noise" || o.variable == "d" || o.variable == "N" ||
                        o.variable == "l",
                    "--variable must be one of noise, d, N, l");
    const auto points = sweep_points(o);
    detail::require(!points.empty(), "the sweep range is empty");
    std::ostringstream csv;
    csv << "variable,value,bound,noise_tolerance,violated\n";
    for (double x : points) {
      int d = o.d.value_or(0);
      std::size_t n = o.vertices;
      double p = o.noise;
      std::optional<int> l;
      if (o.l != "d") l = as_integer(std::stod(o.l), "--l");
      if (o.variable == "noise") p = x;
      if (o.variable == "d") d = as_integer(x, "d");
      if (o.variable == "N") n = static_cast<std::size_t>(as_integer(x, "N"));
      if (o.variable == "l") l = as_integer(x, "l");
      detail::require(d >= 2, "--d is required unless d is swept");
      detail::require(d <= caps().formula_levels,
                      "closed forms are evaluated for d <= " + std::to_string(caps().formula_levels));
      detail::require(p >= 0.0 && p <= 1.0, "noise must lie in [0, 1]");
      const int level = l.value_or(d);
      const auto graph = family_graph(o.family, n);
      const auto params = CriterionParams::make(d, level, color_graph(graph));
      const double q = static_cast<double>(params.q());
      const double mixed = detail::to_double(params.mixed_kernel_exact());
      const double value = (1.0 - p) * q + p * mixed;
      const double b = bound(params);
      csv << io::format_double(x) << ',' << io::format_double(value) << ','
          << io::format_double(b) << ',' << io::format_double(noise_tolerance(params)) << ','
          << (value > b ? "true" : "false") << '\n';
    }
    if (o.out.empty()) {
      out << csv.str();
    } else {
      io::write_text(o.out, csv.str());
    }
    return 0;
  });
}

struct MeasureOptions {
  StateSource source;
  std::size_t setting = 0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  double noise = 0.0;
  std::string coloring_file;
  std::string out;
};

inline int measure(const MeasureOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto g = resolve(o.source);
    const auto coloring = color_graph(g.spec.graph, resolve_coloring(g, o.coloring_file));
    detail::require(o.setting >= 1 && o.setting <= coloring.q(),
                    "--setting must lie in 1.." + std::to_string(coloring.q()));
    detail::require(o.shots >= 1, "--shots must be at least 1");
    const WhiteNoiseState rho(build_graph_state(g.spec), o.noise);
    const auto dist =
        outcome_distribution(rho, setting_for_color(coloring, o.setting - 1, g.spec.vertices()));
    const auto text = io::dump(io::to_json(sample_counts(dist, o.shots, o.seed))) + "\n";
    if (o.out.empty()) {
      out << text;
    } else {
      io::write_text(o.out, text);
    }
    return 0;
  });
}

struct FromCountsOptions {
  StateSource source;
  std::vector<std::string> count_files;
  int l = 2;
  std::string coloring_file;
};

inline int from_counts(const FromCountsOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto g = resolve(o.source);
    const auto coloring = color_graph(g.spec.graph, resolve_coloring(g, o.coloring_file));
    detail::require(o.count_files.size() == coloring.q(),
                    "expected " + std::to_string(coloring.q()) + " count files, got " +
                        std::to_string(o.count_files.size()));
    std::vector<CountTable> tables;
    for (const auto& f : o.count_files) {
      tables.push_back(io::count_table_from_json(io::parse(io::read_text(f))));
    }
    const auto report = criterion_from_counts(tables, g.spec, o.l, coloring);
    out << io::dump(io::to_json(report)) << "\n";
    return report.violated ? detected : not_detected;
  });
}

struct HEOptions {
  std::vector<int> dofs;
  double noise = 0.0;
};

inline int he(const HEOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const HESpec spec(o.dofs);
    const WhiteNoiseState rho(build_he_state(spec), o.noise);
    const auto report = evaluate_he(rho, spec);
    out << io::dump(io::to_json(report)) << "\n";
    return report.violated ? detected : not_detected;
  });
}

struct DominanceOptions {
  StateSource source;
  std::optional<int> l;
  std::vector<int> he_dofs;
  std::string coloring_file;
};

inline constexpr double dominance_threshold = -1e-8;

/// Exit 0 when the gap clears the threshold, 1 otherwise.
inline int dominance(const DominanceOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    io::Json j;
    double gap = 0.0;
    if (!o.he_dofs.empty()) {
      detail::require(o.source.graph_file.empty() && o.source.family.empty(),
                      "--he cannot be combined with a graph");
      const HESpec spec(o.he_dofs);
      const auto r = he_dominance_gap(spec);
      gap = r.min_eigenvalue;
      j["kind"] = "he";
      j["dofs"] = spec.dofs();
      j["gamma"] = r.gamma;
      j["min_eigenvalue"] = r.min_eigenvalue;
      j["min_eigenvalue_scaled_projector"] = r.min_eigenvalue_scaled;
    } else {
      const auto g = resolve(o.source);
      const int l = o.l.value_or(2);
      const auto r = dominance_gap(g.spec, l, resolve_coloring(g, o.coloring_file));
      gap = r.min_gap;
      j["kind"] = "graph";
      j["d"] = g.spec.d;
      j["l"] = l;
      j["gamma"] = r.gamma;
      j["min_diagonal"] = r.min_gap;
    }
    j["threshold"] = dominance_threshold;
    j["passed"] = gap >= dominance_threshold;
    out << io::dump(j) << "\n";
    return gap >= dominance_threshold ? 0 : 1;
  });
}

}  // namespace quwit::cli
