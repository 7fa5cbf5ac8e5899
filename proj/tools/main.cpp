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

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

void add_source(CLI::App* cmd, quwit::cli::StateSource& src) {
  cmd->add_option("--graph", src.graph_file, "Graph JSON file");
  cmd->add_option("--family", src.family, "Named family: bell, ghz or cluster");
  cmd->add_option("--vertices,-N", src.vertices, "Vertex count for ghz and cluster");
  cmd->add_option("--d", src.d, "Qudit dimension (overrides the graph file)");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace quwit::cli;
  CLI::App app{"Graph-state entanglement criteria for qudits"};
  app.require_subcommand(1);

  StateBuildOptions build;
  auto* build_cmd = app.add_subcommand("state-build", "Write graph-state amplitudes");
  add_source(build_cmd, build.source);
  build_cmd->add_option("--out,-o", build.out, "Output file (stdout for JSON if omitted)");
  build_cmd->add_option("--format", build.format, "json or binary");

  WitnessOptions witness;
  auto* witness_cmd = app.add_subcommand("witness-eval", "Evaluate the coloured-kernel criterion");
  add_source(witness_cmd, witness.source);
  witness_cmd->add_option("--l", witness.l, "Schmidt-number level");
  witness_cmd->add_option("--noise,-p", witness.noise, "White-noise probability");
  witness_cmd->add_option("--coloring", witness.coloring_file, "Colouring JSON file");

  SweepOptions sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "Closed-form CSV over one parameter");
  sweep_cmd->add_option("--family", sw.family, "bell, ghz or cluster")->required();
  sweep_cmd->add_option("--variable", sw.variable, "noise, d, N or l")->required();
  sweep_cmd->add_option("--values", sw.values, "Explicit points")->delimiter(',');
  sweep_cmd->add_option("--start", sw.start);
  sweep_cmd->add_option("--stop", sw.stop);
  sweep_cmd->add_option("--step", sw.step);
  sweep_cmd->add_option("--d", sw.d, "Qudit dimension");
  sweep_cmd->add_option("--vertices,-N", sw.vertices, "Vertex count");
  sweep_cmd->add_option("--l", sw.l, "Level, or 'd' for l = d");
  sweep_cmd->add_option("--noise,-p", sw.noise, "White-noise probability");
  sweep_cmd->add_option("--out,-o", sw.out, "CSV file (stdout if omitted)");

  MeasureOptions meas;
  auto* measure_cmd = app.add_subcommand("measure", "Sample one colour-class setting");
  add_source(measure_cmd, meas.source);
  measure_cmd->add_option("--setting", meas.setting, "Colour class, 1-based")->required();
  measure_cmd->add_option("--shots", meas.shots, "Number of shots")->required();
  measure_cmd->add_option("--seed", meas.seed, "Generator seed");
  measure_cmd->add_option("--noise,-p", meas.noise, "White-noise probability");
  measure_cmd->add_option("--coloring", meas.coloring_file, "Colouring JSON file");
  measure_cmd->add_option("--out,-o", meas.out, "Counts file (stdout if omitted)");

  FromCountsOptions fc;
  auto* fc_cmd = app.add_subcommand("from-counts", "Criterion report from count files");
  add_source(fc_cmd, fc.source);
  fc_cmd->add_option("counts", fc.count_files, "One counts file per colour class")->required();
  fc_cmd->add_option("--l", fc.l, "Schmidt-number level");
  fc_cmd->add_option("--coloring", fc.coloring_file, "Colouring JSON file");

  HEOptions he_opts;
  auto* he_cmd = app.add_subcommand("he", "Evaluate the hyperentanglement criterion");
  he_cmd->add_option("--dofs", he_opts.dofs, "Levels per degree of freedom")
      ->delimiter(',')
      ->required();
  he_cmd->add_option("--noise,-p", he_opts.noise, "White-noise probability");

  DominanceOptions dom;
  auto* dom_cmd = app.add_subcommand("dominance", "Witness dominance gap");
  add_source(dom_cmd, dom.source);
  dom_cmd->add_option("--l", dom.l, "Schmidt-number level");
  dom_cmd->add_option("--he", dom.he_dofs, "HE levels per degree of freedom")->delimiter(',');
  dom_cmd->add_option("--coloring", dom.coloring_file, "Colouring JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage_error;
  }

  if (*build_cmd) return state_build(build, std::cout, std::cerr);
  if (*witness_cmd) return witness_eval(witness, std::cout, std::cerr);
  if (*sweep_cmd) return sweep(sw, std::cout, std::cerr);
  if (*measure_cmd) return measure(meas, std::cout, std::cerr);
  if (*fc_cmd) return from_counts(fc, std::cout, std::cerr);
  if (*he_cmd) return he(he_opts, std::cout, std::cerr);
  if (*dom_cmd) return dominance(dom, std::cout, std::cerr);
  return usage_error;
}
