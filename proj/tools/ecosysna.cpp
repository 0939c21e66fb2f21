// Copyright 2026 The ecosysna Authors.
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


// Command line driver: sample, detect, collapse, pipeline.

#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ecosysna/pipeline.hpp"

namespace {

using ecosysna::FilterMode;

const std::map<std::string, FilterMode> kModes{{"allow", FilterMode::allowlist}, {"block", FilterMode::blocklist}};
const std::map<std::string, ecosysna::ReportFormat> kFormats{{"json", ecosysna::ReportFormat::json},
                                                              {"text", ecosysna::ReportFormat::text}};

bool use_color() { return std::getenv("ECOSYSNA_NO_COLOR") == nullptr && isatty(STDOUT_FILENO) != 0; }

template <typename T>
void set_optional(std::optional<T>& target, const std::string& value) {
  if (!value.empty()) target = value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Website ecosystem network analysis: sampling, communities, inter-community links"};
  app.require_subcommand(1);

  ecosysna::SampleOptions sample;
  std::string sample_trace;
  auto* sample_cmd = app.add_subcommand("sample", "Snowball-sample a transition graph from a fixture");
  sample_cmd->add_option("--seeds", sample.seeds, "Seed domains, one per line")->required();
  sample_cmd->add_option("--fixture", sample.fixture, "Similarity/referral fixture JSON")->required();
  sample_cmd->add_option("--threshold", sample.threshold, "Minimum similarity score kept")->capture_default_str();
  sample_cmd->add_option("--max-waves", sample.max_waves, "Expansion wave cap")->capture_default_str();
  sample_cmd->add_option("--out", sample.out, "Raw transition CSV to write")->required();
  sample_cmd->add_option("--trace", sample_trace, "Sampling trace JSON (default: <out>.trace.json)");

  ecosysna::DetectOptions detect;
  std::string detect_filter;
  auto* detect_cmd = app.add_subcommand("detect", "Filter a graph and detect communities");
  detect_cmd->add_option("--graph", detect.graph, "Transition CSV")->required();
  detect_cmd->add_option("--filter", detect_filter, "Domain list, one per line");
  detect_cmd->add_option("--mode", detect.mode, "Filter mode")
      ->transform(CLI::CheckedTransformer(kModes, CLI::ignore_case))
      ->default_str("block");
  detect_cmd->add_flag("--keep-isolated", detect.keep_isolated, "Keep sites left without edges by the filter");
  detect_cmd->add_option("--resolution", detect.resolution, "Modularity resolution")->capture_default_str();
  detect_cmd->add_option("--restarts", detect.restarts, "Sweep orders tried")->capture_default_str();
  detect_cmd->add_flag("--undirected", detect.undirected, "Use undirected modularity");
  detect_cmd->add_option("--out", detect.out, "Output directory")->required();

  ecosysna::CollapseOptions collapse;
  std::string collapse_labels;
  auto* collapse_cmd = app.add_subcommand("collapse", "Inter-community matrix and strong/weak links");
  collapse_cmd->add_option("--graph", collapse.graph, "Transition CSV")->required();
  collapse_cmd->add_option("--partition", collapse.partition, "Partition CSV (domain,community_id)")->required();
  collapse_cmd->add_option("--labels", collapse_labels, "Community labels (community_id,label)");
  collapse_cmd->add_option("--strong-threshold", collapse.strong_threshold, "Strong link threshold")
      ->capture_default_str();
  collapse_cmd->add_option("--out", collapse.out, "Output directory")->required();

  ecosysna::PipelineOptions pipe;
  std::string pipe_filter, pipe_labels, pipe_report;
  auto* pipe_cmd = app.add_subcommand("pipeline", "Run sample, detect, collapse and report end to end");
  pipe_cmd->add_option("--seeds", pipe.seeds, "Seed domains")->required();
  pipe_cmd->add_option("--fixture", pipe.fixture, "Similarity/referral fixture JSON")->required();
  pipe_cmd->add_option("--threshold", pipe.threshold, "Minimum similarity score kept")->capture_default_str();
  pipe_cmd->add_option("--max-waves", pipe.max_waves, "Expansion wave cap")->capture_default_str();
  pipe_cmd->add_option("--filter", pipe_filter, "Domain list");
  pipe_cmd->add_option("--mode", pipe.mode, "Filter mode")
      ->transform(CLI::CheckedTransformer(kModes, CLI::ignore_case))
      ->default_str("block");
  pipe_cmd->add_flag("--keep-isolated", pipe.keep_isolated, "Keep sites left without edges by the filter");
  pipe_cmd->add_option("--resolution", pipe.resolution, "Modularity resolution")->capture_default_str();
  pipe_cmd->add_option("--restarts", pipe.restarts, "Sweep orders tried")->capture_default_str();
  pipe_cmd->add_flag("--undirected", pipe.undirected, "Use undirected modularity");
  pipe_cmd->add_option("--labels", pipe_labels, "Community labels");
  pipe_cmd->add_option("--strong-threshold", pipe.strong_threshold, "Strong link threshold")->capture_default_str();
  pipe_cmd->add_option("--out", pipe.out, "Output directory")->required();
  pipe_cmd->add_option("--report", pipe_report, "Report file (default: <out>/report.json)");
  pipe_cmd->add_option("--report-format", pipe.report_format, "Report format")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case))
      ->default_str("json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ecosysna::kExitInvalid;
  }

  const ecosysna::Console console{std::cout, std::cerr, use_color()};
  if (*sample_cmd) {
    if (!sample_trace.empty()) sample.trace = sample_trace;
    return ecosysna::cmd_sample(sample, console);
  }
  if (*detect_cmd) {
    set_optional(detect.filter, detect_filter);
    return ecosysna::cmd_detect(detect, console);
  }
  if (*collapse_cmd) {
    set_optional(collapse.labels, collapse_labels);
    return ecosysna::cmd_collapse(collapse, console);
  }
  set_optional(pipe.filter, pipe_filter);
  set_optional(pipe.labels, pipe_labels);
  set_optional(pipe.report, pipe_report);
  return ecosysna::cmd_pipeline(pipe, console);
}
