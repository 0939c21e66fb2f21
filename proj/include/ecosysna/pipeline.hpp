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


#ifndef ECOSYSNA_PIPELINE_HPP_
#define ECOSYSNA_PIPELINE_HPP_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ecosysna/collapse.hpp"
#include "ecosysna/community.hpp"
#include "ecosysna/error.hpp"
#include "ecosysna/graph.hpp"
#include "ecosysna/ingest.hpp"
#include "ecosysna/metrics.hpp"
#include "ecosysna/report.hpp"
#include "ecosysna/sampler.hpp"

namespace ecosysna {

/// Stable process exit codes.
enum ExitCode : int { kExitOk = 0, kExitInvalid = 1, kExitIo = 2 };

namespace fs = std::filesystem;

inline std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

/// Writes `content` next to `path` and renames it into place, so readers
/// see either the previous file or the complete new one.
inline void write_file_atomic(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw IoError("failed writing '" + tmp.string() + "'");
  }
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
}

template <typename Writer>
inline void write_artifact(const fs::path& path, Writer&& writer) {
  std::ostringstream buf;
  writer(buf);
  write_file_atomic(path, buf.str());
}

/// Runs `body` and maps library errors onto exit codes, reporting the
/// message on `err`.
inline int guarded(std::ostream& err, const std::string& stage, const std::function<void()>& body) {
  try {
    body();
    return kExitOk;
  } catch (const IoError& e) {
    err << "error [" << stage << "]: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error [" << stage << "]: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const fs::filesystem_error& e) {
    err << "error [" << stage << "]: " << e.what() << '\n';
    return kExitIo;
  }
}

struct Console {
  std::ostream& out;
  std::ostream& err;
  bool color = false;

  std::string bold(const std::string& text) const { return color ? "\033[1m" + text + "\033[0m" : text; }
};

// sample --------------------------------------------------------------------

struct SampleOptions {
  fs::path seeds;
  fs::path fixture;
  double threshold = 50.0;
  unsigned max_waves = 6;
  fs::path out;
  /// Defaults to `out` with extension `.trace.json`.
  std::optional<fs::path> trace;
};

struct SampleOutcome {
  Dataset dataset;
  fs::path graph_path;
  fs::path trace_path;
};

inline SampleOutcome run_sample(const SampleOptions& opt, const Console& console) {
  SamplingConfig config;
  config.similarity_threshold = opt.threshold;
  config.max_waves = opt.max_waves;
  config.validate();

  auto seeds_in = open_input(opt.seeds);
  const std::vector<std::string> seeds = load_seeds(seeds_in);
  auto fixture_in = open_input(opt.fixture);
  const SamplingFixture fixture = load_fixture(fixture_in);

  SampleOutcome result{build_dataset(seeds, fixture, config), opt.out, {}};
  result.trace_path = opt.trace.value_or(fs::path(opt.out).replace_extension(".trace.json"));
  for (const std::string& w : result.dataset.trace.warnings) console.err << "warning: " << w << '\n';

  write_artifact(result.graph_path, [&](std::ostream& o) { write_graph_csv(o, result.dataset.graph); });
  write_artifact(result.trace_path, [&](std::ostream& o) { o << trace_to_json(result.dataset.trace).dump(2) << '\n'; });
  const GraphSize size = result.dataset.graph.graph_size();
  console.out << "sampled " << size.order << " sites, " << size.size << " edges ("
              << to_string(result.dataset.trace.termination) << " at wave " << result.dataset.trace.termination_wave
              << ")\n";
  return result;
}

inline int cmd_sample(const SampleOptions& opt, const Console& console) {
  return guarded(console.err, "sample", [&] { run_sample(opt, console); });
}

// detect --------------------------------------------------------------------

struct DetectOptions {
  fs::path graph;
  std::optional<fs::path> filter;
  FilterMode mode = FilterMode::blocklist;
  bool keep_isolated = false;
  double resolution = 1.0;
  bool undirected = false;
  std::size_t max_passes = 100;
  std::size_t restarts = 8;
  fs::path out;
};

struct DetectOutcome {
  EcosystemGraph graph;
  std::vector<Removal> removed;
  Partition partition;
  DetectionConfig config;
};

/// Loads a transition CSV and folds it into a graph, reporting rejected rows.
inline EcosystemGraph load_graph_csv(const fs::path& path, std::ostream& err) {
  auto in = open_input(path);
  ParseResult parsed = parse_transitions(in, TransitionFormat::csv);
  for (const Diagnostic& d : parsed.diagnostics) {
    err << "warning: " << path.string() << ":" << d.line << ": " << d.message << '\n';
  }
  BuildResult built = build_graph(parsed.records);
  for (const RejectedRecord& r : built.rejected) err << "warning: rejected domain '" << r.raw << "'\n";
  if (built.graph.self_loops_dropped() > 0) {
    err << "warning: dropped " << built.graph.self_loops_dropped() << " self-transitions\n";
  }
  return std::move(built.graph);
}

inline nlohmann::ordered_json metrics_json(const EcosystemGraph& graph, const Partition* partition,
                                           const DetectionConfig& config) {
  std::ostringstream buf;
  ReportInputs inputs;
  inputs.graph = &graph;
  inputs.partition = partition;
  inputs.detection = config;
  render_report(inputs, buf, ReportFormat::json);
  auto full = nlohmann::ordered_json::parse(buf.str());
  nlohmann::ordered_json j;
  j["schema"] = full["schema"];
  j["summary"] = full["summary"];
  j["communities"] = full["communities"];
  j["centrality"] = {
      {"degree_in", centrality(graph, CentralityKind::degree_in)},
      {"degree_out", centrality(graph, CentralityKind::degree_out)},
      {"degree_total", centrality(graph, CentralityKind::degree_total)},
      {"betweenness", centrality(graph, CentralityKind::betweenness, true)},
  };
  return j;
}

inline DetectOutcome run_detect(const DetectOptions& opt, const Console& console) {
  DetectOutcome result;
  result.config.resolution = opt.resolution;
  result.config.directed_modularity = !opt.undirected;
  result.config.max_passes = opt.max_passes;
  result.config.restarts = opt.restarts;
  result.config.validate();

  EcosystemGraph raw = load_graph_csv(opt.graph, console.err);
  if (opt.filter) {
    auto in = open_input(*opt.filter);
    const RelevanceFilter filter = load_filter(in, opt.mode, !opt.keep_isolated);
    FilterResult filtered = apply_filter(raw, filter);
    result.graph = std::move(filtered.graph);
    result.removed = std::move(filtered.removed);
  } else {
    result.graph = std::move(raw);
  }
  const fs::path removed_path = opt.out / "removed.csv";
  write_artifact(removed_path, [&](std::ostream& o) {
    o << "domain,reason\n";
    for (const Removal& r : result.removed) o << r.domain << ',' << to_string(r.reason) << '\n';
  });
  if (result.graph.size() == 0) {
    throw ValidationError("graph is empty after filtering; removal report at " + removed_path.string());
  }

  result.partition = detect_louvain(result.graph, result.config);
  if (result.partition.truncated) console.err << "warning: detection stopped at max_passes\n";

  write_artifact(opt.out / "graph.csv", [&](std::ostream& o) { write_graph_csv(o, result.graph); });
  write_artifact(opt.out / "partition.csv",
                 [&](std::ostream& o) { write_partition_csv(o, result.graph, result.partition); });
  write_artifact(opt.out / "partition.json",
                 [&](std::ostream& o) { o << partition_summary_json(result.partition).dump(2) << '\n'; });
  write_artifact(opt.out / "metrics.json", [&](std::ostream& o) {
    o << metrics_json(result.graph, &result.partition, result.config).dump(2) << '\n';
  });
  write_artifact(opt.out / "graph.gexf", [&](std::ostream& o) { export_gexf(o, result.graph, &result.partition); });

  console.out << console.bold("k=" + std::to_string(result.partition.community_count)) << " Q="
              << to_fixed(result.partition.modularity, 6) << '\n';
  return result;
}

inline int cmd_detect(const DetectOptions& opt, const Console& console) {
  return guarded(console.err, "detect", [&] { run_detect(opt, console); });
}

// collapse ------------------------------------------------------------------

struct CollapseOptions {
  fs::path graph;
  fs::path partition;
  std::optional<fs::path> labels;
  double strong_threshold = 10.0;
  fs::path out;
};

struct CollapseOutcome {
  EcosystemGraph graph;
  Partition partition;
  CommunityLabels labels;
  InterCommunityMatrix matrix;
  LinkClassification classification;
};

inline CollapseOutcome run_collapse(const CollapseOptions& opt, const Console& console) {
  if (!(opt.strong_threshold > 0.0)) throw ConfigError("strong threshold must be positive");
  CollapseOutcome result;
  result.graph = load_graph_csv(opt.graph, console.err);

  auto part_in = open_input(opt.partition);
  const std::vector<PartitionEntry> entries = read_partition_entries(part_in);
  // Sites without surviving edges are absent from an edge CSV but may be
  // listed in the partition.
  for (const PartitionEntry& e : entries) result.graph.add_node(e.domain);
  result.partition = partition_from_entries(result.graph, entries);

  if (opt.labels) {
    auto in = open_input(*opt.labels);
    result.labels = load_labels(in);
  }
  result.matrix = quotient_mean_weights(result.graph, result.partition, result.labels);
  result.classification = classify_links(result.matrix, opt.strong_threshold);
  if (result.partition.community_count < 2) console.err << "warning: single community, matrix is empty\n";

  std::vector<double> shares(result.partition.community_count, 0.0);
  for (const CommunityProfile& p : community_shares(result.graph, result.partition)) shares[p.community] = p.share;
  const QuotientGraph quotient = quotient_graph(result.matrix, shares);

  write_artifact(opt.out / "matrix.csv", [&](std::ostream& o) { write_matrix_csv(o, result.matrix); });
  write_artifact(opt.out / "classification.json", [&](std::ostream& o) {
    o << classification_to_json(result.classification, result.matrix).dump(2) << '\n';
  });
  write_artifact(opt.out / "quotient.dot", [&](std::ostream& o) { export_dot(o, quotient); });

  console.out << "strong=" << result.classification.strong.size() << " weak=" << result.classification.weak.size()
              << " no_connections=" << result.classification.no_connections.size() << '\n';
  return result;
}

inline int cmd_collapse(const CollapseOptions& opt, const Console& console) {
  return guarded(console.err, "collapse", [&] { run_collapse(opt, console); });
}

// pipeline ------------------------------------------------------------------

struct PipelineOptions {
  fs::path seeds;
  fs::path fixture;
  double threshold = 50.0;
  unsigned max_waves = 6;
  std::optional<fs::path> filter;
  FilterMode mode = FilterMode::blocklist;
  bool keep_isolated = false;
  double resolution = 1.0;
  bool undirected = false;
  std::size_t restarts = 8;
  std::optional<fs::path> labels;
  double strong_threshold = 10.0;
  fs::path out;
  /// Defaults to `<out>/report.json`.
  std::optional<fs::path> report;
  ReportFormat report_format = ReportFormat::json;
};

/// sample -> filter/detect/metrics -> collapse -> report. Stages hand over
/// through their files in `out`; manifest.json records which stages
/// finished and, on failure, the failing stage and exit code.
inline int cmd_pipeline(const PipelineOptions& opt, const Console& console) {
  nlohmann::ordered_json manifest;
  manifest["schema"] = kReportSchema;
  manifest["stages"] = nlohmann::ordered_json::array();
  auto save_manifest = [&](const std::string& status) {
    manifest["status"] = status;
    write_file_atomic(opt.out / "manifest.json", manifest.dump(2) + "\n");
  };
  auto finish = [&](const std::string& stage, std::vector<fs::path> artifacts) {
    nlohmann::ordered_json names = nlohmann::ordered_json::array();
    for (const auto& a : artifacts) names.push_back(a.lexically_relative(opt.out).generic_string());
    manifest["stages"].push_back({{"stage", stage}, {"artifacts", std::move(names)}});
    save_manifest("running");
  };
  auto fail = [&](const std::string& stage, int code) {
    manifest["failed_stage"] = stage;
    manifest["exit_code"] = code;
    const int io = guarded(console.err, "manifest", [&] { save_manifest("failed"); });
    return code != kExitOk ? code : io;
  };

  if (int code = guarded(console.err, "pipeline", [&] { save_manifest("running"); }); code != kExitOk) return code;

  std::optional<SampleOutcome> sampled;
  const SampleOptions sample_opt{opt.seeds, opt.fixture, opt.threshold, opt.max_waves, opt.out / "raw.csv",
                                 opt.out / "trace.json"};
  if (int code = guarded(console.err, "sample", [&] { sampled = run_sample(sample_opt, console); }); code) {
    return fail("sample", code);
  }
  finish("sample", {sample_opt.out, *sample_opt.trace});

  std::optional<DetectOutcome> detected;
  DetectOptions detect_opt;
  detect_opt.graph = sample_opt.out;
  detect_opt.filter = opt.filter;
  detect_opt.mode = opt.mode;
  detect_opt.keep_isolated = opt.keep_isolated;
  detect_opt.resolution = opt.resolution;
  detect_opt.undirected = opt.undirected;
  detect_opt.restarts = opt.restarts;
  detect_opt.out = opt.out;
  if (int code = guarded(console.err, "detect", [&] { detected = run_detect(detect_opt, console); }); code) {
    return fail("detect", code);
  }
  finish("detect", {opt.out / "removed.csv", opt.out / "graph.csv", opt.out / "partition.csv",
                    opt.out / "partition.json", opt.out / "metrics.json", opt.out / "graph.gexf"});

  std::optional<CollapseOutcome> collapsed;
  const CollapseOptions collapse_opt{opt.out / "graph.csv", opt.out / "partition.csv", opt.labels,
                                     opt.strong_threshold, opt.out};
  if (int code = guarded(console.err, "collapse", [&] { collapsed = run_collapse(collapse_opt, console); }); code) {
    return fail("collapse", code);
  }
  finish("collapse", {opt.out / "matrix.csv", opt.out / "classification.json", opt.out / "quotient.dot"});

  const fs::path report_path = opt.report.value_or(opt.out / "report.json");
  int code = guarded(console.err, "report", [&] {
    ReportInputs inputs;
    inputs.graph = &collapsed->graph;
    inputs.partition = &collapsed->partition;
    inputs.detection = detected->config;
    inputs.labels = collapsed->labels;
    inputs.matrix = &collapsed->matrix;
    inputs.classification = &collapsed->classification;
    inputs.trace = &sampled->dataset.trace;
    inputs.removed = &detected->removed;
    write_artifact(report_path, [&](std::ostream& o) { render_report(inputs, o, opt.report_format); });
  });
  if (code != kExitOk) return fail("report", code);
  finish("report", {report_path});
  return guarded(console.err, "manifest", [&] { save_manifest("ok"); });
}

}  // namespace ecosysna

#endif  // ECOSYSNA_PIPELINE_HPP_
