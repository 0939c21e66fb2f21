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


#ifndef ECOSYSNA_REPORT_HPP_
#define ECOSYSNA_REPORT_HPP_

#include <algorithm>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ecosysna/collapse.hpp"
#include "ecosysna/community.hpp"
#include "ecosysna/error.hpp"
#include "ecosysna/graph.hpp"
#include "ecosysna/ingest.hpp"
#include "ecosysna/metrics.hpp"
#include "ecosysna/number_format.hpp"
#include "ecosysna/sampler.hpp"

namespace ecosysna {

inline constexpr std::string_view kReportSchema = "ecosysna/1";

namespace detail {

inline std::size_t emit(std::ostream& out, const std::string& text) {
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("failed writing output");
  return text.size();
}

inline std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string dot_id(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace detail

// Partitions ----------------------------------------------------------------

/// `domain,community_id` per node in id order, with a header line.
inline void write_partition_csv(std::ostream& out, const EcosystemGraph& graph, const Partition& partition) {
  out << "domain,community_id\n";
  for (const WebsiteNode& n : graph.nodes()) out << n.domain << ',' << partition.assignment.at(n.id) << '\n';
  if (!out) throw IoError("failed writing partition CSV");
}

struct PartitionEntry {
  std::string domain;
  std::size_t community = 0;
};

/// Parses `domain,community_id` rows (header and `#` comments skipped).
inline std::vector<PartitionEntry> read_partition_entries(std::istream& in) {
  if (!in) throw IoError("partition stream is not readable");
  std::vector<PartitionEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto comma = view.rfind(',');
    if (comma == std::string_view::npos) {
      throw ParseError("partition line " + std::to_string(line_no) + ": expected domain,community_id");
    }
    const std::string_view domain = trim(view.substr(0, comma));
    const std::string_view id_text = trim(view.substr(comma + 1));
    if (entries.empty() && domain == "domain") continue;
    auto id = parse_double(id_text);
    if (!id || *id < 0 || *id != static_cast<double>(static_cast<std::size_t>(*id))) {
      throw ParseError("partition line " + std::to_string(line_no) + ": bad community id '" +
                       std::string(id_text) + "'");
    }
    try {
      entries.push_back({normalize_domain(domain), static_cast<std::size_t>(*id)});
    } catch (const RejectedRecordError&) {
      throw ParseError("partition line " + std::to_string(line_no) + ": unnormalizable domain");
    }
  }
  if (in.bad()) throw IoError("error while reading partition stream");
  return entries;
}

/// Matches partition entries to graph nodes. Every node must be covered and
/// every listed domain must exist; the ValidationError names the offenders.
inline Partition partition_from_entries(const EcosystemGraph& graph, const std::vector<PartitionEntry>& entries,
                                        const DetectionConfig& config = {}) {
  std::vector<std::optional<std::size_t>> labels(graph.order());
  std::vector<std::string> unknown;
  for (const PartitionEntry& e : entries) {
    if (auto node = graph.find(e.domain)) {
      labels[*node] = e.community;
    } else {
      unknown.push_back(e.domain);
    }
  }
  std::vector<std::string> uncovered;
  for (const WebsiteNode& n : graph.nodes()) {
    if (!labels[n.id]) uncovered.push_back(n.domain);
  }
  if (!uncovered.empty() || !unknown.empty()) {
    std::string msg = "partition does not match graph";
    if (!uncovered.empty()) {
      msg += "; uncovered domains:";
      for (const auto& d : uncovered) msg += " " + d;
    }
    if (!unknown.empty()) {
      msg += "; domains not in graph:";
      for (const auto& d : unknown) msg += " " + d;
    }
    throw ValidationError(msg);
  }
  // Ids are kept as written (only squeezed to 0..k-1 when gapped) so that
  // labels keyed by id stay valid.
  std::set<std::size_t> ids;
  for (const auto& l : labels) ids.insert(*l);
  std::map<std::size_t, std::size_t> rank;
  for (std::size_t id : ids) rank.emplace(id, rank.size());
  Partition p;
  for (const auto& l : labels) p.assignment.push_back(rank.at(*l));
  p.community_count = ids.size();
  if (graph.total_weight() > 0.0) p.modularity = modularity(graph, p.assignment, config);
  return p;
}

inline Partition read_partition_csv(std::istream& in, const EcosystemGraph& graph,
                                    const DetectionConfig& config = {}) {
  return partition_from_entries(graph, read_partition_entries(in), config);
}

inline nlohmann::ordered_json partition_summary_json(const Partition& partition) {
  return {{"communities", partition.community_count},
          {"modularity", partition.modularity},
          {"sizes", partition.sizes()},
          {"truncated", partition.truncated}};
}

/// `community_id,label` per line, `#` comments.
inline CommunityLabels load_labels(std::istream& in) {
  if (!in) throw IoError("labels stream is not readable");
  CommunityLabels labels;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const bool header_allowed = std::exchange(first, false);
    const auto comma = view.find(',');
    auto id = comma == std::string_view::npos ? std::nullopt : parse_double(trim(view.substr(0, comma)));
    if (!id || *id < 0 || *id != static_cast<double>(static_cast<std::size_t>(*id))) {
      if (header_allowed) continue;
      throw ParseError("labels line " + std::to_string(line_no) + ": expected community_id,label");
    }
    labels[static_cast<std::size_t>(*id)] = std::string(trim(view.substr(comma + 1)));
  }
  if (in.bad()) throw IoError("error while reading labels stream");
  return labels;
}

// GEXF ----------------------------------------------------------------------

/// Gephi GEXF 1.2 document: directed weighted edges; node attributes carry
/// the domain, node weight, seed flag, wave and, with a partition, the
/// community id and that community's share of nodes.
inline std::size_t export_gexf(std::ostream& out, const EcosystemGraph& graph,
                               const Partition* partition = nullptr) {
  if (partition && partition->assignment.size() != graph.order()) {
    throw ValidationError("partition does not cover graph");
  }
  std::vector<double> share;
  if (partition && graph.order() > 0) {
    for (std::size_t size : partition->sizes()) share.push_back(100.0 * size / graph.order());
  }

  std::ostringstream doc;
  doc << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n"
      << "  <meta>\n    <creator>ecosysna</creator>\n  </meta>\n"
      << "  <graph mode=\"static\" defaultedgetype=\"directed\">\n"
      << "    <attributes class=\"node\">\n"
      << "      <attribute id=\"domain\" title=\"domain\" type=\"string\"/>\n"
      << "      <attribute id=\"node_weight\" title=\"node_weight\" type=\"double\"/>\n"
      << "      <attribute id=\"is_seed\" title=\"is_seed\" type=\"boolean\"/>\n"
      << "      <attribute id=\"wave\" title=\"wave\" type=\"integer\"/>\n";
  if (partition) {
    doc << "      <attribute id=\"community\" title=\"community\" type=\"integer\"/>\n"
        << "      <attribute id=\"share\" title=\"share\" type=\"double\"/>\n";
  }
  doc << "    </attributes>\n    <nodes>\n";
  for (const WebsiteNode& n : graph.nodes()) {
    const std::string domain = detail::xml_escape(n.domain);
    doc << "      <node id=\"" << n.id << "\" label=\"" << domain << "\">\n        <attvalues>\n"
        << "          <attvalue for=\"domain\" value=\"" << domain << "\"/>\n"
        << "          <attvalue for=\"node_weight\" value=\"" << to_shortest(n.node_weight) << "\"/>\n"
        << "          <attvalue for=\"is_seed\" value=\"" << (n.is_seed ? "true" : "false") << "\"/>\n"
        << "          <attvalue for=\"wave\" value=\"" << n.wave << "\"/>\n";
    if (partition) {
      const std::size_t c = partition->assignment[n.id];
      doc << "          <attvalue for=\"community\" value=\"" << c << "\"/>\n"
          << "          <attvalue for=\"share\" value=\"" << to_shortest(share[c]) << "\"/>\n";
    }
    doc << "        </attvalues>\n      </node>\n";
  }
  doc << "    </nodes>\n    <edges>\n";
  std::size_t edge_id = 0;
  for (const TransitionEdge& e : graph.edges()) {
    doc << "      <edge id=\"" << edge_id++ << "\" source=\"" << e.src << "\" target=\"" << e.dst
        << "\" weight=\"" << to_shortest(e.weight) << "\"/>\n";
  }
  doc << "    </edges>\n  </graph>\n</gexf>\n";
  return detail::emit(out, doc.str());
}

// DOT -----------------------------------------------------------------------

struct DotOptions {
  /// Node display labels, indexed by node id; domain used when missing.
  std::vector<std::string> labels;
  /// Percent share per node id; scales node width when present.
  std::vector<double> shares;
  int label_decimals = 1;
};

/// Graphviz digraph with node ids quoted as their domain and edge labels
/// holding the weight rounded for display.
inline std::size_t export_dot(std::ostream& out, const EcosystemGraph& graph, const DotOptions& options = {}) {
  std::ostringstream doc;
  doc << "digraph {\n";
  for (const WebsiteNode& n : graph.nodes()) {
    doc << "  " << detail::dot_id(n.domain);
    std::vector<std::string> attrs;
    if (n.id < options.labels.size() && !options.labels[n.id].empty()) {
      attrs.push_back("label=" + detail::dot_id(options.labels[n.id]));
    }
    if (n.id < options.shares.size()) {
      attrs.push_back("width=" + to_fixed(0.5 + 3.0 * options.shares[n.id] / 100.0, 3));
    }
    if (!attrs.empty()) {
      doc << " [";
      for (std::size_t i = 0; i < attrs.size(); ++i) doc << (i ? ", " : "") << attrs[i];
      doc << "]";
    }
    doc << ";\n";
  }
  for (const TransitionEdge& e : graph.edges()) {
    doc << "  " << detail::dot_id(graph.node(e.src).domain) << " -> " << detail::dot_id(graph.node(e.dst).domain)
        << " [label=\"" << to_fixed(e.weight, options.label_decimals) << "\", weight=" << to_shortest(e.weight)
        << "];\n";
  }
  doc << "}\n";
  return detail::emit(out, doc.str());
}

inline std::size_t export_dot(std::ostream& out, const QuotientGraph& quotient) {
  return export_dot(out, quotient.graph, DotOptions{quotient.labels, quotient.shares, 1});
}

// Report --------------------------------------------------------------------

struct ReportInputs {
  const EcosystemGraph* graph = nullptr;
  const Partition* partition = nullptr;
  DetectionConfig detection{};
  CommunityLabels labels;
  const InterCommunityMatrix* matrix = nullptr;
  const LinkClassification* classification = nullptr;
  const SamplingTrace* trace = nullptr;
  const std::vector<Removal>* removed = nullptr;
};

enum class ReportFormat { json, text };

namespace detail {

inline std::string profile_name(const CommunityProfile& p) {
  return p.label.value_or("community-" + std::to_string(p.community));
}

inline nlohmann::ordered_json report_json(const ReportInputs& in) {
  const NetworkSummary s = network_summary(*in.graph, in.partition, in.detection, in.labels);
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["summary"] = {{"order", s.order},
                  {"size", s.size},
                  {"total_weight", s.total_weight},
                  {"density", s.density},
                  {"degree", {{"min", s.degree.min}, {"max", s.degree.max}, {"mean", s.degree.mean}}},
                  {"strength", {{"min", s.strength.min}, {"max", s.strength.max}, {"mean", s.strength.mean}}}};
  if (s.community) {
    nlohmann::ordered_json profiles = nlohmann::ordered_json::array();
    for (const CommunityProfile& p : s.community->profiles) {
      profiles.push_back({{"id", p.community},
                          {"label", p.label ? nlohmann::ordered_json(*p.label) : nlohmann::ordered_json(nullptr)},
                          {"share", p.share},
                          {"members", p.members}});
    }
    j["communities"] = {{"k", s.community->communities},
                        {"modularity", s.community->modularity},
                        {"resolution", in.detection.resolution},
                        {"directed", in.detection.directed_modularity},
                        {"profiles", std::move(profiles)}};
  } else {
    j["communities"] = nullptr;
  }
  j["matrix"] = in.matrix ? matrix_to_json(*in.matrix) : nlohmann::ordered_json(nullptr);
  j["classification"] = in.classification && in.matrix ? classification_to_json(*in.classification, *in.matrix)
                                                       : nlohmann::ordered_json(nullptr);
  j["sampling"] = in.trace ? trace_to_json(*in.trace) : nlohmann::ordered_json(nullptr);
  if (in.removed) {
    nlohmann::ordered_json removed = nlohmann::ordered_json::array();
    for (const Removal& r : *in.removed) removed.push_back({{"domain", r.domain}, {"reason", to_string(r.reason)}});
    j["filter"] = {{"removed", std::move(removed)}};
  } else {
    j["filter"] = nullptr;
  }
  return j;
}

inline std::string pad(std::string text, std::size_t width) {
  if (text.size() < width) text.append(width - text.size(), ' ');
  return text;
}

inline std::string report_text(const ReportInputs& in) {
  const NetworkSummary s = network_summary(*in.graph, in.partition, in.detection, in.labels);
  std::ostringstream t;
  t << "Network summary\n";
  auto row = [&t](const std::string& key, const std::string& value) { t << "  " << pad(key, 18) << value << '\n'; };
  row("order", std::to_string(s.order));
  row("size", std::to_string(s.size));
  row("total weight", to_shortest(s.total_weight));
  row("density", to_fixed(s.density, 4));
  row("degree min/max", to_shortest(s.degree.min) + " / " + to_shortest(s.degree.max));
  row("degree mean", to_fixed(s.degree.mean, 2));
  row("strength mean", to_fixed(s.strength.mean, 2));

  if (s.community) {
    t << "\nCommunities (k=" << s.community->communities << ", Q=" << to_fixed(s.community->modularity, 4)
      << ")\n";
    std::size_t width = 0;
    for (const auto& p : s.community->profiles) width = std::max(width, profile_name(p).size());
    for (const auto& p : s.community->profiles) {
      t << "  " << pad(profile_name(p), width + 2) << to_fixed(p.share, 2) << "%\n";
    }
  }
  if (in.classification && in.matrix) {
    const auto& m = *in.matrix;
    auto links = [&](const char* title, const std::vector<MatrixEntry>& list) {
      t << '\n' << title << '\n';
      if (list.empty()) t << "  (none)\n";
      for (const auto& e : list) {
        t << "  " << m.label(e.source) << " -> " << m.label(e.target) << " (" << to_fixed(e.weight, 3) << ")\n";
      }
    };
    links(("Strong links (>= " + to_shortest(in.classification->threshold) + ")").c_str(),
          in.classification->strong);
    links("Weak links", in.classification->weak);
    t << "\nNo connections\n";
    if (in.classification->no_connections.empty()) t << "  (none)\n";
    for (std::size_t c : in.classification->no_connections) t << "  " << m.label(c) << '\n';
  }
  if (in.trace) {
    t << "\nSampling waves\n";
    for (const Wave& w : in.trace->waves) t << "  wave " << w.index << ": " << w.domains.size() << " sites\n";
    t << "  termination: " << to_string(in.trace->termination) << " at wave " << in.trace->termination_wave << '\n';
  }
  return t.str();
}

}  // namespace detail

/// One document aggregating everything that is available; sections without
/// inputs are null (JSON) or omitted (text).
inline std::size_t render_report(const ReportInputs& inputs, std::ostream& out,
                                 ReportFormat format = ReportFormat::json) {
  if (!inputs.graph) throw ValidationError("report needs a graph");
  if (format == ReportFormat::json) return detail::emit(out, detail::report_json(inputs).dump(2) + "\n");
  return detail::emit(out, detail::report_text(inputs));
}

}  // namespace ecosysna

#endif  // ECOSYSNA_REPORT_HPP_
