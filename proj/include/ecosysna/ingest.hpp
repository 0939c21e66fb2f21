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


#ifndef ECOSYSNA_INGEST_HPP_
#define ECOSYSNA_INGEST_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ecosysna/error.hpp"
#include "ecosysna/graph.hpp"
#include "ecosysna/number_format.hpp"

namespace ecosysna {

struct TransitionRecord {
  std::string src_raw;
  std::string dst_raw;
  double weight = 0.0;

  friend bool operator==(const TransitionRecord&, const TransitionRecord&) = default;
};

struct Diagnostic {
  /// 1-based line number (CSV) or record number (JSON).
  std::size_t line = 0;
  std::string message;
};

struct ParseResult {
  std::vector<TransitionRecord> records;
  std::vector<Diagnostic> diagnostics;
  /// Data rows seen, excluding blank lines, comments and the header.
  std::size_t total_rows = 0;
};

enum class TransitionFormat { csv, json };

namespace detail {

inline bool validate_record(const TransitionRecord& r, std::string& why) {
  if (r.src_raw.empty() || r.dst_raw.empty()) {
    why = "empty domain field";
    return false;
  }
  if (!(r.weight > 0.0) || !std::isfinite(r.weight)) {
    why = "weight must be a positive finite number";
    return false;
  }
  return true;
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                              : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

inline bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

inline ParseResult parse_csv(std::istream& in) {
  ParseResult result;
  std::string line;
  std::size_t line_no = 0;
  bool seen_data_row = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (line_no == 1 && view.substr(0, 3) == "\xEF\xBB\xBF") view.remove_prefix(3);
    view = trim(view);
    if (view.empty() || view.front() == '#') continue;

    auto fields = split_commas(view);
    if (!seen_data_row && fields.size() == 3 && iequals(fields[0], "src") &&
        iequals(fields[1], "dst") && iequals(fields[2], "weight")) {
      seen_data_row = true;
      continue;
    }
    seen_data_row = true;
    ++result.total_rows;

    if (fields.size() != 3) {
      result.diagnostics.push_back(
          {line_no, "expected 3 fields, got " + std::to_string(fields.size())});
      continue;
    }
    auto weight = parse_double(fields[2]);
    if (!weight) {
      result.diagnostics.push_back({line_no, "unparsable weight '" + std::string(fields[2]) + "'"});
      continue;
    }
    TransitionRecord record{std::string(fields[0]), std::string(fields[1]), *weight};
    if (std::string why; !validate_record(record, why)) {
      result.diagnostics.push_back({line_no, why});
      continue;
    }
    result.records.push_back(std::move(record));
  }
  if (in.bad()) throw IoError("error while reading transition stream");
  return result;
}

inline ParseResult parse_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("transition JSON: ") + e.what());
  }
  const nlohmann::json* rows = &doc;
  if (doc.is_object() && doc.contains("transitions")) rows = &doc["transitions"];
  if (!rows->is_array()) throw ParseError("transition JSON: expected an array of {src,dst,weight}");

  ParseResult result;
  std::size_t index = 0;
  for (const auto& row : *rows) {
    ++index;
    ++result.total_rows;
    if (!row.is_object() || !row.contains("src") || !row.contains("dst") || !row.contains("weight") ||
        !row["src"].is_string() || !row["dst"].is_string() || !row["weight"].is_number()) {
      result.diagnostics.push_back({index, "expected {\"src\": str, \"dst\": str, \"weight\": number}"});
      continue;
    }
    TransitionRecord record{row["src"].get<std::string>(), row["dst"].get<std::string>(),
                            row["weight"].get<double>()};
    if (std::string why; !validate_record(record, why)) {
      result.diagnostics.push_back({index, why});
      continue;
    }
    result.records.push_back(std::move(record));
  }
  return result;
}

}  // namespace detail

/// Reads transition records. Malformed rows end up in `diagnostics` with
/// their line number; well-formed rows keep their input order.
inline ParseResult parse_transitions(std::istream& in, TransitionFormat format = TransitionFormat::csv) {
  if (!in) throw IoError("transition stream is not readable");
  ParseResult result = format == TransitionFormat::csv ? detail::parse_csv(in) : detail::parse_json(in);
  if (result.records.empty()) {
    throw EmptyDatasetError("no valid transition rows (" + std::to_string(result.diagnostics.size()) +
                            " malformed)");
  }
  return result;
}

/// Canonical CSV form: header line, then one `src,dst,weight` row per record.
inline void write_transitions_csv(std::ostream& out, std::span<const TransitionRecord> records) {
  out << "src,dst,weight\n";
  for (const auto& r : records) out << r.src_raw << ',' << r.dst_raw << ',' << to_shortest(r.weight) << '\n';
  if (!out) throw IoError("failed writing transition CSV");
}

/// Same format, one row per merged edge in (src id, dst id) order.
inline void write_graph_csv(std::ostream& out, const EcosystemGraph& graph) {
  out << "src,dst,weight\n";
  for (const auto& e : graph.edges()) {
    out << graph.node(e.src).domain << ',' << graph.node(e.dst).domain << ',' << to_shortest(e.weight)
        << '\n';
  }
  if (!out) throw IoError("failed writing graph CSV");
}

struct RejectedRecord {
  std::size_t index = 0;
  std::string raw;
};

struct BuildResult {
  EcosystemGraph graph;
  std::vector<RejectedRecord> rejected;
};

/// Folds records into a graph. Unnormalizable domains are collected rather
/// than aborting the build; self-transitions are counted by the graph.
inline BuildResult build_graph(std::span<const TransitionRecord> records) {
  BuildResult result;
  for (std::size_t i = 0; i < records.size(); ++i) {
    try {
      result.graph.add_transition(records[i].src_raw, records[i].dst_raw, records[i].weight);
    } catch (const RejectedRecordError& e) {
      result.rejected.push_back({i, e.raw()});
    }
  }
  return result;
}

// Relevance filtering -------------------------------------------------------

enum class FilterMode { allowlist, blocklist };

struct RelevanceFilter {
  FilterMode mode = FilterMode::blocklist;
  std::set<std::string> domains;
  bool drop_isolated = true;
};

enum class RemovalReason { blocklisted, not_allowlisted, isolated };

inline std::string_view to_string(RemovalReason r) {
  switch (r) {
    case RemovalReason::blocklisted: return "blocklisted";
    case RemovalReason::not_allowlisted: return "not_allowlisted";
    case RemovalReason::isolated: return "isolated";
  }
  return "unknown";
}

struct Removal {
  std::string domain;
  RemovalReason reason;
};

struct FilterResult {
  EcosystemGraph graph;
  std::vector<Removal> removed;
};

/// One domain per line; `#` starts a comment.
inline RelevanceFilter load_filter(std::istream& in, FilterMode mode, bool drop_isolated = true) {
  if (!in) throw IoError("filter stream is not readable");
  RelevanceFilter filter{mode, {}, drop_isolated};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    try {
      filter.domains.insert(normalize_domain(view));
    } catch (const RejectedRecordError&) {
      throw ParseError("filter line " + std::to_string(line_no) + ": unnormalizable domain '" +
                       std::string(view) + "'");
    }
  }
  if (in.bad()) throw IoError("error while reading filter stream");
  return filter;
}

inline FilterResult apply_filter(const EcosystemGraph& graph, const RelevanceFilter& filter) {
  if (filter.mode == FilterMode::allowlist && filter.domains.empty()) {
    throw ConfigError("allowlist filter has no domains");
  }
  FilterResult result;
  std::vector<std::optional<RemovalReason>> reason(graph.order());
  for (const WebsiteNode& n : graph.nodes()) {
    const bool listed = filter.domains.contains(n.domain);
    if (filter.mode == FilterMode::blocklist && listed) reason[n.id] = RemovalReason::blocklisted;
    if (filter.mode == FilterMode::allowlist && !listed) reason[n.id] = RemovalReason::not_allowlisted;
  }
  if (filter.drop_isolated) {
    for (const WebsiteNode& n : graph.nodes()) {
      if (reason[n.id]) continue;
      auto survives = [&](const std::map<NodeId, double>& adj) {
        return std::any_of(adj.begin(), adj.end(),
                           [&](const auto& kv) { return kv.first != n.id && !reason[kv.first]; });
      };
      if (!survives(graph.successors(n.id)) && !survives(graph.predecessors(n.id))) {
        reason[n.id] = RemovalReason::isolated;
      }
    }
  }
  for (const WebsiteNode& n : graph.nodes()) {
    if (reason[n.id]) result.removed.push_back({n.domain, *reason[n.id]});
  }
  result.graph = graph.induced_subgraph([&](const WebsiteNode& n) { return !reason[n.id]; });
  return result;
}

// Sampling fixtures ---------------------------------------------------------

struct SimilarSite {
  std::string domain;
  double score = 0.0;
};

struct Referral {
  std::string domain;
  double weight = 1.0;
};

struct SiteEntry {
  std::vector<SimilarSite> similar;
  std::vector<Referral> referrals_in;
  std::vector<Referral> referrals_out;
};

/// Source of similarity and referral lists for the snowball sampler.
class SiteProvider {
 public:
  virtual ~SiteProvider() = default;
  /// nullptr when the provider knows nothing about `domain`.
  virtual const SiteEntry* site(std::string_view domain) const = 0;
};

/// File-backed provider. Similar lists are held sorted by descending score
/// and capped at five; referral lists are capped at five each.
class SamplingFixture : public SiteProvider {
 public:
  static constexpr std::size_t kListCap = 5;

  const SiteEntry* site(std::string_view domain) const override {
    auto it = sites_.find(std::string(domain));
    return it == sites_.end() ? nullptr : &it->second;
  }

  void insert(std::string domain, SiteEntry entry) {
    std::stable_sort(entry.similar.begin(), entry.similar.end(),
                     [](const SimilarSite& a, const SimilarSite& b) {
                       if (a.score != b.score) return a.score > b.score;
                       return a.domain < b.domain;
                     });
    if (entry.similar.size() > kListCap) entry.similar.resize(kListCap);
    if (entry.referrals_in.size() > kListCap) entry.referrals_in.resize(kListCap);
    if (entry.referrals_out.size() > kListCap) entry.referrals_out.resize(kListCap);
    sites_[std::move(domain)] = std::move(entry);
  }

  const std::map<std::string, SiteEntry>& sites() const noexcept { return sites_; }

 private:
  std::map<std::string, SiteEntry> sites_;
};

namespace detail {

inline std::string fixture_domain(const nlohmann::json& value, const std::string& path) {
  if (!value.is_string()) throw ParseError("fixture " + path + ": expected a domain string");
  try {
    return normalize_domain(value.get<std::string>());
  } catch (const RejectedRecordError&) {
    throw ParseError("fixture " + path + ": unnormalizable domain");
  }
}

inline std::vector<Referral> fixture_referrals(const nlohmann::json& list, const std::string& path) {
  std::vector<Referral> out;
  if (!list.is_array()) throw ParseError("fixture " + path + ": expected an array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string item_path = path + "/" + std::to_string(i);
    const auto& item = list[i];
    if (item.is_string()) {
      out.push_back({fixture_domain(item, item_path), 1.0});
      continue;
    }
    if (!item.is_object() || !item.contains("domain")) {
      throw ParseError("fixture " + item_path + ": expected a domain string or {domain, weight}");
    }
    Referral r{fixture_domain(item["domain"], item_path + "/domain"), 1.0};
    if (item.contains("weight")) {
      const auto& w = item["weight"];
      if (!w.is_number() || !(w.get<double>() > 0.0) || !std::isfinite(w.get<double>())) {
        throw ValidationError("fixture " + item_path + "/weight: must be a positive number");
      }
      r.weight = w.get<double>();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace detail

/// Loads `{ "sites": { "<domain>": { "similar": [...], "referrals_in": [...],
/// "referrals_out": [...] } } }`. Referral entries may be plain domains or
/// `{"domain": str, "weight": number}` objects. Errors name the JSON path.
inline SamplingFixture load_fixture(std::istream& in) {
  if (!in) throw IoError("fixture stream is not readable");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    if (in.bad()) throw IoError("error while reading fixture stream");
    throw ParseError(std::string("fixture: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("sites")) throw ParseError("fixture /sites: missing");
  const auto& sites = doc["sites"];
  if (!sites.is_object()) throw ParseError("fixture /sites: expected an object");

  SamplingFixture fixture;
  for (const auto& [key, body] : sites.items()) {
    const std::string path = "/sites/" + key;
    const std::string domain = detail::fixture_domain(key, path);
    if (fixture.site(domain)) throw ParseError("fixture " + path + ": duplicate site after normalization");
    if (!body.is_object()) throw ParseError("fixture " + path + ": expected an object");

    SiteEntry entry;
    if (body.contains("similar")) {
      const auto& similar = body["similar"];
      if (!similar.is_array()) throw ParseError("fixture " + path + "/similar: expected an array");
      for (std::size_t i = 0; i < similar.size(); ++i) {
        const std::string item_path = path + "/similar/" + std::to_string(i);
        const auto& item = similar[i];
        if (!item.is_object() || !item.contains("domain") || !item.contains("score")) {
          throw ParseError("fixture " + item_path + ": expected {domain, score}");
        }
        if (!item["score"].is_number()) throw ParseError("fixture " + item_path + "/score: expected a number");
        const double score = item["score"].get<double>();
        if (!(score >= 0.0 && score <= 100.0)) {
          throw ValidationError("fixture " + item_path + "/score: " + to_shortest(score) +
                                " outside [0, 100]");
        }
        entry.similar.push_back({detail::fixture_domain(item["domain"], item_path + "/domain"), score});
      }
    }
    if (body.contains("referrals_in")) {
      entry.referrals_in = detail::fixture_referrals(body["referrals_in"], path + "/referrals_in");
    }
    if (body.contains("referrals_out")) {
      entry.referrals_out = detail::fixture_referrals(body["referrals_out"], path + "/referrals_out");
    }
    fixture.insert(domain, std::move(entry));
  }
  return fixture;
}

}  // namespace ecosysna

#endif  // ECOSYSNA_INGEST_HPP_
