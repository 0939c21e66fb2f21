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


#ifndef ECOSYSNA_GRAPH_HPP_
#define ECOSYSNA_GRAPH_HPP_

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ecosysna/error.hpp"

namespace ecosysna {

using NodeId = std::size_t;

/// Reduces a URL or hostname to a bare lowercase domain: scheme, `www.`
/// prefix, path, query, port and trailing dots are removed. Throws
/// RejectedRecordError when nothing is left.
inline std::string normalize_domain(std::string_view raw) {
  std::string_view s = raw;
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);

  if (auto scheme = s.find("://"); scheme != std::string_view::npos) s.remove_prefix(scheme + 3);
  if (auto cut = s.find_first_of("/?#"); cut != std::string_view::npos) s = s.substr(0, cut);
  if (auto at = s.rfind('@'); at != std::string_view::npos) s.remove_prefix(at + 1);
  if (auto colon = s.find(':'); colon != std::string_view::npos) s = s.substr(0, colon);
  while (!s.empty() && s.back() == '.') s.remove_suffix(1);

  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (out.rfind("www.", 0) == 0) out.erase(0, 4);
  if (out.empty() || std::any_of(out.begin(), out.end(), is_space)) {
    throw RejectedRecordError(std::string(raw));
  }
  return out;
}

struct WebsiteNode {
  NodeId id = 0;
  std::string domain;
  /// Weighted in-degree plus weighted out-degree, kept current on every insert.
  double node_weight = 0.0;
  bool is_seed = false;
  /// 0 for seeds, otherwise the sampling wave that discovered the site.
  unsigned wave = 1;
};

struct TransitionEdge {
  NodeId src = 0;
  NodeId dst = 0;
  double weight = 0.0;

  friend bool operator==(const TransitionEdge&, const TransitionEdge&) = default;
};

enum class DegreeMode { in, out, total };

struct GraphSize {
  std::size_t order = 0;
  std::size_t size = 0;
  double total_weight = 0.0;
};

/// Directed weighted simple graph of websites. Parallel transitions are
/// merged by summing their weights. Node ids are dense and assigned in
/// first-mention order.
///
/// Self-loops are refused by add_transition (and counted) but may be
/// inserted through add_edge; community aggregation relies on them to hold
/// intra-community weight.
class EcosystemGraph {
 public:
  EcosystemGraph() = default;

  /// Inserts the node if missing and returns its id. Seed flag and wave are
  /// only applied on creation.
  NodeId add_node(std::string_view domain, bool is_seed = false,
                  std::optional<unsigned> wave = std::nullopt) {
    std::string key = normalize_domain(domain);
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    const NodeId id = nodes_.size();
    WebsiteNode node;
    node.id = id;
    node.domain = key;
    node.is_seed = is_seed;
    node.wave = wave.value_or(is_seed ? 0u : 1u);
    nodes_.push_back(std::move(node));
    out_.emplace_back();
    in_.emplace_back();
    index_.emplace(std::move(key), id);
    return id;
  }

  /// Records a transition between two sites. Returns the merged edge, or
  /// nullopt when both domains normalize to the same site (counted in
  /// self_loops_dropped()).
  std::optional<TransitionEdge> add_transition(std::string_view src_domain,
                                               std::string_view dst_domain,
                                               double weight) {
    check_weight(weight);
    std::string src = normalize_domain(src_domain);
    std::string dst = normalize_domain(dst_domain);
    if (src == dst) {
      ++self_loops_dropped_;
      return std::nullopt;
    }
    const NodeId u = add_node(src);
    const NodeId v = add_node(dst);
    return add_edge(u, v, weight);
  }

  /// Low level insert by id; self-loops allowed.
  TransitionEdge add_edge(NodeId src, NodeId dst, double weight) {
    check_weight(weight);
    check_node(src);
    check_node(dst);
    auto [it, inserted] = out_[src].try_emplace(dst, 0.0);
    double& w = it->second;
    w += weight;
    in_[dst][src] = w;
    nodes_[src].node_weight += weight;
    nodes_[dst].node_weight += weight;
    total_weight_ += weight;
    if (inserted) ++edge_count_;
    return {src, dst, w};
  }

  std::size_t order() const noexcept { return nodes_.size(); }
  std::size_t size() const noexcept { return edge_count_; }
  double total_weight() const noexcept { return total_weight_; }
  GraphSize graph_size() const noexcept { return {order(), size(), total_weight_}; }
  std::size_t self_loops_dropped() const noexcept { return self_loops_dropped_; }
  bool empty() const noexcept { return nodes_.empty(); }

  const std::vector<WebsiteNode>& nodes() const noexcept { return nodes_; }
  const WebsiteNode& node(NodeId id) const {
    check_node(id);
    return nodes_[id];
  }

  std::optional<NodeId> find(std::string_view domain) const {
    auto it = index_.find(std::string(domain));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  NodeId id_of(std::string_view domain) const {
    if (auto id = find(domain)) return *id;
    throw NotFoundError("unknown node '" + std::string(domain) + "'");
  }

  /// Successors of `id` with merged weights, ascending by target id.
  const std::map<NodeId, double>& successors(NodeId id) const {
    check_node(id);
    return out_[id];
  }
  const std::map<NodeId, double>& predecessors(NodeId id) const {
    check_node(id);
    return in_[id];
  }

  std::optional<double> edge_weight(NodeId src, NodeId dst) const {
    check_node(src);
    check_node(dst);
    auto it = out_[src].find(dst);
    if (it == out_[src].end()) return std::nullopt;
    return it->second;
  }

  /// Unweighted mode counts distinct edges, weighted mode sums weights.
  double degree(NodeId id, DegreeMode mode, bool weighted) const {
    check_node(id);
    auto sum = [weighted](const std::map<NodeId, double>& adj) {
      if (!weighted) return static_cast<double>(adj.size());
      double s = 0.0;
      for (const auto& [_, w] : adj) s += w;
      return s;
    };
    switch (mode) {
      case DegreeMode::in: return sum(in_[id]);
      case DegreeMode::out: return sum(out_[id]);
      case DegreeMode::total: return sum(in_[id]) + sum(out_[id]);
    }
    return 0.0;
  }

  double degree(std::string_view domain, DegreeMode mode, bool weighted) const {
    return degree(id_of(domain), mode, weighted);
  }

  /// All edges ordered by (src id, dst id).
  std::vector<TransitionEdge> edges() const {
    std::vector<TransitionEdge> result;
    result.reserve(edge_count_);
    for (NodeId u = 0; u < out_.size(); ++u) {
      for (const auto& [v, w] : out_[u]) result.push_back({u, v, w});
    }
    return result;
  }

  /// Keeps the nodes satisfying `keep` (ids renumbered densely in original
  /// order) and the edges between them. Node weights are recomputed.
  EcosystemGraph induced_subgraph(const std::function<bool(const WebsiteNode&)>& keep) const {
    EcosystemGraph sub;
    std::vector<std::optional<NodeId>> remap(nodes_.size());
    for (const WebsiteNode& n : nodes_) {
      if (keep(n)) remap[n.id] = sub.add_node(n.domain, n.is_seed, n.wave);
    }
    for (NodeId u = 0; u < out_.size(); ++u) {
      if (!remap[u]) continue;
      for (const auto& [v, w] : out_[u]) {
        if (remap[v]) sub.add_edge(*remap[u], *remap[v], w);
      }
    }
    return sub;
  }

 private:
  void check_node(NodeId id) const {
    if (id >= nodes_.size()) throw NotFoundError("unknown node id " + std::to_string(id));
  }
  static void check_weight(double weight) {
    if (!(weight > 0.0) || weight == std::numeric_limits<double>::infinity()) {
      throw ValidationError("edge weight must be positive and finite, got " + std::to_string(weight));
    }
  }

  std::vector<WebsiteNode> nodes_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::map<NodeId, double>> out_;
  std::vector<std::map<NodeId, double>> in_;
  double total_weight_ = 0.0;
  std::size_t edge_count_ = 0;
  std::size_t self_loops_dropped_ = 0;
};

/// Edge list keyed by domain names, sorted; two graphs built from the same
/// transitions in any order compare equal under this view.
struct DomainEdge {
  std::string src;
  std::string dst;
  double weight = 0.0;
  friend auto operator<=>(const DomainEdge&, const DomainEdge&) = default;
};

inline std::vector<DomainEdge> canonical_edges(const EcosystemGraph& g) {
  std::vector<DomainEdge> out;
  for (const TransitionEdge& e : g.edges()) {
    out.push_back({g.node(e.src).domain, g.node(e.dst).domain, e.weight});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ecosysna

#endif  // ECOSYSNA_GRAPH_HPP_
