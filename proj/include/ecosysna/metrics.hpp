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


#ifndef ECOSYSNA_METRICS_HPP_
#define ECOSYSNA_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "ecosysna/community.hpp"
#include "ecosysna/graph.hpp"

namespace ecosysna {

/// Analyst-assigned community names, keyed by community id.
using CommunityLabels = std::map<std::size_t, std::string>;

struct CommunityProfile {
  std::size_t community = 0;
  std::optional<std::string> label;
  std::vector<std::string> members;
  /// Percent of the network under the chosen basis.
  double share = 0.0;
};

enum class ShareBasis { nodes, node_weight };

/// Per-community share of the network, largest first (ties by id). Under the
/// node_weight basis an edgeless graph falls back to node counts.
inline std::vector<CommunityProfile> community_shares(const EcosystemGraph& graph, const Partition& partition,
                                                      ShareBasis basis = ShareBasis::nodes,
                                                      const CommunityLabels& labels = {}) {
  if (partition.assignment.size() != graph.order()) throw ValidationError("partition does not cover graph");
  std::vector<CommunityProfile> profiles(partition.community_count);
  std::vector<double> mass(partition.community_count, 0.0);
  const bool by_weight = basis == ShareBasis::node_weight && graph.total_weight() > 0.0;
  double total = 0.0;
  for (const WebsiteNode& n : graph.nodes()) {
    const std::size_t c = partition.assignment[n.id];
    profiles[c].members.push_back(n.domain);
    const double w = by_weight ? n.node_weight : 1.0;
    mass[c] += w;
    total += w;
  }
  for (std::size_t c = 0; c < profiles.size(); ++c) {
    profiles[c].community = c;
    if (auto it = labels.find(c); it != labels.end()) profiles[c].label = it->second;
    profiles[c].share = total > 0.0 ? 100.0 * mass[c] / total : 0.0;
  }
  std::stable_sort(profiles.begin(), profiles.end(), [](const CommunityProfile& a, const CommunityProfile& b) {
    return a.share > b.share;
  });
  return profiles;
}

enum class CentralityKind { degree_in, degree_out, degree_total, betweenness };

namespace detail {

// Brandes accumulation for one source over a shortest-path DAG found with
// Dijkstra. Lengths within a relative 1e-12 count as equal.
inline void accumulate_betweenness(const EcosystemGraph& g, NodeId source, bool weighted,
                                   std::vector<double>& score) {
  const std::size_t n = g.order();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf), sigma(n, 0.0), delta(n, 0.0);
  std::vector<std::vector<NodeId>> preds(n);
  std::vector<bool> settled(n, false);
  std::vector<NodeId> stack;

  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[source] = 0.0;
  sigma[source] = 1.0;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (settled[u] || d > dist[u]) continue;
    settled[u] = true;
    stack.push_back(u);
    for (const auto& [v, w] : g.successors(u)) {
      if (v == u || settled[v]) continue;
      const double alt = dist[u] + (weighted ? 1.0 / w : 1.0);
      const double tol = 1e-12 * std::max(alt, 1.0);
      if (alt < dist[v] - tol) {
        dist[v] = alt;
        sigma[v] = sigma[u];
        preds[v].assign(1, u);
        queue.emplace(alt, v);
      } else if (std::abs(alt - dist[v]) <= tol) {
        sigma[v] += sigma[u];
        preds[v].push_back(u);
      }
    }
  }
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
    const NodeId w = *it;
    for (NodeId v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
    if (w != source) score[w] += delta[w];
  }
}

}  // namespace detail

/// Degree kinds are normalized by n-1 (when n > 1). Betweenness is the raw
/// directed pair-dependency sum; in weighted mode an edge of weight w has
/// length 1/w.
inline std::map<std::string, double> centrality(const EcosystemGraph& graph, CentralityKind kind,
                                                bool weighted = false) {
  std::map<std::string, double> out;
  const std::size_t n = graph.order();
  if (kind == CentralityKind::betweenness) {
    std::vector<double> score(n, 0.0);
    if (n >= 3) {
      for (NodeId s = 0; s < n; ++s) detail::accumulate_betweenness(graph, s, weighted, score);
    }
    for (const WebsiteNode& v : graph.nodes()) out[v.domain] = score[v.id];
    return out;
  }
  const DegreeMode mode = kind == CentralityKind::degree_in    ? DegreeMode::in
                          : kind == CentralityKind::degree_out ? DegreeMode::out
                                                               : DegreeMode::total;
  const double norm = n > 1 ? static_cast<double>(n - 1) : 1.0;
  for (const WebsiteNode& v : graph.nodes()) out[v.domain] = graph.degree(v.id, mode, weighted) / norm;
  return out;
}

struct DegreeStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

struct CommunitySummary {
  std::size_t communities = 0;
  double modularity = 0.0;
  std::vector<CommunityProfile> profiles;
};

struct NetworkSummary {
  std::size_t order = 0;
  std::size_t size = 0;
  double total_weight = 0.0;
  /// size / (n (n - 1)); 0 below two nodes.
  double density = 0.0;
  /// Unweighted total degree.
  DegreeStats degree;
  /// Weighted total degree.
  DegreeStats strength;
  std::optional<CommunitySummary> community;
};

inline NetworkSummary network_summary(const EcosystemGraph& graph, const Partition* partition = nullptr,
                                      const DetectionConfig& config = {},
                                      const CommunityLabels& labels = {},
                                      ShareBasis basis = ShareBasis::nodes) {
  NetworkSummary s;
  s.order = graph.order();
  s.size = graph.size();
  s.total_weight = graph.total_weight();
  if (s.order > 1) s.density = static_cast<double>(s.size) / (static_cast<double>(s.order) * (s.order - 1));

  auto stats = [&graph](bool weighted) {
    DegreeStats d;
    if (graph.empty()) return d;
    d.min = std::numeric_limits<double>::infinity();
    d.max = -d.min;
    double sum = 0.0;
    for (const WebsiteNode& v : graph.nodes()) {
      const double k = graph.degree(v.id, DegreeMode::total, weighted);
      d.min = std::min(d.min, k);
      d.max = std::max(d.max, k);
      sum += k;
    }
    d.mean = sum / static_cast<double>(graph.order());
    return d;
  };
  s.degree = stats(false);
  s.strength = stats(true);

  if (partition) {
    CommunitySummary cs;
    cs.communities = partition->community_count;
    if (graph.total_weight() > 0.0) cs.modularity = modularity(graph, *partition, config);
    cs.profiles = community_shares(graph, *partition, basis, labels);
    s.community = std::move(cs);
  }
  return s;
}

}  // namespace ecosysna

#endif  // ECOSYSNA_METRICS_HPP_
