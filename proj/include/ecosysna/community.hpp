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


#ifndef ECOSYSNA_COMMUNITY_HPP_
#define ECOSYSNA_COMMUNITY_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ecosysna/error.hpp"
#include "ecosysna/graph.hpp"

namespace ecosysna {

struct DetectionConfig {
  double resolution = 1.0;
  std::size_t max_passes = 100;
  /// Directed (Leicht-Newman) modularity; false symmetrizes the graph.
  bool directed_modularity = true;
  std::uint64_t seed = 0;
  /// Visit nodes in a seeded random order instead of ascending id.
  bool shuffle_order = false;
  /// Sweep orders tried; the first is ascending id (or the seeded shuffle),
  /// the rest are shuffles seeded from `seed`. Best Q wins, earliest on ties.
  std::size_t restarts = 8;

  void validate() const {
    if (!(resolution > 0.0) || !std::isfinite(resolution)) throw ConfigError("resolution must be positive");
    if (max_passes == 0) throw ConfigError("max_passes must be positive");
    if (restarts == 0) throw ConfigError("restarts must be positive");
  }
};

/// Community ids renumbered 0..k-1 in order of each community's smallest
/// member node id.
inline std::vector<std::size_t> canonicalize(std::span<const std::size_t> assignment) {
  std::map<std::size_t, std::size_t> relabel;
  std::vector<std::size_t> out(assignment.size());
  for (std::size_t v = 0; v < assignment.size(); ++v) {
    auto [it, _] = relabel.try_emplace(assignment[v], relabel.size());
    out[v] = it->second;
  }
  return out;
}

struct Partition {
  /// Node id -> community id, canonical.
  std::vector<std::size_t> assignment;
  std::size_t community_count = 0;
  double modularity = 0.0;
  /// Set when detection hit max_passes before converging.
  bool truncated = false;
  /// Modularity after each detection pass.
  std::vector<double> pass_modularity;

  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> s(community_count, 0);
    for (std::size_t c : assignment) ++s[c];
    return s;
  }

  std::vector<NodeId> members(std::size_t community) const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < assignment.size(); ++v) {
      if (assignment[v] == community) out.push_back(v);
    }
    return out;
  }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.assignment == b.assignment;
  }
};

namespace detail {

inline void check_assignment(const EcosystemGraph& graph, std::span<const std::size_t> assignment) {
  if (assignment.size() != graph.order()) {
    throw ValidationError("partition covers " + std::to_string(assignment.size()) + " nodes, graph has " +
                          std::to_string(graph.order()));
  }
}

}  // namespace detail

/// Q of `assignment` on `graph`. Directed form:
///   Q = 1/m * sum_ij [A_ij - g * kout_i * kin_j / m] * delta(c_i, c_j)
/// Undirected form uses A + A^T, k = kin + kout and 2m normalization.
inline double modularity(const EcosystemGraph& graph, std::span<const std::size_t> assignment,
                         const DetectionConfig& config = {}) {
  detail::check_assignment(graph, assignment);
  const double m = graph.total_weight();
  if (graph.empty() || !(m > 0.0)) throw UndefinedModularityError("modularity undefined: graph has no weight");

  const std::size_t k = assignment.empty() ? 0 : *std::max_element(assignment.begin(), assignment.end()) + 1;
  std::vector<double> internal(k, 0.0), kout(k, 0.0), kin(k, 0.0);
  for (const TransitionEdge& e : graph.edges()) {
    const std::size_t cs = assignment[e.src];
    const std::size_t cd = assignment[e.dst];
    kout[cs] += e.weight;
    kin[cd] += e.weight;
    if (cs == cd) internal[cs] += e.weight;
  }
  double q = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    if (config.directed_modularity) {
      q += internal[c] / m - config.resolution * (kout[c] / m) * (kin[c] / m);
    } else {
      const double share = (kout[c] + kin[c]) / (2.0 * m);
      q += internal[c] / m - config.resolution * share * share;
    }
  }
  return q;
}

inline double modularity(const EcosystemGraph& graph, const Partition& partition,
                         const DetectionConfig& config = {}) {
  return modularity(graph, partition.assignment, config);
}

/// Canonical Partition for an arbitrary labelling. Modularity is filled in
/// when defined and left at 0 otherwise.
inline Partition make_partition(const EcosystemGraph& graph, std::span<const std::size_t> assignment,
                                const DetectionConfig& config = {}) {
  detail::check_assignment(graph, assignment);
  Partition p;
  p.assignment = canonicalize(assignment);
  p.community_count =
      p.assignment.empty() ? 0 : *std::max_element(p.assignment.begin(), p.assignment.end()) + 1;
  if (graph.total_weight() > 0.0) p.modularity = modularity(graph, p.assignment, config);
  return p;
}

namespace detail {

/// Compact weighted digraph used between aggregation levels. Self-loop
/// weight is kept apart from the adjacency lists.
struct LevelGraph {
  std::size_t n = 0;
  std::vector<std::vector<std::pair<std::size_t, double>>> out;
  std::vector<std::vector<std::pair<std::size_t, double>>> in;
  std::vector<double> loop;
  std::vector<double> kout;
  std::vector<double> kin;
  double m = 0.0;

  void resize(std::size_t size) {
    n = size;
    out.assign(n, {});
    in.assign(n, {});
    loop.assign(n, 0.0);
    kout.assign(n, 0.0);
    kin.assign(n, 0.0);
  }

  void add(std::size_t u, std::size_t v, double w) {
    if (u == v) {
      loop[u] += w;
    } else {
      out[u].emplace_back(v, w);
      in[v].emplace_back(u, w);
    }
    kout[u] += w;
    kin[v] += w;
    m += w;
  }

  static LevelGraph from(const EcosystemGraph& graph) {
    LevelGraph g;
    g.resize(graph.order());
    for (const TransitionEdge& e : graph.edges()) g.add(e.src, e.dst, e.weight);
    return g;
  }

  /// Collapses nodes sharing a label (labels contiguous 0..k-1).
  LevelGraph aggregate(std::span<const std::size_t> label, std::size_t k) const {
    std::vector<std::map<std::size_t, double>> sums(k);
    std::vector<double> loops(k, 0.0);
    for (std::size_t u = 0; u < n; ++u) {
      loops[label[u]] += loop[u];
      for (const auto& [v, w] : out[u]) {
        if (label[u] == label[v]) {
          loops[label[u]] += w;
        } else {
          sums[label[u]][label[v]] += w;
        }
      }
    }
    LevelGraph g;
    g.resize(k);
    for (std::size_t c = 0; c < k; ++c) {
      if (loops[c] > 0.0) g.add(c, c, loops[c]);
      for (const auto& [d, w] : sums[c]) g.add(c, d, w);
    }
    return g;
  }
};

/// Phase one: repeatedly moves single nodes to the neighbouring community
/// with the largest strict modularity gain until a sweep changes nothing.
/// Returns the number of moves made.
inline std::size_t local_moves(const LevelGraph& g, std::vector<std::size_t>& community,
                               const DetectionConfig& config, std::mt19937_64* rng) {
  const double m = g.m;
  const double eps = 1e-12 * m;
  std::vector<double> tot_out(g.n, 0.0), tot_in(g.n, 0.0);
  for (std::size_t v = 0; v < g.n; ++v) {
    tot_out[community[v]] += g.kout[v];
    tot_in[community[v]] += g.kin[v];
  }

  std::vector<std::size_t> order(g.n);
  std::iota(order.begin(), order.end(), 0);
  if (rng) std::shuffle(order.begin(), order.end(), *rng);

  std::vector<double> link(g.n, 0.0);
  std::vector<std::size_t> touched;
  std::size_t total_moves = 0;

  // Every accepted move raises Q by more than eps, so the sweep count is
  // bounded; the cap only guards against pathological rounding.
  for (std::size_t sweep = 0; sweep < 10000; ++sweep) {
    std::size_t moves = 0;
    for (std::size_t v : order) {
      const std::size_t home = community[v];
      tot_out[home] -= g.kout[v];
      tot_in[home] -= g.kin[v];

      touched.clear();
      auto accumulate = [&](const std::vector<std::pair<std::size_t, double>>& adj) {
        for (const auto& [u, w] : adj) {
          const std::size_t c = community[u];
          if (link[c] == 0.0) touched.push_back(c);
          link[c] += w;
        }
      };
      accumulate(g.out[v]);
      accumulate(g.in[v]);

      auto gain = [&](std::size_t c) {
        double null_term;
        if (config.directed_modularity) {
          null_term = (g.kout[v] * tot_in[c] + g.kin[v] * tot_out[c]) / m;
        } else {
          null_term = (g.kout[v] + g.kin[v]) * (tot_out[c] + tot_in[c]) / (2.0 * m);
        }
        return link[c] - config.resolution * null_term;
      };

      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      std::size_t best = home;
      double best_gain = gain(home);
      for (std::size_t c : touched) {
        if (c == home) continue;
        const double candidate = gain(c);
        if (candidate > best_gain + eps) {
          best = c;
          best_gain = candidate;
        }
      }
      for (std::size_t c : touched) link[c] = 0.0;

      tot_out[best] += g.kout[v];
      tot_in[best] += g.kin[v];
      if (best != home) {
        community[v] = best;
        ++moves;
      }
    }
    total_moves += moves;
    if (moves == 0) break;
  }
  return total_moves;
}

/// Renumbers labels to 0..k-1 in place and returns k.
inline std::size_t compact(std::vector<std::size_t>& labels) {
  labels = canonicalize(labels);
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

}  // namespace detail

namespace detail {

inline Partition louvain_run(const EcosystemGraph& graph, const LevelGraph& finest, const DetectionConfig& config,
                             std::mt19937_64* rng) {
  std::vector<std::size_t> assignment(graph.order());
  std::iota(assignment.begin(), assignment.end(), 0);

  LevelGraph level = finest;
  bool at_finest = true;
  Partition result;

  std::size_t passes = 0;
  while (true) {
    if (passes == config.max_passes) {
      result.truncated = true;
      break;
    }
    ++passes;

    std::vector<std::size_t> community(level.n);
    std::iota(community.begin(), community.end(), 0);
    std::size_t moved = local_moves(level, community, config, rng);
    for (std::size_t& c : assignment) c = community[c];
    std::size_t k = compact(assignment);

    if (moved == 0 && !at_finest) {
      // Level is stable; refine on the input graph before declaring victory.
      moved = local_moves(finest, assignment, config, rng);
      k = compact(assignment);
      result.pass_modularity.push_back(modularity(graph, assignment, config));
      if (moved == 0) break;
      level = finest.aggregate(assignment, k);
      at_finest = false;
      continue;
    }
    result.pass_modularity.push_back(modularity(graph, assignment, config));
    if (moved == 0) break;
    level = finest.aggregate(assignment, k);
    at_finest = false;
  }

  result.assignment = canonicalize(assignment);
  result.community_count =
      result.assignment.empty() ? 0 : *std::max_element(result.assignment.begin(), result.assignment.end()) + 1;
  result.modularity = modularity(graph, result.assignment, config);
  return result;
}

}  // namespace detail

/// Two-phase agglomerative modularity maximization. Each pass runs local
/// node moves on the current level and then collapses the communities into
/// super-nodes. When a level stops changing, the node-level partition is
/// swept once more so the result is also a local optimum for single-node
/// moves on the input graph.
inline Partition detect_louvain(const EcosystemGraph& graph, const DetectionConfig& config = {}) {
  config.validate();
  if (graph.size() == 0 || !(graph.total_weight() > 0.0)) {
    throw UndefinedModularityError("community detection needs at least one edge");
  }
  const detail::LevelGraph finest = detail::LevelGraph::from(graph);

  std::mt19937_64 engine(config.seed);
  Partition best = detail::louvain_run(graph, finest, config, config.shuffle_order ? &engine : nullptr);
  const double eps = 1e-12;
  for (std::size_t r = 1; r < config.restarts; ++r) {
    std::mt19937_64 restart_engine(config.seed + r);
    Partition candidate = detail::louvain_run(graph, finest, config, &restart_engine);
    if (candidate.modularity > best.modularity + eps) best = std::move(candidate);
  }
  return best;
}

/// Super-node graph: one node `community-<c>` per community, edge weights
/// summed, intra-community weight kept as self-loops.
inline EcosystemGraph aggregate_by_partition(const EcosystemGraph& graph, const Partition& partition) {
  detail::check_assignment(graph, partition.assignment);
  EcosystemGraph out;
  for (std::size_t c = 0; c < partition.community_count; ++c) out.add_node("community-" + std::to_string(c));
  std::vector<std::map<std::size_t, double>> sums(partition.community_count);
  for (const TransitionEdge& e : graph.edges()) {
    sums[partition.assignment[e.src]][partition.assignment[e.dst]] += e.weight;
  }
  for (std::size_t c = 0; c < sums.size(); ++c) {
    for (const auto& [d, w] : sums[c]) out.add_edge(c, d, w);
  }
  return out;
}

/// Exhaustive maximization over every set partition (restricted growth
/// strings in lexicographic order; the first maximum wins ties). Limited to
/// ten nodes.
inline Partition brute_force_best_partition(const EcosystemGraph& graph, const DetectionConfig& config = {}) {
  config.validate();
  constexpr std::size_t kMaxOrder = 10;
  if (graph.order() > kMaxOrder) {
    throw SizeLimitError("brute force limited to " + std::to_string(kMaxOrder) + " nodes, graph has " +
                         std::to_string(graph.order()));
  }
  if (graph.empty() || !(graph.total_weight() > 0.0)) {
    throw UndefinedModularityError("modularity undefined: graph has no weight");
  }
  const std::size_t n = graph.order();
  const double eps = 1e-12;
  std::vector<std::size_t> rgs(n, 0), prefix_max(n, 0);
  std::vector<std::size_t> best = rgs;
  double best_q = modularity(graph, rgs, config);

  while (true) {
    // Advance to the next restricted growth string.
    std::size_t i = n - 1;
    while (i > 0 && rgs[i] > prefix_max[i - 1]) --i;
    if (i == 0) break;
    ++rgs[i];
    for (std::size_t j = i; j < n; ++j) {
      if (j > i) rgs[j] = 0;
      prefix_max[j] = std::max(j == 0 ? 0 : prefix_max[j - 1], rgs[j]);
    }
    const double q = modularity(graph, rgs, config);
    if (q > best_q + eps) {
      best_q = q;
      best = rgs;
    }
  }
  Partition p = make_partition(graph, best, config);
  return p;
}

/// NMI = 2 I(a;b) / (H(a) + H(b)); 1 when both labellings are trivial.
inline double normalized_mutual_information(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  if (a.size() != b.size()) throw ValidationError("labellings differ in length");
  if (a.empty()) return 1.0;
  const double n = static_cast<double>(a.size());
  std::map<std::size_t, double> ca, cb;
  std::map<std::pair<std::size_t, std::size_t>, double> joint;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ca[a[i]] += 1.0;
    cb[b[i]] += 1.0;
    joint[{a[i], b[i]}] += 1.0;
  }
  auto entropy = [n](const std::map<std::size_t, double>& counts) {
    double h = 0.0;
    for (const auto& [_, c] : counts) h -= (c / n) * std::log(c / n);
    return h;
  };
  const double ha = entropy(ca);
  const double hb = entropy(cb);
  if (ha + hb == 0.0) return 1.0;
  double mi = 0.0;
  for (const auto& [key, c] : joint) {
    mi += (c / n) * std::log((c * n) / (ca[key.first] * cb[key.second]));
  }
  return 2.0 * mi / (ha + hb);
}

}  // namespace ecosysna

#endif  // ECOSYSNA_COMMUNITY_HPP_
