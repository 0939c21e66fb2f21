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


#ifndef ECOSYSNA_COLLAPSE_HPP_
#define ECOSYSNA_COLLAPSE_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ecosysna/community.hpp"
#include "ecosysna/error.hpp"
#include "ecosysna/graph.hpp"
#include "ecosysna/metrics.hpp"
#include "ecosysna/number_format.hpp"

namespace ecosysna {

struct MatrixEntry {
  std::size_t source = 0;
  std::size_t target = 0;
  double weight = 0.0;

  friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

/// k x k matrix of mean cross-community weights. Row = source community,
/// column = target. The diagonal is never present; an off-diagonal cell is
/// absent exactly when no edge runs from the source to the target community.
class InterCommunityMatrix {
 public:
  InterCommunityMatrix() = default;
  explicit InterCommunityMatrix(std::size_t k, std::vector<std::size_t> sizes = {},
                                std::vector<std::string> labels = {})
      : k_(k), sizes_(std::move(sizes)), labels_(std::move(labels)), cells_(k * k) {
    if (sizes_.empty()) sizes_.assign(k, 1);
    if (sizes_.size() != k) throw ValidationError("community size list does not match k");
    if (!labels_.empty() && labels_.size() != k) throw ValidationError("label list does not match k");
  }

  std::size_t k() const noexcept { return k_; }
  const std::vector<std::size_t>& sizes() const noexcept { return sizes_; }

  std::string label(std::size_t c) const {
    if (c < labels_.size() && !labels_[c].empty()) return labels_[c];
    return "community-" + std::to_string(c);
  }

  std::optional<double> at(std::size_t source, std::size_t target) const {
    check(source, target);
    return cells_[source * k_ + target];
  }

  void set(std::size_t source, std::size_t target, double weight) {
    check(source, target);
    if (source == target) throw ValidationError("diagonal entries are not stored");
    if (!(weight > 0.0)) throw ValidationError("matrix entries must be positive");
    cells_[source * k_ + target] = weight;
  }

  /// Present entries in row-major order.
  std::vector<MatrixEntry> entries() const {
    std::vector<MatrixEntry> out;
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t j = 0; j < k_; ++j) {
        if (const auto& w = cells_[i * k_ + j]) out.push_back({i, j, *w});
      }
    }
    return out;
  }

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= k_ || j >= k_) throw NotFoundError("matrix index out of range");
  }

  std::size_t k_ = 0;
  std::vector<std::size_t> sizes_;
  std::vector<std::string> labels_;
  std::vector<std::optional<double>> cells_;
};

/// W_ij = (sum of edge weights from members of i to members of j) / (n_i n_j)
/// for i != j. The denominator counts every ordered member pair whether or
/// not an edge exists between them.
inline InterCommunityMatrix quotient_mean_weights(const EcosystemGraph& graph, const Partition& partition,
                                                  const CommunityLabels& labels = {}) {
  if (partition.assignment.size() != graph.order()) throw ValidationError("partition does not cover graph");
  const std::size_t k = partition.community_count;
  std::vector<std::string> names(k);
  for (const auto& [c, name] : labels) {
    if (c < k) names[c] = name;
  }
  InterCommunityMatrix matrix(k, partition.sizes(), labels.empty() ? std::vector<std::string>{} : names);

  std::vector<double> sums(k * k, 0.0);
  std::vector<bool> seen(k * k, false);
  for (const TransitionEdge& e : graph.edges()) {
    const std::size_t i = partition.assignment[e.src];
    const std::size_t j = partition.assignment[e.dst];
    if (i == j) continue;
    sums[i * k + j] += e.weight;
    seen[i * k + j] = true;
  }
  const auto& sizes = matrix.sizes();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (seen[i * k + j]) {
        matrix.set(i, j, sums[i * k + j] / (static_cast<double>(sizes[i]) * static_cast<double>(sizes[j])));
      }
    }
  }
  return matrix;
}

struct LinkClassification {
  double threshold = 0.0;
  std::vector<MatrixEntry> strong;
  std::vector<MatrixEntry> weak;
  /// Communities without any outgoing entry.
  std::vector<std::size_t> no_connections;
};

/// Entries at or above `threshold` are strong, the rest weak. Within each
/// list entries are grouped by source community, heaviest first.
inline LinkClassification classify_links(const InterCommunityMatrix& matrix, double threshold) {
  if (!(threshold > 0.0)) throw ConfigError("strong-link threshold must be positive");
  LinkClassification result;
  result.threshold = threshold;
  std::vector<bool> has_out(matrix.k(), false);
  for (const MatrixEntry& e : matrix.entries()) {
    (e.weight >= threshold ? result.strong : result.weak).push_back(e);
    has_out[e.source] = true;
  }
  auto order = [](const MatrixEntry& a, const MatrixEntry& b) {
    if (a.source != b.source) return a.source < b.source;
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.target < b.target;
  };
  std::sort(result.strong.begin(), result.strong.end(), order);
  std::sort(result.weak.begin(), result.weak.end(), order);
  for (std::size_t c = 0; c < matrix.k(); ++c) {
    if (!has_out[c]) result.no_connections.push_back(c);
  }
  return result;
}

struct QuotientGraph {
  /// Node c is `community-<c>`; one edge per present matrix entry.
  EcosystemGraph graph;
  std::vector<std::string> labels;
  /// Percent share per community, empty when unknown.
  std::vector<double> shares;
};

inline QuotientGraph quotient_graph(const InterCommunityMatrix& matrix, std::vector<double> shares = {}) {
  if (!shares.empty() && shares.size() != matrix.k()) throw ValidationError("share list does not match k");
  QuotientGraph q;
  for (std::size_t c = 0; c < matrix.k(); ++c) {
    q.graph.add_node("community-" + std::to_string(c));
    q.labels.push_back(matrix.label(c));
  }
  for (const MatrixEntry& e : matrix.entries()) {
    q.graph.add_edge(e.source, e.target, e.weight);
  }
  q.shares = std::move(shares);
  return q;
}

namespace detail {

inline std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace detail

/// Square CSV: label header row and column, empty cells for absent entries
/// and the diagonal.
inline void write_matrix_csv(std::ostream& out, const InterCommunityMatrix& matrix) {
  out << "From - To";
  for (std::size_t j = 0; j < matrix.k(); ++j) out << ',' << detail::csv_field(matrix.label(j));
  out << '\n';
  for (std::size_t i = 0; i < matrix.k(); ++i) {
    out << detail::csv_field(matrix.label(i));
    for (std::size_t j = 0; j < matrix.k(); ++j) {
      out << ',';
      if (auto w = matrix.at(i, j)) out << to_shortest(*w);
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing matrix CSV");
}

inline nlohmann::ordered_json classification_to_json(const LinkClassification& links,
                                                     const InterCommunityMatrix& matrix) {
  auto entry = [&matrix](const MatrixEntry& e) {
    return nlohmann::ordered_json{{"source", matrix.label(e.source)},
                                  {"source_id", e.source},
                                  {"target", matrix.label(e.target)},
                                  {"target_id", e.target},
                                  {"weight", e.weight}};
  };
  nlohmann::ordered_json j;
  j["threshold"] = links.threshold;
  j["strong"] = nlohmann::ordered_json::array();
  for (const auto& e : links.strong) j["strong"].push_back(entry(e));
  j["weak"] = nlohmann::ordered_json::array();
  for (const auto& e : links.weak) j["weak"].push_back(entry(e));
  j["no_connections"] = nlohmann::ordered_json::array();
  for (std::size_t c : links.no_connections) {
    j["no_connections"].push_back({{"community", matrix.label(c)}, {"id", c}});
  }
  return j;
}

inline nlohmann::ordered_json matrix_to_json(const InterCommunityMatrix& matrix) {
  nlohmann::ordered_json j;
  j["k"] = matrix.k();
  j["labels"] = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < matrix.k(); ++c) j["labels"].push_back(matrix.label(c));
  j["sizes"] = matrix.sizes();
  j["cells"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < matrix.k(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < matrix.k(); ++c) {
      auto w = matrix.at(i, c);
      row.push_back(w ? nlohmann::ordered_json(*w) : nlohmann::ordered_json(nullptr));
    }
    j["cells"].push_back(std::move(row));
  }
  return j;
}

}  // namespace ecosysna

#endif  // ECOSYSNA_COLLAPSE_HPP_
