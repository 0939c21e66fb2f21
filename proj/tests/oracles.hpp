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


// Test-only reference implementations. None of these call into the code
// paths they are used to check.

#ifndef ECOSYSNA_TESTS_ORACLES_HPP_
#define ECOSYSNA_TESTS_ORACLES_HPP_

#include <cctype>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ecosysna/graph.hpp"

namespace ecosysna::testing {

/// Dense adjacency matrix from the flat edge list.
inline std::vector<std::vector<double>> dense(const EcosystemGraph& g) {
  std::vector<std::vector<double>> a(g.order(), std::vector<double>(g.order(), 0.0));
  for (const auto& e : g.edges()) a[e.src][e.dst] += e.weight;
  return a;
}

/// Straight double loop over every ordered node pair.
inline double naive_modularity(const EcosystemGraph& g, const std::vector<std::size_t>& c, double gamma,
                               bool directed) {
  auto a = dense(g);
  const std::size_t n = a.size();
  if (directed) {
    std::vector<double> kout(n, 0.0), kin(n, 0.0);
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        kout[i] += a[i][j];
        kin[j] += a[i][j];
        m += a[i][j];
      }
    }
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (c[i] == c[j]) q += a[i][j] - gamma * kout[i] * kin[j] / m;
      }
    }
    return q / m;
  }
  std::vector<std::vector<double>> b(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) b[i][j] = a[i][j] + a[j][i];
  }
  std::vector<double> k(n, 0.0);
  double two_m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      k[i] += b[i][j];
      two_m += b[i][j];
    }
  }
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (c[i] == c[j]) q += b[i][j] - gamma * k[i] * k[j] / two_m;
    }
  }
  return q / two_m;
}

/// Degree by scanning the edge list once.
inline double scan_degree(const EcosystemGraph& g, NodeId v, bool in, bool out, bool weighted) {
  double d = 0.0;
  for (const auto& e : g.edges()) {
    if (out && e.src == v) d += weighted ? e.weight : 1.0;
    if (in && e.dst == v) d += weighted ? e.weight : 1.0;
  }
  return d;
}

/// Betweenness by enumerating every simple directed path between every
/// ordered pair and keeping the shortest ones.
inline std::vector<double> enumerate_betweenness(const EcosystemGraph& g, bool weighted) {
  const std::size_t n = g.order();
  std::vector<double> score(n, 0.0);
  if (n < 3) return score;
  auto a = dense(g);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (s == t) continue;
      std::vector<std::pair<double, std::vector<std::size_t>>> paths;
      std::vector<std::size_t> path{s};
      std::vector<bool> on(n, false);
      on[s] = true;
      std::function<void(std::size_t, double)> dfs = [&](std::size_t u, double len) {
        if (u == t) {
          paths.emplace_back(len, path);
          return;
        }
        for (std::size_t v = 0; v < n; ++v) {
          if (a[u][v] <= 0.0 || on[v] || v == u) continue;
          on[v] = true;
          path.push_back(v);
          dfs(v, len + (weighted ? 1.0 / a[u][v] : 1.0));
          path.pop_back();
          on[v] = false;
        }
      };
      dfs(s, 0.0);
      if (paths.empty()) continue;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& p : paths) best = std::min(best, p.first);
      std::vector<double> through(n, 0.0);
      double count = 0.0;
      for (const auto& p : paths) {
        if (std::abs(p.first - best) > 1e-9 * std::max(best, 1.0)) continue;
        count += 1.0;
        for (std::size_t i = 1; i + 1 < p.second.size(); ++i) through[p.second[i]] += 1.0;
      }
      for (std::size_t v = 0; v < n; ++v) score[v] += through[v] / count;
    }
  }
  return score;
}

/// Random directed graph over `n` nodes named n0..; each ordered pair gets
/// an edge with probability p and a weight drawn from [0.5, 5).
inline EcosystemGraph random_graph(std::mt19937_64& rng, std::size_t n, double p, bool integer_weights = false) {
  EcosystemGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_node("n" + std::to_string(i));
  std::bernoulli_distribution edge(p);
  std::uniform_real_distribution<double> weight(0.5, 5.0);
  std::uniform_int_distribution<int> iweight(1, 5);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && edge(rng)) g.add_edge(i, j, integer_weights ? iweight(rng) : weight(rng));
    }
  }
  return g;
}

inline std::vector<std::size_t> random_labels(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::uniform_int_distribution<std::size_t> pick(0, k - 1);
  std::vector<std::size_t> c(n);
  for (auto& x : c) x = pick(rng);
  return c;
}

/// Adds u->v and v->u with unit weight.
inline void add_undirected(EcosystemGraph& g, NodeId u, NodeId v, double w = 1.0) {
  g.add_edge(u, v, w);
  g.add_edge(v, u, w);
}

inline EcosystemGraph named_nodes(std::size_t n) {
  EcosystemGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_node("v" + std::to_string(i));
  return g;
}

/// Two cliques of size `k` (both directions) joined by one bridge pair.
inline EcosystemGraph barbell(std::size_t k, bool bridge = true) {
  EcosystemGraph g = named_nodes(2 * k);
  for (std::size_t side = 0; side < 2; ++side) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) add_undirected(g, side * k + i, side * k + j);
    }
  }
  if (bridge) add_undirected(g, k - 1, k);
  return g;
}

struct NamedGraph {
  std::string name;
  EcosystemGraph graph;
};

/// Structured graphs of order <= 8: cliques, paths, stars, cycles, barbells
/// and a few weighted or one-way variants.
inline std::vector<NamedGraph> small_graph_suite() {
  std::vector<NamedGraph> suite;
  auto add = [&](std::string name, EcosystemGraph g) { suite.push_back({std::move(name), std::move(g)}); };
  for (std::size_t n = 2; n <= 8; ++n) {
    const std::string s = std::to_string(n);
    EcosystemGraph clique = named_nodes(n), path = named_nodes(n), one_way = named_nodes(n);
    EcosystemGraph star = named_nodes(n), out_star = named_nodes(n), in_star = named_nodes(n);
    EcosystemGraph cycle = named_nodes(n), ring = named_nodes(n), weighted = named_nodes(n);
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = i + 1; j < n; ++j) add_undirected(clique, i, j);
    }
    for (NodeId i = 0; i + 1 < n; ++i) {
      add_undirected(path, i, i + 1);
      one_way.add_edge(i, i + 1, 1.0);
      add_undirected(weighted, i, i + 1, 1.0 + static_cast<double>(i % 3));
    }
    for (NodeId i = 1; i < n; ++i) {
      add_undirected(star, 0, i);
      out_star.add_edge(0, i, 1.0);
      in_star.add_edge(i, 0, 1.0);
    }
    for (NodeId i = 0; i < n; ++i) {
      cycle.add_edge(i, (i + 1) % n, 1.0);
      if (n > 2) add_undirected(ring, i, (i + 1) % n);
    }
    add("clique-" + s, std::move(clique));
    add("path-" + s, std::move(path));
    add("one-way-path-" + s, std::move(one_way));
    add("weighted-path-" + s, std::move(weighted));
    add("star-" + s, std::move(star));
    add("out-star-" + s, std::move(out_star));
    add("in-star-" + s, std::move(in_star));
    add("directed-cycle-" + s, std::move(cycle));
    if (n > 2) add("ring-" + s, std::move(ring));
  }
  add("barbell-3", barbell(3));
  add("barbell-4", barbell(4));
  add("two-triangles", barbell(3, false));
  add("two-4-cliques", barbell(4, false));
  EcosystemGraph heavy = barbell(4);
  heavy.add_edge(3, 4, 2.0);
  add("barbell-4-heavy-bridge", std::move(heavy));
  EcosystemGraph tailed = barbell(3);
  tailed.add_node("v6");
  tailed.add_node("v7");
  add_undirected(tailed, 5, 6);
  add_undirected(tailed, 6, 7);
  add("barbell-3-with-tail", std::move(tailed));
  return suite;
}

// Minimal XML reader: checks well-formedness (balanced tags, quoted
// attributes, known entities) and collects elements with their attributes.
struct XmlElement {
  std::string name;
  std::map<std::string, std::string> attrs;
  std::vector<std::string> path;
};

inline std::vector<XmlElement> parse_xml(const std::string& text) {
  std::vector<XmlElement> elements;
  std::vector<std::string> stack;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) { throw std::runtime_error("xml: " + why + " at " + std::to_string(i)); };
  auto check_entities = [&](const std::string& s) {
    for (std::size_t p = s.find('&'); p != std::string::npos; p = s.find('&', p + 1)) {
      const auto semi = s.find(';', p);
      if (semi == std::string::npos) fail("bad entity");
      const std::string ent = s.substr(p + 1, semi - p - 1);
      if (ent != "amp" && ent != "lt" && ent != "gt" && ent != "quot" && ent != "apos") fail("unknown entity");
    }
    if (s.find('<') != std::string::npos) fail("raw '<' in text");
  };
  bool root_closed = false;
  while (i < text.size()) {
    if (text[i] != '<') {
      const auto next = text.find('<', i);
      std::string chunk = text.substr(i, next == std::string::npos ? std::string::npos : next - i);
      check_entities(chunk);
      bool blank = true;
      for (char ch : chunk) blank &= std::isspace(static_cast<unsigned char>(ch)) != 0;
      if (stack.empty() && !blank) fail("text outside root");
      i = next == std::string::npos ? text.size() : next;
      continue;
    }
    if (text.compare(i, 5, "<?xml") == 0) {
      if (i != 0) fail("misplaced declaration");
      const auto end = text.find("?>", i);
      if (end == std::string::npos) fail("unterminated declaration");
      i = end + 2;
      continue;
    }
    const auto end = text.find('>', i);
    if (end == std::string::npos) fail("unterminated tag");
    std::string tag = text.substr(i + 1, end - i - 1);
    i = end + 1;
    if (!tag.empty() && tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) fail("mismatched close " + tag);
      stack.pop_back();
      if (stack.empty()) root_closed = true;
      continue;
    }
    const bool self_closing = !tag.empty() && tag.back() == '/';
    if (self_closing) tag.pop_back();
    if (root_closed) fail("second root");
    XmlElement el;
    std::size_t p = 0;
    while (p < tag.size() && !std::isspace(static_cast<unsigned char>(tag[p]))) el.name += tag[p++];
    if (el.name.empty()) fail("empty tag name");
    while (true) {
      while (p < tag.size() && std::isspace(static_cast<unsigned char>(tag[p]))) ++p;
      if (p >= tag.size()) break;
      std::string key;
      while (p < tag.size() && tag[p] != '=' && !std::isspace(static_cast<unsigned char>(tag[p]))) key += tag[p++];
      if (p >= tag.size() || tag[p] != '=') fail("attribute without value");
      ++p;
      if (p >= tag.size() || tag[p] != '"') fail("unquoted attribute");
      const auto close = tag.find('"', p + 1);
      if (close == std::string::npos) fail("unterminated attribute");
      std::string value = tag.substr(p + 1, close - p - 1);
      check_entities(value);
      if (el.attrs.contains(key)) fail("duplicate attribute");
      el.attrs[key] = value;
      p = close + 1;
    }
    el.path = stack;
    elements.push_back(el);
    if (!self_closing) stack.push_back(el.name);
    else if (stack.empty()) root_closed = true;
  }
  if (!stack.empty()) throw std::runtime_error("xml: unclosed " + stack.back());
  if (!root_closed) throw std::runtime_error("xml: no root element");
  return elements;
}

// Minimal Graphviz DOT reader for the subset `digraph [id] { stmt* }` with
// node and edge statements and attribute lists.
struct DotGraph {
  std::vector<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::map<std::string, std::string>> edge_attrs;
};

inline DotGraph parse_dot(const std::string& text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '"') {
      std::string tok = "\"";
      ++i;
      while (i < text.size() && text[i] != '"') {
        if (text[i] == '\\' && i + 1 < text.size()) tok += text[i++];
        tok += text[i++];
      }
      if (i >= text.size()) throw std::runtime_error("dot: unterminated string");
      ++i;
      tokens.push_back(tok + "\"");
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      tokens.emplace_back("->");
      i += 2;
    } else if (std::string("{}[];,=").find(c) != std::string::npos) {
      tokens.emplace_back(1, c);
      ++i;
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-') {
      std::string tok;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' ||
                                 text[i] == '.' || text[i] == '-')) {
        tok += text[i++];
      }
      tokens.push_back(tok);
    } else {
      throw std::runtime_error(std::string("dot: unexpected character '") + c + "'");
    }
  }
  std::size_t p = 0;
  auto peek = [&]() -> const std::string& {
    static const std::string eof;
    return p < tokens.size() ? tokens[p] : eof;
  };
  auto expect = [&](const std::string& t) {
    if (peek() != t) throw std::runtime_error("dot: expected '" + t + "' got '" + peek() + "'");
    ++p;
  };
  auto is_id = [](const std::string& t) {
    return !t.empty() && (t.front() == '"' || std::isalnum(static_cast<unsigned char>(t.front())) ||
                          t.front() == '_' || t.front() == '.' || t.front() == '-') && t != "->";
  };
  auto id = [&]() {
    if (!is_id(peek())) throw std::runtime_error("dot: expected id, got '" + peek() + "'");
    std::string t = tokens[p++];
    if (t.front() == '"') t = t.substr(1, t.size() - 2);
    return t;
  };
  auto attr_list = [&]() {
    std::map<std::string, std::string> attrs;
    if (peek() != "[") return attrs;
    ++p;
    while (peek() != "]") {
      std::string key = id();
      expect("=");
      attrs[key] = id();
      if (peek() == "," || peek() == ";") ++p;
    }
    expect("]");
    return attrs;
  };

  DotGraph g;
  expect("digraph");
  if (peek() != "{") id();
  expect("{");
  while (peek() != "}") {
    if (p >= tokens.size()) throw std::runtime_error("dot: unterminated graph body");
    std::string a = id();
    if (peek() == "->") {
      ++p;
      std::string b = id();
      g.edges.emplace_back(a, b);
      g.edge_attrs.push_back(attr_list());
    } else {
      attr_list();
      g.nodes.push_back(a);
    }
    if (peek() == ";") ++p;
  }
  expect("}");
  if (p != tokens.size()) throw std::runtime_error("dot: trailing tokens");
  return g;
}

}  // namespace ecosysna::testing

#endif  // ECOSYSNA_TESTS_ORACLES_HPP_
