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


// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ecosysna.hpp"
#include "oracles.hpp"
#include "reference_cases.hpp"

namespace {

using namespace ecosysna;
using namespace ecosysna::testing;
namespace fs = std::filesystem;

const fs::path kBundled = ECOSYSNA_BUNDLED_DATA;
const fs::path kGolden = fs::path(ECOSYSNA_TEST_DATA) / "golden";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  return {std::istreambuf_iterator<char>(in), {}};
}

// A check either returns an empty string (pass) or the first failure.
struct Criterion {
  int number;
  std::string name;
  double time_limit;  // seconds, 0 = none
  std::function<std::string()> check;
};

std::string modularity_oracle() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<std::size_t> order(2, 50);
  std::uniform_real_distribution<double> density(0.02, 0.5);
  int checked = 0;
  while (checked < 200) {
    const EcosystemGraph g = random_graph(rng, order(rng), density(rng));
    if (g.size() == 0) continue;
    const auto labels = random_labels(rng, g.order(), 1 + checked % 8);
    for (bool directed : {true, false}) {
      DetectionConfig c;
      c.directed_modularity = directed;
      c.resolution = checked % 3 == 0 ? 1.0 : 0.5 + 0.01 * checked;
      const double got = modularity(g, labels, c);
      const double want = naive_modularity(g, labels, c.resolution, directed);
      if (std::abs(got - want) > 1e-12) {
        return "graph " + std::to_string(checked) + ": " + to_shortest(got) + " vs " + to_shortest(want);
      }
    }
    ++checked;
  }
  return {};
}

std::string louvain_vs_exhaustive() {
  std::size_t graphs = 0;
  for (const auto& [name, g] : small_graph_suite()) {
    for (bool directed : {true, false}) {
      DetectionConfig c;
      c.directed_modularity = directed;
      const double best = brute_force_best_partition(g, c).modularity;
      const double found = detect_louvain(g, c).modularity;
      const bool ok = best >= 0.0 ? found >= 0.9 * best - 1e-12 : found >= best - 1e-12;
      if (!ok) return name + (directed ? " (directed)" : " (undirected)") + ": " + to_shortest(found) + " < 0.9 x " +
                      to_shortest(best);
      ++graphs;
    }
  }
  for (std::size_t k : {3u, 4u}) {
    const EcosystemGraph g = barbell(k);
    if (detect_louvain(g).assignment != brute_force_best_partition(g).assignment) {
      return "barbell of " + std::to_string(k) + "-cliques differs from the exhaustive optimum";
    }
  }
  return graphs > 0 ? "" : "empty suite";
}

std::string planted_recovery() {
  std::mt19937_64 rng(3003);
  std::bernoulli_distribution intra(0.9), inter(0.05);
  int good = 0;
  double worst = 1.0;
  for (int run = 0; run < 100; ++run) {
    EcosystemGraph g = named_nodes(60);
    std::vector<std::size_t> planted(60);
    for (std::size_t v = 0; v < 60; ++v) planted[v] = v / 15;
    for (NodeId i = 0; i < 60; ++i) {
      for (NodeId j = 0; j < 60; ++j) {
        if (i != j && (planted[i] == planted[j] ? intra(rng) : inter(rng))) g.add_edge(i, j, 1.0);
      }
    }
    const double nmi = normalized_mutual_information(detect_louvain(g).assignment, planted);
    worst = std::min(worst, nmi);
    if (nmi >= 0.95) ++good;
  }
  if (good < 95) return std::to_string(good) + "/100 runs reached NMI 0.95 (worst " + to_shortest(worst) + ")";
  return {};
}

std::string quotient_formula() {
  const auto cases = quotient_cases();
  if (cases.size() != 10) return "expected 10 hand cases";
  for (const auto& c : cases) {
    const InterCommunityMatrix m = quotient_mean_weights(c.graph, make_partition(c.graph, c.assignment));
    std::vector<MatrixEntry> want;
    for (const auto& [i, j, w] : c.cells) want.push_back({i, j, w});
    if (m.entries() != want) return "hand case " + c.name;
  }
  std::mt19937_64 rng(4004);
  for (int trial = 0; trial < 200; ++trial) {
    const EcosystemGraph g = random_graph(rng, 2 + trial % 40, 0.15);
    const Partition p = make_partition(g, random_labels(rng, g.order(), 1 + trial % 9));
    const InterCommunityMatrix m = quotient_mean_weights(g, p);
    std::vector<double> cross(p.community_count * p.community_count, 0.0);
    for (const auto& e : g.edges()) cross[p.assignment[e.src] * p.community_count + p.assignment[e.dst]] += e.weight;
    const auto sizes = p.sizes();
    for (std::size_t i = 0; i < p.community_count; ++i) {
      for (std::size_t j = 0; j < p.community_count; ++j) {
        const double sum = cross[i * p.community_count + j];
        const auto w = m.at(i, j);
        if (i == j || sum == 0.0) {
          if (w) return "unexpected cell in fuzz " + std::to_string(trial);
          continue;
        }
        if (!w || std::abs(*w * sizes[i] * sizes[j] - sum) > 1e-9 * sum) {
          return "reconstruction fails in fuzz " + std::to_string(trial);
        }
      }
    }
  }
  return {};
}

std::string reference_classification() {
  const InterCommunityMatrix m = tourism_matrix();
  const LinkClassification links = classify_links(m, 10.0);
  std::multiset<double> strong, weak;
  for (const auto& e : links.strong) strong.insert(e.weight);
  for (const auto& e : links.weak) weak.insert(e.weight);
  if (strong != std::multiset<double>{45.1, 34.7, 30.2, 25.6, 15.2, 11.6}) return "strong set differs";
  if (weak != std::multiset<double>{4.8, 4.2, 2.4, 1.5, 1.2, 1.2}) return "weak set differs";
  std::vector<std::string> none;
  for (std::size_t c : links.no_connections) none.push_back(m.label(c));
  if (none != std::vector<std::string>{"Online Taxi Services", "Food and Cooking"}) return "no-connection rows differ";
  return {};
}

std::string reference_quotient_shape() {
  const QuotientGraph q = quotient_graph(tourism_matrix());
  if (q.graph.order() != 8 || q.graph.size() != 12) {
    return std::to_string(q.graph.order()) + " nodes, " + std::to_string(q.graph.size()) + " edges";
  }
  return {};
}

std::set<std::string> discovered(const Dataset& d) {
  std::set<std::string> out;
  for (const auto& w : d.trace.waves) out.insert(w.domains.begin(), w.domains.end());
  return out;
}

std::string sampler_golden() {
  std::ifstream seeds_in(kBundled / "seeds.txt");
  const auto seeds = load_seeds(seeds_in);
  std::ifstream fixture_in(kBundled / "tourism_fixture.json");
  const SamplingFixture fixture = load_fixture(fixture_in);

  SamplingConfig config;  // threshold 50, six waves, top five
  const Dataset d = build_dataset(seeds, fixture, config);
  if (trace_to_json(d.trace).dump(2) + "\n" != slurp(kGolden / "trace.json")) return "trace differs from golden";
  std::ostringstream csv;
  write_graph_csv(csv, d.graph);
  if (csv.str() != slurp(kGolden / "raw.csv")) return "transition CSV differs from golden";

  SamplingConfig strict = config;
  strict.similarity_threshold = 80;
  const auto loose = discovered(d);
  const auto tight = discovered(build_dataset(seeds, fixture, strict));
  for (const auto& s : tight) {
    if (!loose.contains(s)) return "threshold 80 discovered " + s;
  }
  for (unsigned cap = 0; cap <= 6; ++cap) {
    SamplingConfig c = config;
    c.max_waves = cap;
    for (const auto& w : build_dataset(seeds, fixture, c).trace.waves) {
      if (w.index > cap) return "wave " + std::to_string(w.index) + " exceeds cap " + std::to_string(cap);
    }
  }
  return {};
}

std::string conservation() {
  std::mt19937_64 rng(8008);
  for (int trial = 0; trial < 100; ++trial) {
    const EcosystemGraph g = random_graph(rng, 3 + trial % 40, 0.2);
    if (g.size() == 0) continue;
    const Partition p = make_partition(g, random_labels(rng, g.order(), 1 + trial % 10));
    const EcosystemGraph a = aggregate_by_partition(g, p);
    if (std::abs(a.total_weight() - g.total_weight()) > 1e-9 * g.total_weight()) {
      return "aggregate loses weight in fuzz " + std::to_string(trial);
    }
    auto no_growth = [&g](const EcosystemGraph& h) {
      return h.order() <= g.order() && h.size() <= g.size() && h.total_weight() <= g.total_weight() + 1e-9;
    };
    std::bernoulli_distribution coin(0.6);
    std::vector<bool> keep(g.order());
    for (std::size_t v = 0; v < keep.size(); ++v) keep[v] = coin(rng);
    if (!no_growth(g.induced_subgraph([&](const WebsiteNode& n) { return keep[n.id]; }))) {
      return "induced subgraph grew in fuzz " + std::to_string(trial);
    }
    RelevanceFilter filter;
    for (const auto& n : g.nodes()) {
      if (coin(rng)) filter.domains.insert(n.domain);
    }
    filter.drop_isolated = trial % 2 == 0;
    for (FilterMode mode : {FilterMode::blocklist, FilterMode::allowlist}) {
      filter.mode = mode;
      if (mode == FilterMode::allowlist && filter.domains.empty()) continue;
      if (!no_growth(apply_filter(g, filter).graph)) return "filter grew in fuzz " + std::to_string(trial);
    }
  }
  return {};
}

std::string pipeline_golden() {
  const fs::path out = fs::temp_directory_path() / "ecosysna-acceptance";
  fs::remove_all(out);
  PipelineOptions opt;
  opt.seeds = kBundled / "seeds.txt";
  opt.fixture = kBundled / "tourism_fixture.json";
  opt.filter = kBundled / "blocklist.txt";
  opt.labels = kBundled / "labels.txt";
  opt.strong_threshold = 0.2;
  opt.out = out;
  std::ostringstream sink, err;
  if (int code = cmd_pipeline(opt, Console{sink, err, false}); code != kExitOk) {
    return "exit " + std::to_string(code) + ": " + err.str();
  }
  std::string failure;
  if (slurp(out / "report.json") != slurp(kGolden / "report.json")) failure = "report differs from golden";
  try {
    const auto xml = parse_xml(slurp(out / "graph.gexf"));
    std::size_t nodes = 0, edges = 0;
    for (const auto& e : xml) {
      nodes += e.name == "node";
      edges += e.name == "edge";
    }
    const DotGraph dot = parse_dot(slurp(out / "quotient.dot"));
    std::ifstream graph_in(out / "graph.csv");
    const EcosystemGraph g = build_graph(parse_transitions(graph_in, TransitionFormat::csv).records).graph;
    if (failure.empty() && (nodes != g.order() || edges != g.size())) failure = "GEXF counts differ from graph";
    if (failure.empty() && (dot.nodes.size() != 8 || dot.edges.size() != 12)) failure = "DOT counts unexpected";
  } catch (const std::exception& e) {
    failure = e.what();
  }
  fs::remove_all(out);
  return failure;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "modularity matches naive reference (200 graphs, 1e-12)", 10.0, modularity_oracle},
      {2, "louvain >= 0.9 x exhaustive on small suite, barbells exact", 30.0, louvain_vs_exhaustive},
      {3, "planted partitions recovered (NMI >= 0.95 in >= 95/100)", 60.0, planted_recovery},
      {4, "mean-weight quotient hand cases and reconstruction identity", 0.0, quotient_formula},
      {5, "reference weights split 6 strong / 6 weak, two no-connection rows", 0.0, reference_classification},
      {6, "reference matrix gives 8-node 12-edge quotient graph", 0.0, reference_quotient_shape},
      {7, "sampler golden trace, threshold subset, wave cap", 0.0, sampler_golden},
      {8, "aggregation conserves weight; subgraph and filter never grow", 0.0, conservation},
      {9, "pipeline golden report; GEXF and DOT validate", 10.0, pipeline_golden},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string failure;
    try {
      failure = c.check();
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (failure.empty() && c.time_limit > 0.0 && seconds >= c.time_limit) {
      failure = "took " + to_fixed(seconds, 2) + " s, limit " + to_fixed(c.time_limit, 0) + " s";
    }
    failed += !failure.empty();
    std::cout << (failure.empty() ? "PASS" : "FAIL") << "  criterion " << c.number << ": " << c.name << " ("
              << to_fixed(seconds, 2) << " s)";
    if (!failure.empty()) std::cout << " -- " << failure;
    std::cout << '\n';
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
