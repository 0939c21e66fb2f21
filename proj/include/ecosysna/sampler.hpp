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


#ifndef ECOSYSNA_SAMPLER_HPP_
#define ECOSYSNA_SAMPLER_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ecosysna/error.hpp"
#include "ecosysna/graph.hpp"
#include "ecosysna/ingest.hpp"

namespace ecosysna {

struct SamplingConfig {
  /// Similar sites scoring below this are discarded; a score equal to the
  /// threshold is kept.
  double similarity_threshold = 50.0;
  unsigned max_waves = 6;
  std::size_t top_k_similar = 5;
  std::size_t top_k_referral = 5;

  void validate() const {
    if (!(similarity_threshold >= 0.0 && similarity_threshold <= 100.0)) {
      throw ConfigError("similarity threshold must lie in [0, 100]");
    }
    if (top_k_similar == 0 || top_k_referral == 0) throw ConfigError("top-k limits must be positive");
  }
};

enum class Termination { max_waves, frontier_empty, all_repeats };

inline std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::max_waves: return "max_waves";
    case Termination::frontier_empty: return "frontier_empty";
    case Termination::all_repeats: return "all_repeats";
  }
  return "unknown";
}

struct Wave {
  unsigned index = 0;
  /// Newly discovered domains, sorted.
  std::vector<std::string> domains;
};

/// One expansion attempt: how many sites the frontier held, how many passed
/// the threshold, and how many of those were new.
struct FrontierStep {
  unsigned wave = 0;
  std::size_t frontier = 0;
  std::size_t candidates = 0;
  std::size_t discovered = 0;
};

struct SamplingTrace {
  std::vector<Wave> waves;
  std::vector<FrontierStep> frontier_history;
  Termination termination = Termination::frontier_empty;
  /// Index of the wave that could not be formed, or max_waves when capped.
  unsigned termination_wave = 0;
  std::vector<std::string> warnings;
};

struct Expansion {
  /// Discovered domain -> wave, seeds at 0.
  std::map<std::string, unsigned> wave_of;
  SamplingTrace trace;

  /// Domains in wave order, then lexicographic.
  std::vector<std::string> ordered() const {
    std::vector<std::string> out;
    for (const Wave& w : trace.waves) out.insert(out.end(), w.domains.begin(), w.domains.end());
    return out;
  }
};

/// Snowball expansion over similarity lists. Wave t+1 holds every site that
/// a wave-t site lists as similar (score >= threshold, first top_k entries)
/// and that no earlier wave discovered.
inline Expansion expand_similar(std::span<const std::string> seeds, const SiteProvider& provider,
                                const SamplingConfig& config) {
  config.validate();
  if (seeds.empty()) throw ConfigError("seed set is empty");

  Expansion result;
  std::set<std::string> frontier;
  for (const std::string& raw : seeds) {
    std::string seed = normalize_domain(raw);
    if (result.wave_of.emplace(seed, 0).second) frontier.insert(seed);
  }
  result.trace.waves.push_back({0, {frontier.begin(), frontier.end()}});
  for (const std::string& seed : frontier) {
    if (!provider.site(seed)) result.trace.warnings.push_back("seed '" + seed + "' unknown to provider");
  }

  for (unsigned t = 0;; ++t) {
    std::set<std::string> candidates;
    for (const std::string& site : frontier) {
      const SiteEntry* entry = provider.site(site);
      if (!entry) continue;
      const std::size_t limit = std::min(config.top_k_similar, entry->similar.size());
      for (std::size_t i = 0; i < limit; ++i) {
        if (entry->similar[i].score >= config.similarity_threshold) candidates.insert(entry->similar[i].domain);
      }
    }
    std::set<std::string> fresh;
    for (const std::string& c : candidates) {
      if (!result.wave_of.contains(c)) fresh.insert(c);
    }
    result.trace.frontier_history.push_back({t, frontier.size(), candidates.size(), fresh.size()});

    if (candidates.empty() || fresh.empty()) {
      result.trace.termination = candidates.empty() ? Termination::frontier_empty : Termination::all_repeats;
      result.trace.termination_wave = t + 1;
      break;
    }
    if (t == config.max_waves) {
      result.trace.frontier_history.back().discovered = 0;
      result.trace.termination = Termination::max_waves;
      result.trace.termination_wave = t;
      break;
    }
    for (const std::string& d : fresh) result.wave_of.emplace(d, t + 1);
    result.trace.waves.push_back({t + 1, {fresh.begin(), fresh.end()}});
    frontier = std::move(fresh);
  }
  return result;
}

/// Referral lists become directed records: `referrals_in` entries point at
/// the node, `referrals_out` entries leave it.
inline std::vector<TransitionRecord> attach_referrals(std::span<const std::string> nodes,
                                                      const SiteProvider& provider,
                                                      const SamplingConfig& config) {
  std::vector<TransitionRecord> records;
  for (const std::string& node : nodes) {
    const SiteEntry* entry = provider.site(node);
    if (!entry) continue;
    const std::size_t in_limit = std::min(config.top_k_referral, entry->referrals_in.size());
    for (std::size_t i = 0; i < in_limit; ++i) {
      records.push_back({entry->referrals_in[i].domain, node, entry->referrals_in[i].weight});
    }
    const std::size_t out_limit = std::min(config.top_k_referral, entry->referrals_out.size());
    for (std::size_t i = 0; i < out_limit; ++i) {
      records.push_back({node, entry->referrals_out[i].domain, entry->referrals_out[i].weight});
    }
  }
  return records;
}

struct Dataset {
  EcosystemGraph graph;
  std::vector<TransitionRecord> records;
  SamplingTrace trace;
};

/// Runs the expansion, attaches referral edges and builds the raw graph.
/// Sites that only appear as referral endpoints are labelled with the wave
/// after the last similarity wave.
inline Dataset build_dataset(std::span<const std::string> seeds, const SiteProvider& provider,
                             const SamplingConfig& config) {
  Expansion expansion = expand_similar(seeds, provider, config);
  const std::vector<std::string> discovered = expansion.ordered();

  Dataset data;
  data.trace = std::move(expansion.trace);
  for (const std::string& d : discovered) {
    const unsigned wave = expansion.wave_of.at(d);
    data.graph.add_node(d, wave == 0, wave);
  }
  data.records = attach_referrals(discovered, provider, config);
  const unsigned referral_wave = data.trace.waves.back().index + 1;
  for (const TransitionRecord& r : data.records) {
    data.graph.add_node(r.src_raw, false, referral_wave);
    data.graph.add_node(r.dst_raw, false, referral_wave);
    data.graph.add_transition(r.src_raw, r.dst_raw, r.weight);
  }
  return data;
}

inline nlohmann::ordered_json trace_to_json(const SamplingTrace& trace) {
  nlohmann::ordered_json j;
  j["waves"] = nlohmann::ordered_json::array();
  for (const Wave& w : trace.waves) j["waves"].push_back({{"wave", w.index}, {"domains", w.domains}});
  j["termination"] = {{"reason", to_string(trace.termination)}, {"wave", trace.termination_wave}};
  j["frontier"] = nlohmann::ordered_json::array();
  for (const FrontierStep& s : trace.frontier_history) {
    j["frontier"].push_back({{"wave", s.wave},
                             {"frontier", s.frontier},
                             {"candidates", s.candidates},
                             {"discovered", s.discovered}});
  }
  j["warnings"] = trace.warnings;
  return j;
}

/// Seed list: one domain per line, `#` comments.
inline std::vector<std::string> load_seeds(std::istream& in) {
  RelevanceFilter list = load_filter(in, FilterMode::allowlist);
  if (list.domains.empty()) throw ConfigError("seed list is empty");
  return {list.domains.begin(), list.domains.end()};
}

}  // namespace ecosysna

#endif  // ECOSYSNA_SAMPLER_HPP_
