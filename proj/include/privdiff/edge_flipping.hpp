// Copyright 2026 The privdiff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVDIFF_EDGE_FLIPPING_HPP_
#define PRIVDIFF_EDGE_FLIPPING_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "privdiff/diffusion.hpp"
#include "privdiff/graph.hpp"
#include "privdiff/rng.hpp"

namespace privdiff {

// Randomized-response release of the adjacency matrix. Every unordered pair
// (seed-incident pairs exempt when personalized_seed is set) is redrawn
// uniformly from {0, 1} with probability p, kept otherwise. The pass touches
// all C(n, 2) pairs, hence the node_limit guard.
struct FlipConfig {
  double p = 0.0;
  std::optional<NodeId> personalized_seed;
  NodeId node_limit = 20000;
};

// The flipped graph may contain isolated nodes, so it is carried as a plain
// edge set rather than a SparseGraph.
struct FlipResult {
  NodeId n = 0;
  std::vector<Edge> edges;  // canonical: u < v, sorted
  std::int64_t pairs_redrawn = 0;
};

inline FlipResult edge_flipping(const SparseGraph& g, const FlipConfig& cfg,
                                RngStream& rng) {
  if (!(cfg.p > 0.0 && cfg.p < 1.0)) {
    throw std::invalid_argument("edge_flipping: p must lie in (0, 1)");
  }
  if (g.n() > cfg.node_limit) {
    throw std::invalid_argument("edge_flipping: node_limit exceeded");
  }
  const NodeId n = g.n();
  const std::int64_t total_pairs =
      static_cast<std::int64_t>(n) * (n - 1) / 2;

  const auto seed_incident = [&](const Edge& e) {
    return cfg.personalized_seed &&
           (e.u == *cfg.personalized_seed || e.v == *cfg.personalized_seed);
  };

  FlipResult out;
  out.n = n;
  std::vector<Edge> redrawn_edges;
  std::vector<Edge> redrawn_sorted;

  // Pairs are indexed lexicographically; redraw events are walked by
  // geometric skipping, so the cost is O(p n^2 + |E|) draws rather than a
  // uniform per pair. Identical in law to the per-pair description. The
  // indices arrive in increasing order, so the (u, v) decode resumes from
  // the previous row instead of rescanning.
  const double log_keep = std::log1p(-cfg.p);
  std::int64_t idx = -1;
  std::int64_t row_node = 0;          // u of the current row
  std::int64_t row_start = 0;         // pair index where that row begins
  std::int64_t row_len = n - 1;       // pairs in the row: n - 1 - u
  while (true) {
    const double u01 = rng.uniform01();
    const double skip = std::floor(std::log(u01) / log_keep);
    if (skip >= static_cast<double>(total_pairs)) break;
    idx += 1 + static_cast<std::int64_t>(skip);
    if (idx >= total_pairs) break;
    const bool to_one = rng.next_u64() & 1u;
    while (idx >= row_start + row_len) {
      row_start += row_len;
      ++row_node;
      --row_len;
    }
    const Edge e{static_cast<NodeId>(row_node),
                 static_cast<NodeId>(row_node + 1 + (idx - row_start))};
    if (seed_incident(e)) continue;  // exempt pairs always keep their bit
    ++out.pairs_redrawn;
    redrawn_sorted.push_back(e);
    if (to_one) redrawn_edges.push_back(e);
  }

  // Output = original edges minus redrawn pairs, plus pairs redrawn to 1.
  std::vector<Edge> original = g.edge_list();
  std::vector<Edge> kept;
  kept.reserve(original.size());
  std::set_difference(original.begin(), original.end(), redrawn_sorted.begin(),
                      redrawn_sorted.end(), std::back_inserter(kept));
  out.edges.reserve(kept.size() + redrawn_edges.size());
  std::merge(kept.begin(), kept.end(), redrawn_edges.begin(),
             redrawn_edges.end(), std::back_inserter(out.edges));
  return out;
}

// Exact PPR on the flipped graph, restricted to the seed's connected
// component; nodes outside it (and isolated nodes) score 0. A seed with no
// edges keeps all its mass.
inline std::vector<double> flipped_ppr_scores(const FlipResult& flipped,
                                              NodeId seed, double beta,
                                              std::int64_t steps) {
  if (seed < 0 || seed >= flipped.n) {
    throw std::invalid_argument("flipped_ppr_scores: seed out of range");
  }
  std::vector<double> scores(static_cast<std::size_t>(flipped.n), 0.0);
  const std::vector<NodeId> component =
      detail::component_of(flipped.n, flipped.edges, seed);
  if (component.size() < 2) {
    scores[static_cast<std::size_t>(seed)] = 1.0;
    return scores;
  }
  std::vector<NodeId> old_to_new(static_cast<std::size_t>(flipped.n), -1);
  for (std::size_t i = 0; i < component.size(); ++i) {
    old_to_new[static_cast<std::size_t>(component[i])] =
        static_cast<NodeId>(i);
  }
  std::vector<Edge> sub_edges;
  for (const Edge& e : flipped.edges) {
    const NodeId nu = old_to_new[static_cast<std::size_t>(e.u)];
    const NodeId nv = old_to_new[static_cast<std::size_t>(e.v)];
    if (nu >= 0 && nv >= 0) sub_edges.push_back({nu, nv});
  }
  const SparseGraph sub = SparseGraph::from_edges(
      static_cast<NodeId>(component.size()), sub_edges);
  std::vector<double> s(component.size(), 0.0);
  s[static_cast<std::size_t>(old_to_new[static_cast<std::size_t>(seed)])] = 1.0;
  const std::vector<double> pi =
      run_exact_diffusion(sub, ppr_schedule(beta), s, steps);
  for (std::size_t i = 0; i < component.size(); ++i) {
    scores[static_cast<std::size_t>(component[i])] = pi[i];
  }
  return scores;
}

}  // namespace privdiff

#endif  // PRIVDIFF_EDGE_FLIPPING_HPP_
