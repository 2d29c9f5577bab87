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

#include "privdiff/edge_flipping.hpp"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "privdiff/oracles.hpp"
#include "privdiff/vec.hpp"

namespace privdiff {
namespace {

// 100 nodes, perfect matching: 50 edges, as empty as the degree->=1
// invariant allows.
SparseGraph SparseMatching(NodeId n) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; u += 2) edges.push_back({u, static_cast<NodeId>(u + 1)});
  return SparseGraph::from_edges(n, edges);
}

TEST(EdgeFlipping, VanishingFlipProbabilityKeepsGraph) {
  RngStream graph_rng(1, 0);
  const SparseGraph g = make_random_connected_graph(60, 5.0, graph_rng);
  RngStream rng(1, 1);
  const FlipResult out = edge_flipping(g, {.p = 1e-12}, rng);
  EXPECT_EQ(out.edges, g.edge_list());
  EXPECT_EQ(out.pairs_redrawn, 0);
}

// At p -> 1 every pair is redrawn fair-coin: |E_out| ~ Binomial(C(n,2), 1/2),
// mean 2475 and sd 35.2 for n = 100.
TEST(EdgeFlipping, NearTotalRedrawMatchesBinomialCount) {
  const SparseGraph g = SparseMatching(100);
  RngStream rng(2, 0);
  const FlipResult out = edge_flipping(g, {.p = 1.0 - 1e-9}, rng);
  const double mean = 4950.0 / 2.0;
  const double sd = std::sqrt(4950.0 * 0.25);
  EXPECT_NEAR(static_cast<double>(out.edges.size()), mean, 3.0 * sd);
  EXPECT_EQ(out.pairs_redrawn, 4950);
}

TEST(EdgeFlipping, SeedIncidentPairsAreExempt) {
  RngStream graph_rng(3, 0);
  const SparseGraph g = make_random_connected_graph(40, 6.0, graph_rng);
  const NodeId seed = 7;
  RngStream rng(3, 1);
  FlipConfig cfg;
  cfg.p = 0.9;
  cfg.personalized_seed = seed;
  const FlipResult out = edge_flipping(g, cfg, rng);
  for (NodeId v = 0; v < g.n(); ++v) {
    if (v == seed) continue;
    bool present_out = false;
    for (const Edge& e : out.edges) {
      if ((e.u == seed && e.v == v) || (e.u == v && e.v == seed)) {
        present_out = true;
        break;
      }
    }
    EXPECT_EQ(present_out, g.has_edge(seed, v)) << "node " << v;
  }
}

TEST(EdgeFlipping, DeterministicPerStream) {
  RngStream graph_rng(4, 0);
  const SparseGraph g = make_random_connected_graph(50, 4.0, graph_rng);
  RngStream a(4, 9), b(4, 9);
  EXPECT_EQ(edge_flipping(g, {.p = 0.4}, a).edges,
            edge_flipping(g, {.p = 0.4}, b).edges);
}

TEST(EdgeFlipping, Validation) {
  RngStream graph_rng(5, 0);
  const SparseGraph g = make_random_connected_graph(30, 4.0, graph_rng);
  RngStream rng(5, 1);
  EXPECT_THROW(edge_flipping(g, {.p = 0.0}, rng), std::invalid_argument);
  EXPECT_THROW(edge_flipping(g, {.p = 1.0}, rng), std::invalid_argument);
  FlipConfig tiny_limit;
  tiny_limit.p = 0.5;
  tiny_limit.node_limit = 10;
  EXPECT_THROW(edge_flipping(g, tiny_limit, rng), std::invalid_argument);
}

// E |E_out| = (1-p) |E_in| + (p/2) C(n,2) on exempt-free graphs.
TEST(EdgeFlipping, ExpectedDensityMonteCarlo) {
  RngStream graph_rng(6, 0);
  const NodeId n = 200;
  const SparseGraph g = make_random_connected_graph(n, 6.0, graph_rng);
  const double p = 0.3;
  const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
  const double expected =
      (1 - p) * static_cast<double>(g.num_edges()) + (p / 2.0) * pairs;
  const int reps = 50;
  double total = 0.0;
  // Per-pair variance: redraw-to-one and kept-edge events are Bernoulli.
  for (int rep = 0; rep < reps; ++rep) {
    RngStream rng(6, static_cast<std::uint64_t>(rep + 1));
    total += static_cast<double>(edge_flipping(g, {.p = p}, rng).edges.size());
  }
  const double mean = total / reps;
  const double per_run_var = pairs * (p / 2) * (1 - p / 2);  // upper bound
  const double sd_of_mean = std::sqrt(per_run_var / reps);
  EXPECT_NEAR(mean, expected, 3.0 * sd_of_mean);
}

TEST(FlippedPpr, ScoresLiveOnSeedComponent) {
  // Two triangles, no connection: flipping with tiny p keeps them apart, and
  // PPR from node 0 must not leak mass into the far triangle.
  std::vector<Edge> edges{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
  const SparseGraph g = SparseGraph::from_edges(6, edges);
  RngStream rng(7, 0);
  const FlipResult out = edge_flipping(g, {.p = 1e-12}, rng);
  const std::vector<double> scores = flipped_ppr_scores(out, 0, 0.8, 60);
  EXPECT_NEAR(scores[0] + scores[1] + scores[2], 1.0, 1e-9);
  EXPECT_DOUBLE_EQ(scores[3], 0.0);
  EXPECT_DOUBLE_EQ(scores[4], 0.0);
  EXPECT_DOUBLE_EQ(scores[5], 0.0);
}

TEST(FlippedPpr, LonelySeedKeepsItsMass) {
  FlipResult lonely;
  lonely.n = 4;
  lonely.edges = {{1, 2}, {1, 3}, {2, 3}};
  const std::vector<double> scores = flipped_ppr_scores(lonely, 0, 0.8, 30);
  EXPECT_DOUBLE_EQ(scores[0], 1.0);
  EXPECT_DOUBLE_EQ(scores[1], 0.0);
}

}  // namespace
}  // namespace privdiff
