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

#ifndef PRIVDIFF_GRAPH_HPP_
#define PRIVDIFF_GRAPH_HPP_

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "privdiff/parallel.hpp"
#include "privdiff/rng.hpp"

namespace privdiff {

using NodeId = std::int32_t;

// Undirected edge in canonical orientation u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend bool operator<(const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  }
};

struct EdgePerturbation {
  enum class Op { remove, add };
  NodeId u = 0;
  NodeId v = 0;
  Op op = Op::remove;
};

// Undirected simple graph in compressed adjacency form. Canonical: neighbor
// lists sorted ascending, no self-loops, no duplicates, every degree >= 1.
// Immutable after construction; safe to share across threads.
class SparseGraph {
 public:
  SparseGraph() = default;

  // Builds from a list of edges over nodes 0..n-1. Edges may be given in
  // either orientation but must be distinct, non-loop pairs; every node must
  // end up with degree >= 1.
  static SparseGraph from_edges(NodeId n, std::span<const Edge> edges) {
    if (n <= 0) throw std::invalid_argument("SparseGraph: empty graph");
    SparseGraph g;
    g.n_ = n;
    g.degrees_.assign(static_cast<std::size_t>(n), 0);
    for (const Edge& e : edges) {
      if (e.u == e.v) throw std::invalid_argument("SparseGraph: self-loop");
      if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
        throw std::invalid_argument("SparseGraph: node id out of range");
      }
      ++g.degrees_[static_cast<std::size_t>(e.u)];
      ++g.degrees_[static_cast<std::size_t>(e.v)];
    }
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (NodeId i = 0; i < n; ++i) {
      if (g.degrees_[static_cast<std::size_t>(i)] == 0) {
        throw std::invalid_argument("SparseGraph: isolated node " +
                                    std::to_string(i));
      }
      g.offsets_[static_cast<std::size_t>(i) + 1] =
          g.offsets_[static_cast<std::size_t>(i)] +
          g.degrees_[static_cast<std::size_t>(i)];
    }
    g.neighbors_.resize(static_cast<std::size_t>(g.offsets_.back()));
    std::vector<std::int64_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const Edge& e : edges) {
      g.neighbors_[static_cast<std::size_t>(fill[static_cast<std::size_t>(e.u)]++)] = e.v;
      g.neighbors_[static_cast<std::size_t>(fill[static_cast<std::size_t>(e.v)]++)] = e.u;
    }
    for (NodeId i = 0; i < n; ++i) {
      auto row = g.mutable_row(i);
      std::sort(row.begin(), row.end());
      if (std::adjacent_find(row.begin(), row.end()) != row.end()) {
        throw std::invalid_argument("SparseGraph: duplicate edge at node " +
                                    std::to_string(i));
      }
    }
    g.m_ = static_cast<std::int64_t>(edges.size());
    return g;
  }

  NodeId n() const { return n_; }
  std::int64_t num_edges() const { return m_; }
  std::span<const std::int64_t> degrees() const { return degrees_; }
  std::int64_t degree(NodeId i) const {
    return degrees_[static_cast<std::size_t>(i)];
  }
  std::int64_t degree_sum() const { return 2 * m_; }

  std::span<const NodeId> neighbors(NodeId i) const {
    const auto lo = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(i)]);
    const auto hi = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(i) + 1]);
    return {neighbors_.data() + lo, hi - lo};
  }

  bool has_edge(NodeId u, NodeId v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
    const auto row = neighbors(u);
    return std::binary_search(row.begin(), row.end(), v);
  }

  // Canonical edge list: u < v, lexicographically sorted.
  std::vector<Edge> edge_list() const {
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m_));
    for (NodeId u = 0; u < n_; ++u) {
      for (NodeId v : neighbors(u)) {
        if (u < v) edges.push_back({u, v});
      }
    }
    return edges;
  }

  friend bool operator==(const SparseGraph& a, const SparseGraph& b) {
    return a.n_ == b.n_ && a.offsets_ == b.offsets_ &&
           a.neighbors_ == b.neighbors_;
  }

 private:
  std::span<NodeId> mutable_row(NodeId i) {
    const auto lo = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(i)]);
    const auto hi = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(i) + 1]);
    return {neighbors_.data() + lo, hi - lo};
  }

  NodeId n_ = 0;
  std::int64_t m_ = 0;
  std::vector<std::int64_t> offsets_;
  std::vector<NodeId> neighbors_;
  std::vector<std::int64_t> degrees_;
};

struct LoadOptions {
  bool one_indexed = false;
  bool extract_lcc = false;
};

struct LoadResult {
  SparseGraph graph;
  std::int64_t self_loops_dropped = 0;
  std::int64_t duplicates_removed = 0;
  // Populated when extract_lcc trims the graph: old id -> new id (-1 for
  // dropped nodes) and its inverse. Ids are post-1-indexing-shift.
  std::vector<NodeId> old_to_new;
  std::vector<NodeId> new_to_old;
  bool lcc_extracted = false;
  std::int64_t original_nodes = 0;
};

namespace detail {

inline std::vector<NodeId> component_of(NodeId n,
                                        const std::vector<Edge>& edges,
                                        NodeId start) {
  std::vector<std::vector<NodeId>> adj(static_cast<std::size_t>(n));
  for (const Edge& e : edges) {
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<NodeId> out;
  std::queue<NodeId> frontier;
  frontier.push(start);
  seen[static_cast<std::size_t>(start)] = 1;
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop();
    out.push_back(u);
    for (NodeId v : adj[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        frontier.push(v);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Largest connected component over the listed nodes; ties go to the
// component containing the smallest node id.
inline std::vector<NodeId> largest_component(NodeId n,
                                             const std::vector<Edge>& edges) {
  std::vector<std::vector<NodeId>> adj(static_cast<std::size_t>(n));
  for (const Edge& e : edges) {
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<NodeId> best;
  for (NodeId s = 0; s < n; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    std::vector<NodeId> comp;
    std::queue<NodeId> frontier;
    frontier.push(s);
    seen[static_cast<std::size_t>(s)] = 1;
    while (!frontier.empty()) {
      const NodeId u = frontier.front();
      frontier.pop();
      comp.push_back(u);
      for (NodeId v : adj[static_cast<std::size_t>(u)]) {
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          frontier.push(v);
        }
      }
    }
    if (comp.size() > best.size()) best = std::move(comp);
  }
  std::sort(best.begin(), best.end());
  return best;
}

}  // namespace detail

// Parses "u v" edge lines. '#'-prefixed lines (after leading blanks) are
// comments; blank lines are skipped; anything else must be exactly two
// integer tokens. Duplicates are merged and self-loops dropped, both counted
// in the result. Without extract_lcc any isolated node in 0..max_id is an
// error; with it, the largest connected component is returned together with
// the id maps.
inline LoadResult load_edge_list(std::istream& in,
                                 const LoadOptions& options = {}) {
  std::vector<Edge> edges;
  std::int64_t self_loops = 0;
  std::string line;
  std::int64_t line_no = 0;
  std::int64_t max_id = -1;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream fields(line);
    long long a = 0, b = 0;
    std::string extra;
    if (!(fields >> a >> b) || (fields >> extra)) {
      throw std::runtime_error("load_edge_list: malformed line " +
                               std::to_string(line_no) + ": '" + line + "'");
    }
    if (options.one_indexed) {
      --a;
      --b;
    }
    if (a < 0 || b < 0 ||
        a >= std::numeric_limits<NodeId>::max() ||
        b >= std::numeric_limits<NodeId>::max()) {
      throw std::runtime_error("load_edge_list: node id out of range at line " +
                               std::to_string(line_no));
    }
    if (a == b) {
      ++self_loops;
      continue;
    }
    Edge e{static_cast<NodeId>(std::min(a, b)),
           static_cast<NodeId>(std::max(a, b))};
    max_id = std::max<std::int64_t>(max_id, e.v);
    edges.push_back(e);
  }
  if (edges.empty()) throw std::runtime_error("load_edge_list: empty graph");

  std::sort(edges.begin(), edges.end());
  const auto dedup_end = std::unique(edges.begin(), edges.end());
  const std::int64_t duplicates =
      static_cast<std::int64_t>(edges.end() - dedup_end);
  edges.erase(dedup_end, edges.end());

  LoadResult result;
  result.self_loops_dropped = self_loops;
  result.duplicates_removed = duplicates;
  const NodeId n = static_cast<NodeId>(max_id + 1);
  result.original_nodes = n;

  if (!options.extract_lcc) {
    std::vector<char> touched(static_cast<std::size_t>(n), 0);
    for (const Edge& e : edges) {
      touched[static_cast<std::size_t>(e.u)] = 1;
      touched[static_cast<std::size_t>(e.v)] = 1;
    }
    for (NodeId i = 0; i < n; ++i) {
      if (!touched[static_cast<std::size_t>(i)]) {
        throw std::runtime_error("load_edge_list: isolated node " +
                                 std::to_string(i) +
                                 " (set extract_lcc to trim)");
      }
    }
    result.graph = SparseGraph::from_edges(n, edges);
    return result;
  }

  const std::vector<NodeId> keep = detail::largest_component(n, edges);
  result.old_to_new.assign(static_cast<std::size_t>(n), -1);
  result.new_to_old = keep;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    result.old_to_new[static_cast<std::size_t>(keep[i])] =
        static_cast<NodeId>(i);
  }
  std::vector<Edge> kept_edges;
  kept_edges.reserve(edges.size());
  for (const Edge& e : edges) {
    const NodeId nu = result.old_to_new[static_cast<std::size_t>(e.u)];
    const NodeId nv = result.old_to_new[static_cast<std::size_t>(e.v)];
    if (nu >= 0 && nv >= 0) kept_edges.push_back({nu, nv});
  }
  result.lcc_extracted = true;
  result.graph =
      SparseGraph::from_edges(static_cast<NodeId>(keep.size()), kept_edges);
  return result;
}

inline LoadResult load_edge_list_file(const std::string& path,
                                      const LoadOptions& options = {}) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_edge_list: cannot open " + path);
  return load_edge_list(in, options);
}

// Canonical export: "u v" with u < v, lexicographically sorted.
inline void write_edge_list(std::ostream& out, const SparseGraph& g) {
  for (const Edge& e : g.edge_list()) {
    out << e.u << ' ' << e.v << '\n';
  }
}

// The edge-adjacent graph differing from g in exactly (u, v). Removal that
// would isolate a node is rejected.
inline SparseGraph perturb_edge(const SparseGraph& g,
                                const EdgePerturbation& p) {
  if (p.u == p.v) throw std::invalid_argument("perturb_edge: self-loop");
  if (p.u < 0 || p.v < 0 || p.u >= g.n() || p.v >= g.n()) {
    throw std::invalid_argument("perturb_edge: node id out of range");
  }
  const Edge e{std::min(p.u, p.v), std::max(p.u, p.v)};
  std::vector<Edge> edges = g.edge_list();
  if (p.op == EdgePerturbation::Op::remove) {
    if (!g.has_edge(e.u, e.v)) {
      throw std::invalid_argument("perturb_edge: removing an absent edge");
    }
    if (g.degree(e.u) == 1 || g.degree(e.v) == 1) {
      throw std::invalid_argument(
          "perturb_edge: removal would isolate a node");
    }
    edges.erase(std::find(edges.begin(), edges.end(), e));
  } else {
    if (g.has_edge(e.u, e.v)) {
      throw std::invalid_argument("perturb_edge: adding a present edge");
    }
    edges.push_back(e);
  }
  return SparseGraph::from_edges(g.n(), edges);
}

// y = P x with P = A D^{-1}: y_i = sum_{j in N(i)} x_j / d_j. Row sums are
// accumulated in ascending-neighbor order, rows independently (so the result
// is identical at any worker count), parallel over row blocks.
inline std::vector<double> random_walk_matvec(const SparseGraph& g,
                                              std::span<const double> x) {
  if (static_cast<std::int64_t>(x.size()) != g.n()) {
    throw std::invalid_argument("random_walk_matvec: length mismatch");
  }
  const NodeId n = g.n();
  std::vector<double> scaled(static_cast<std::size_t>(n));
  const auto deg = g.degrees();
  for (NodeId j = 0; j < n; ++j) {
    scaled[static_cast<std::size_t>(j)] =
        x[static_cast<std::size_t>(j)] /
        static_cast<double>(deg[static_cast<std::size_t>(j)]);
  }
  std::vector<double> y(static_cast<std::size_t>(n));
  parallel_for(0, n, [&](std::int64_t i) {
    double acc = 0.0;
    for (NodeId j : g.neighbors(static_cast<NodeId>(i))) {
      acc += scaled[static_cast<std::size_t>(j)];
    }
    y[static_cast<std::size_t>(i)] = acc;
  });
  return y;
}

// y = W x with the lazy walk W = (P + I) / 2.
inline std::vector<double> lazy_walk_matvec(const SparseGraph& g,
                                            std::span<const double> x) {
  std::vector<double> y = random_walk_matvec(g, x);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = 0.5 * (y[i] + x[i]);
  return y;
}

// Preferential attachment (power-law) generator: an (m+1)-clique seed, then
// each new node attaches m edges to distinct targets drawn proportionally to
// degree. Connected, min degree >= m over the tail.
inline SparseGraph make_preferential_attachment_graph(NodeId n,
                                                      int edges_per_node,
                                                      RngStream& rng) {
  const int m = edges_per_node;
  if (m < 1 || n < m + 2) {
    throw std::invalid_argument(
        "make_preferential_attachment_graph: need n >= edges_per_node + 2");
  }
  std::vector<Edge> edges;
  std::vector<NodeId> endpoints;  // one entry per half-edge
  for (NodeId u = 0; u <= m; ++u) {
    for (NodeId v = static_cast<NodeId>(u + 1); v <= m; ++v) {
      edges.push_back({u, v});
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  std::vector<NodeId> targets;
  for (NodeId t = static_cast<NodeId>(m + 1); t < n; ++t) {
    targets.clear();
    while (static_cast<int>(targets.size()) < m) {
      const NodeId cand = endpoints[static_cast<std::size_t>(
          rng.uniform_int(static_cast<std::int64_t>(endpoints.size())))];
      if (std::find(targets.begin(), targets.end(), cand) == targets.end()) {
        targets.push_back(cand);
      }
    }
    for (NodeId v : targets) {
      edges.push_back({std::min(t, v), std::max(t, v)});
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return SparseGraph::from_edges(n, edges);
}

}  // namespace privdiff

#endif  // PRIVDIFF_GRAPH_HPP_
