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

#ifndef PRIVDIFF_METRICS_HPP_
#define PRIVDIFF_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "privdiff/graph.hpp"

namespace privdiff {

// Node ids ordered by descending score, ties broken by ascending id.
struct Ranking {
  std::vector<NodeId> ids;
  bool truncated = false;  // fewer eligible nodes than requested
};

// Top-R ids of the score vector, skipping the excluded set.
inline Ranking top_r(std::span<const double> scores, std::int64_t r,
                     std::span<const NodeId> exclude = {}) {
  if (r < 1) throw std::invalid_argument("top_r: R must be >= 1");
  std::unordered_set<NodeId> skip(exclude.begin(), exclude.end());
  std::vector<NodeId> ids;
  ids.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const NodeId id = static_cast<NodeId>(i);
    if (!skip.count(id)) ids.push_back(id);
  }
  const auto better = [&](NodeId a, NodeId b) {
    const double sa = scores[static_cast<std::size_t>(a)];
    const double sb = scores[static_cast<std::size_t>(b)];
    return sa != sb ? sa > sb : a < b;
  };
  Ranking out;
  if (static_cast<std::int64_t>(ids.size()) <= r) {
    std::sort(ids.begin(), ids.end(), better);
    out.truncated = static_cast<std::int64_t>(ids.size()) < r;
    out.ids = std::move(ids);
    return out;
  }
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(r),
                    ids.end(), better);
  ids.resize(static_cast<std::size_t>(r));
  out.ids = std::move(ids);
  return out;
}

enum class Relevance { graded, binary };

// NDCG@R of the approximate ranking against the noise-free reference.
// Graded relevance is the reference score itself; binary relevance is
// membership in the reference top-R. Returns 1.0 when the ideal DCG is 0.
inline double ndcg_at_r(std::span<const double> approx_scores,
                        std::span<const double> true_scores, std::int64_t r,
                        std::span<const NodeId> exclude = {},
                        Relevance relevance = Relevance::graded) {
  if (approx_scores.size() != true_scores.size()) {
    throw std::invalid_argument("ndcg_at_r: length mismatch");
  }
  for (double v : true_scores) {
    if (v < 0.0) {
      throw std::invalid_argument("ndcg_at_r: reference scores must be >= 0");
    }
  }
  const Ranking ideal = top_r(true_scores, r, exclude);
  const Ranking approx = top_r(approx_scores, r, exclude);
  std::unordered_set<NodeId> ideal_set(ideal.ids.begin(), ideal.ids.end());
  const auto gain = [&](NodeId v) {
    return relevance == Relevance::graded
               ? true_scores[static_cast<std::size_t>(v)]
               : (ideal_set.count(v) ? 1.0 : 0.0);
  };
  const auto dcg = [&](const std::vector<NodeId>& order) {
    double acc = 0.0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      acc += gain(order[i]) / std::log2(static_cast<double>(i) + 2.0);
    }
    return acc;
  };
  const double idcg = dcg(ideal.ids);
  if (idcg == 0.0) return 1.0;
  return dcg(approx.ids) / idcg;
}

// |top_R(approx) intersect top_R(reference)| / R (eligible count when fewer).
inline double recall_at_r(std::span<const double> approx_scores,
                          std::span<const double> true_scores, std::int64_t r,
                          std::span<const NodeId> exclude = {}) {
  if (approx_scores.size() != true_scores.size()) {
    throw std::invalid_argument("recall_at_r: length mismatch");
  }
  const Ranking truth = top_r(true_scores, r, exclude);
  const Ranking approx = top_r(approx_scores, r, exclude);
  std::unordered_set<NodeId> truth_set(truth.ids.begin(), truth.ids.end());
  std::int64_t hits = 0;
  for (NodeId v : approx.ids) hits += truth_set.count(v) ? 1 : 0;
  const auto denom = std::min<std::int64_t>(
      r, static_cast<std::int64_t>(truth.ids.size()));
  return denom == 0 ? 0.0
                    : static_cast<double>(hits) / static_cast<double>(denom);
}

}  // namespace privdiff

#endif  // PRIVDIFF_METRICS_HPP_
