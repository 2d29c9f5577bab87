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
//
// Brute-force references kept deliberately independent of the engine code
// paths they check: the dense PPR walks an explicit dense matrix, and the
// distortion probe replays single steps on explicit graph pairs. Size guards
// keep them out of performance paths.

#ifndef PRIVDIFF_ORACLES_HPP_
#define PRIVDIFF_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "privdiff/accountant.hpp"
#include "privdiff/diffusion.hpp"
#include "privdiff/graph.hpp"
#include "privdiff/rng.hpp"
#include "privdiff/vec.hpp"

namespace privdiff {

struct OracleReport {
  std::string quantity;
  double oracle_value = 0.0;
  double engine_value = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  static OracleReport compare(std::string quantity, double oracle,
                              double engine, double tolerance) {
    OracleReport r;
    r.quantity = std::move(quantity);
    r.oracle_value = oracle;
    r.engine_value = engine;
    r.abs_error = std::fabs(oracle - engine);
    r.rel_error = oracle != 0.0 ? r.abs_error / std::fabs(oracle) : r.abs_error;
    r.tolerance = tolerance;
    r.pass = r.abs_error <= tolerance;
    return r;
  }
};

// Reference PPR (1 - beta) sum_k beta^k W^k s via an explicit dense lazy-walk
// matrix, truncated once the residual mass beta^{k+1} drops below tol.
inline std::vector<double> dense_ppr(const SparseGraph& g, double beta,
                                     NodeId seed, double tol = 1e-10) {
  if (g.n() > 2000) throw std::invalid_argument("dense_ppr: n must be <= 2000");
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("dense_ppr: beta must lie in (0, 1)");
  }
  if (seed < 0 || seed >= g.n()) {
    throw std::invalid_argument("dense_ppr: seed out of range");
  }
  const std::size_t n = static_cast<std::size_t>(g.n());
  // W[i][j] = (A_ij / d_j + [i == j]) / 2, built from adjacency sets alone.
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (NodeId j = 0; j < g.n(); ++j) {
    const double inv_d = 1.0 / static_cast<double>(g.degree(j));
    for (NodeId i : g.neighbors(j)) {
      w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += 0.5 * inv_d;
    }
    w[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] += 0.5;
  }
  std::vector<double> term(n, 0.0);
  term[static_cast<std::size_t>(seed)] = 1.0;
  std::vector<double> pi(n, 0.0);
  double weight = 1.0 - beta;
  double residual = beta;  // mass not yet accumulated: beta^{k+1}
  for (std::size_t i = 0; i < n; ++i) pi[i] += weight * term[i];
  std::vector<double> next(n);
  while (residual >= tol) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += w[i][j] * term[j];
      next[i] = acc;
    }
    term.swap(next);
    weight *= beta;
    residual *= beta;
    for (std::size_t i = 0; i < n; ++i) pi[i] += weight * term[i];
  }
  return pi;
}

// Double star: hubs 0 and 1 joined by an edge, each with hub_degree - 1
// private leaves and no common neighbors. The worst-case family for the
// single-step distortion bound under fast schedules.
inline SparseGraph make_double_star(std::int64_t hub_degree) {
  if (hub_degree < 2) {
    throw std::invalid_argument("make_double_star: hub_degree must be >= 2");
  }
  std::vector<Edge> edges{{0, 1}};
  NodeId next = 2;
  for (std::int64_t i = 0; i < hub_degree - 1; ++i) edges.push_back({0, next++});
  for (std::int64_t i = 0; i < hub_degree - 1; ++i) edges.push_back({1, next++});
  return SparseGraph::from_edges(next, edges);
}

// Random connected graph: a random spanning tree plus extra uniform edges.
inline SparseGraph make_random_connected_graph(NodeId n, double avg_degree,
                                               RngStream& rng) {
  if (n < 2) throw std::invalid_argument("make_random_connected_graph: n >= 2");
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) {
    const NodeId u = static_cast<NodeId>(rng.uniform_int(v));
    edges.push_back({std::min(u, v), std::max(u, v)});
  }
  std::sort(edges.begin(), edges.end());
  const auto extra = static_cast<std::int64_t>(
      std::max(0.0, avg_degree / 2.0 - 1.0) * static_cast<double>(n));
  for (std::int64_t t = 0; t < extra; ++t) {
    const NodeId u = static_cast<NodeId>(rng.uniform_int(n));
    const NodeId v = static_cast<NodeId>(rng.uniform_int(n));
    if (u == v) continue;
    const Edge e{std::min(u, v), std::max(u, v)};
    const auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || !(*it == e)) edges.insert(it, e);
  }
  return SparseGraph::from_edges(n, edges);
}

struct DistortionOptions {
  bool project_before_threshold = false;  // apply P_B before f each probe
  double l1_radius = 1.0;
  double input_scale = 1.0;  // magnitude of dense random inputs
};

// Empirical maximum of || phi_k(f_g(x)) - phi_k(f_g'(x)) ||_1 over sampled
// inputs, with each side thresholded by its own graph's degrees. Inputs mix
// dense, sparse, and clip-boundary vectors, the boundary ones concentrated
// on the perturbed endpoints where the bound is attained.
inline double measure_distortion(const SparseGraph& g,
                                 const EdgePerturbation& perturbation,
                                 const DiffusionSchedule& sched,
                                 const ThresholdPolicy& policy,
                                 std::int64_t trials, RngStream& rng,
                                 const DistortionOptions& opt = {}) {
  if (g.n() > 200) {
    throw std::invalid_argument("measure_distortion: n must be <= 200");
  }
  if (trials < 1) {
    throw std::invalid_argument("measure_distortion: trials must be >= 1");
  }
  const SparseGraph other = perturb_edge(g, perturbation);
  const std::size_t n = static_cast<std::size_t>(g.n());
  const std::vector<double> zero_seed(n, 0.0);
  const bool nonneg = policy.mode == ClipMode::nonnegative_degree ||
                      policy.mode == ClipMode::nonnegative_uniform;

  const auto one_side = [&](const SparseGraph& graph,
                            const std::vector<double>& x) {
    std::vector<double> y = opt.project_before_threshold
                                ? project_l1_ball(x, opt.l1_radius)
                                : x;
    y = apply_threshold(policy, graph, y);
    return diffusion_step(graph, sched, 1, y, zero_seed);
  };

  double max_observed = 0.0;
  std::vector<double> x(n);
  for (std::int64_t t = 0; t < trials; ++t) {
    const std::uint64_t kind = rng.next_u64() % 4;
    for (std::size_t i = 0; i < n; ++i) {
      switch (kind) {
        case 0:  // dense
          x[i] = (rng.uniform01() - (nonneg ? 0.0 : 0.5)) * opt.input_scale;
          break;
        case 1:  // sparse spikes
          x[i] = rng.uniform01() < 0.05
                     ? (rng.uniform01() - (nonneg ? 0.0 : 0.5)) * opt.input_scale
                     : 0.0;
          break;
        default:  // near the clip boundary, scaled by degree
          x[i] = policy.eta * static_cast<double>(g.degree(static_cast<NodeId>(i))) *
                 (0.5 + rng.uniform01());
          if (!nonneg && (rng.next_u64() & 1u)) x[i] = -x[i];
          break;
      }
    }
    if (kind == 3) {
      // Saturate exactly at the smaller graph's cap on the endpoints, where
      // the worst case lives.
      for (NodeId endpoint : {perturbation.u, perturbation.v}) {
        const auto e = static_cast<std::size_t>(endpoint);
        const double dmin = static_cast<double>(
            std::min(g.degree(endpoint), other.degree(endpoint)));
        x[e] = policy.eta * dmin;
      }
    }
    const double dist = l1_distance(one_side(g, x), one_side(other, x));
    max_observed = std::max(max_observed, dist);
  }
  return max_observed;
}

// The oracle suite behind the `verify` CLI subcommand.
inline std::vector<OracleReport> run_oracle_suite(std::uint64_t seed = 20260301) {
  std::vector<OracleReport> reports;

  {
    // Two-node path, beta = 1/2: solving pi = beta*W*pi + (1-beta)*e0 with
    // W = [[1/2,1/2],[1/2,1/2]] gives pi = (3/4, 1/4).
    const SparseGraph path2 = SparseGraph::from_edges(2, std::vector<Edge>{{0, 1}});
    const std::vector<double> pi = dense_ppr(path2, 0.5, 0, 1e-14);
    reports.push_back(OracleReport::compare("dense_ppr.path2.closed_form",
                                            0.75, pi[0], 1e-12));
  }

  {
    // Engine diffusion against the dense series on random graphs.
    RngStream rng(seed, 1);
    double worst = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
      const NodeId n = static_cast<NodeId>(20 + rng.uniform_int(80));
      const SparseGraph g = make_random_connected_graph(n, 6.0, rng);
      const double beta = 0.8;
      const std::int64_t steps = 90;  // beta^90 < 2e-9
      std::vector<double> s(static_cast<std::size_t>(n), 0.0);
      s[static_cast<std::size_t>(rng.uniform_int(n))] = 1.0;
      const NodeId seed_node = [&] {
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (s[i] > 0) return static_cast<NodeId>(i);
        }
        return NodeId{0};
      }();
      const std::vector<double> engine =
          run_exact_diffusion(g, ppr_schedule(beta), s, steps);
      const std::vector<double> oracle = dense_ppr(g, beta, seed_node, 1e-10);
      worst = std::max(worst, l1_distance(engine, oracle));
    }
    reports.push_back(
        OracleReport::compare("exact_diffusion.vs_dense_ppr.l1", 0.0, worst, 1e-7));
  }

  {
    // Single-step distortion never above rho_diff; double star reaches it.
    RngStream rng(seed, 2);
    const DiffusionSchedule sched = ppr_schedule(0.8);
    const ThresholdPolicy policy{1e-3, ClipMode::nonnegative_degree, {}};
    const double bound = rho_diff(sched, policy.eta);
    double worst = 0.0;
    for (int rep = 0; rep < 40; ++rep) {
      const NodeId n = static_cast<NodeId>(10 + rng.uniform_int(60));
      const SparseGraph g = make_random_connected_graph(n, 5.0, rng);
      const std::vector<Edge> edges = g.edge_list();
      const Edge e = edges[static_cast<std::size_t>(
          rng.uniform_int(static_cast<std::int64_t>(edges.size())))];
      if (g.degree(e.u) == 1 || g.degree(e.v) == 1) continue;
      worst = std::max(
          worst, measure_distortion(g, {e.u, e.v, EdgePerturbation::Op::remove},
                                    sched, policy, 60, rng));
    }
    reports.push_back(OracleReport::compare("distortion.soundness.max_vs_rho",
                                            0.0, std::max(0.0, worst - bound),
                                            1e-12));

    const SparseGraph star = make_double_star(100);
    RngStream rng2(seed, 3);
    const double tight = measure_distortion(
        star, {0, 1, EdgePerturbation::Op::remove}, sched, policy, 400, rng2);
    reports.push_back(OracleReport::compare("distortion.double_star.tightness",
                                            bound, tight, 0.2 * bound));
  }

  {
    // Random-walk matvec against a dense A D^{-1} product.
    RngStream rng(seed, 4);
    const SparseGraph g = make_random_connected_graph(20, 4.0, rng);
    std::vector<double> x(20);
    for (auto& v : x) v = rng.uniform01() - 0.5;
    const std::vector<double> engine = random_walk_matvec(g, x);
    double worst = 0.0;
    for (NodeId i = 0; i < g.n(); ++i) {
      double acc = 0.0;
      for (NodeId j = 0; j < g.n(); ++j) {
        if (g.has_edge(i, j)) {
          acc += x[static_cast<std::size_t>(j)] /
                 static_cast<double>(g.degree(j));
        }
      }
      worst = std::max(worst,
                       std::fabs(acc - engine[static_cast<std::size_t>(i)]));
    }
    reports.push_back(
        OracleReport::compare("random_walk_matvec.vs_dense", 0.0, worst, 1e-12));
  }

  {
    // Closed-form Laplace divergence against numeric quadrature at alpha = 2.
    const double sigma = 1.0, rho = 1.0, alpha = 2.0;
    const auto density = [&](double x, double mean) {
      return std::exp(-std::fabs(x - mean) / sigma) / (2.0 * sigma);
    };
    const double lo = -60.0, hi = 60.0;
    const std::int64_t cells = 1200000;
    const double h = (hi - lo) / static_cast<double>(cells);
    double integral = 0.0;
    for (std::int64_t i = 0; i <= cells; ++i) {
      const double x = lo + h * static_cast<double>(i);
      const double f = std::pow(density(x, 0.0), alpha) *
                       std::pow(density(x, rho), 1.0 - alpha);
      integral += (i == 0 || i == cells) ? 0.5 * f : f;
    }
    integral *= h;
    const double numeric = std::log(integral) / (alpha - 1.0);
    reports.push_back(OracleReport::compare("g_alpha.vs_quadrature.alpha2",
                                            numeric, g_alpha(alpha, sigma, rho),
                                            1e-8));
  }

  {
    // Laplace sampler against its CDF (Kolmogorov-Smirnov statistic).
    RngStream rng(seed, 5);
    const std::int64_t n = 100000;
    std::vector<double> draws = sample_laplace_vec(n, 1.0, rng);
    std::sort(draws.begin(), draws.end());
    const auto cdf = [](double x) {
      return x < 0.0 ? 0.5 * std::exp(x) : 1.0 - 0.5 * std::exp(-x);
    };
    double ks = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
      const double f = cdf(draws[static_cast<std::size_t>(i)]);
      const double lo_step = static_cast<double>(i) / static_cast<double>(n);
      const double hi_step = static_cast<double>(i + 1) / static_cast<double>(n);
      ks = std::max({ks, std::fabs(f - lo_step), std::fabs(f - hi_step)});
    }
    reports.push_back(OracleReport::compare("laplace_sampler.ks", 0.0, ks, 0.01));
  }

  return reports;
}

}  // namespace privdiff

#endif  // PRIVDIFF_ORACLES_HPP_
