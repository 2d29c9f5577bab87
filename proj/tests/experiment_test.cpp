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

#include "privdiff/experiment.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"

namespace privdiff {
namespace {

ExperimentConfig SmallConfig() {
  ExperimentConfig cfg;
  cfg.dataset.synthetic_nodes = 300;
  cfg.dataset.synthetic_edges_per_node = 4;
  cfg.dataset.synthetic_seed = 11;
  cfg.methods = {Method::noisy_diffusion, Method::edge_flipping};
  cfg.beta = 0.8;
  cfg.steps = 30;
  cfg.eta_grid = {1e-6, 1e-4};
  cfg.epsilon_grid = {1.0};
  cfg.rank_cutoff = 20;
  cfg.trials = 3;
  cfg.base_seed = 71;
  return cfg;
}

TEST(ExperimentConfigJson, ParsesEveryKnob) {
  const nlohmann::json j = nlohmann::json::parse(R"({
    "dataset": {"synthetic": {"nodes": 500, "edges_per_node": 3, "seed": 9},
                "extract_lcc": true},
    "method": "both",
    "beta": 0.7,
    "steps": 42,
    "eta_grid": [1e-5],
    "epsilon_grid": [0.5, 2.0],
    "delta": 1e-6,
    "rank_cutoff": 10,
    "trials": 4,
    "base_seed": 123,
    "bound_kind": "theorem1",
    "threshold_mode": "uniform",
    "project_l1": false,
    "noise_kind": "gaussian",
    "alpha_grid": [2, 4, 8],
    "trial_timeout_seconds": 60
  })");
  const ExperimentConfig cfg = experiment_config_from_json(j);
  EXPECT_EQ(cfg.dataset.synthetic_nodes, 500);
  EXPECT_EQ(cfg.methods.size(), 2u);
  EXPECT_DOUBLE_EQ(cfg.beta, 0.7);
  EXPECT_EQ(cfg.steps, 42);
  EXPECT_EQ(cfg.eta_grid.size(), 1u);
  EXPECT_DOUBLE_EQ(cfg.delta, 1e-6);
  EXPECT_EQ(cfg.trials, 4);
  EXPECT_EQ(cfg.bound_kind, BoundKind::theorem1);
  EXPECT_EQ(cfg.threshold_mode, ClipMode::uniform);
  EXPECT_FALSE(cfg.project_unit_l1);
  EXPECT_EQ(cfg.noise_kind, NoiseKind::gaussian);
  EXPECT_EQ(cfg.alphas().size(), 3u);
  EXPECT_THROW(experiment_config_from_json(
                   nlohmann::json::parse(R"({"method": "nope"})")),
               std::invalid_argument);
}

TEST(Sweep, DeterministicCsvRerun) {
  ExperimentConfig cfg = SmallConfig();
  cfg.trials = 1;
  const SweepResult a = run_privacy_utility_sweep(cfg);
  const SweepResult b = run_privacy_utility_sweep(cfg);
  std::ostringstream csv_a, csv_b;
  write_sweep_csv(csv_a, a);
  write_sweep_csv(csv_b, b);
  EXPECT_EQ(csv_a.str(), csv_b.str());
  EXPECT_FALSE(csv_a.str().empty());
}

TEST(Sweep, RowsCarryConsistentAccounting) {
  const ExperimentConfig cfg = SmallConfig();
  const SweepResult result = run_privacy_utility_sweep(cfg);
  ASSERT_GT(result.feasible_rows, 0);
  int best_count = 0;
  for (const SweepRow& row : result.rows) {
    if (row.status != "ok") continue;
    // No under-reporting: the re-derived epsilon never exceeds the target.
    EXPECT_LE(row.epsilon_dp_check, row.epsilon_dp + 1e-9);
    EXPECT_GE(row.epsilon_dp_check, 0.0);
    EXPECT_GE(row.mean_ndcg, 0.0);
    EXPECT_LE(row.mean_ndcg, 1.0);
    EXPECT_GE(row.mean_recall, 0.0);
    EXPECT_LE(row.mean_recall, 1.0);
    // CI recomputable from the stored per-trial values.
    std::vector<double> ndcgs;
    for (const TrialReport& t : row.trial_reports) ndcgs.push_back(t.ndcg);
    double mean = 0.0;
    for (double v : ndcgs) mean += v;
    mean /= static_cast<double>(ndcgs.size());
    double ss = 0.0;
    for (double v : ndcgs) ss += (v - mean) * (v - mean);
    const double ci =
        ndcgs.size() > 1
            ? 1.96 * std::sqrt(ss / static_cast<double>(ndcgs.size() - 1)) /
                  std::sqrt(static_cast<double>(ndcgs.size()))
            : 0.0;
    EXPECT_NEAR(row.ci95_ndcg, ci, 1e-12);
    if (row.best_eta) ++best_count;
  }
  // Exactly one best-eta row per epsilon for the noisy method.
  EXPECT_EQ(best_count, 1);
}

TEST(Sweep, PairedSeedNodesAcrossMethodsAndCells) {
  const ExperimentConfig cfg = SmallConfig();
  const SweepResult result = run_privacy_utility_sweep(cfg);
  std::vector<NodeId> reference_seeds;
  for (const SweepRow& row : result.rows) {
    if (row.status != "ok") continue;
    std::vector<NodeId> seeds;
    for (const TrialReport& t : row.trial_reports) seeds.push_back(t.seed_node);
    if (reference_seeds.empty()) {
      reference_seeds = seeds;
    } else {
      EXPECT_EQ(seeds, reference_seeds);
    }
  }
}

// Effectively no privacy and inactive clipping: the calibrated noise
// vanishes and the private ranking reproduces the reference.
TEST(Sweep, NoPrivacyLimitIsLossless) {
  ExperimentConfig cfg = SmallConfig();
  cfg.methods = {Method::noisy_diffusion};
  cfg.eta_grid = {1.0};  // eta * d_i >= 1 >= any PPR score
  cfg.epsilon_grid = {1e9};
  cfg.trials = 2;
  const SweepResult result = run_privacy_utility_sweep(cfg);
  ASSERT_EQ(result.rows.size(), 1u);
  ASSERT_EQ(result.rows[0].status, "ok");
  EXPECT_GE(result.rows[0].mean_ndcg, 0.999);
  EXPECT_GE(result.rows[0].mean_recall, 0.999);
}

TEST(Sweep, InfeasibleRowsAreMarkedAndSkipped) {
  ExperimentConfig cfg = SmallConfig();
  cfg.methods = {Method::noisy_diffusion};
  cfg.eta_grid = {1e-5};
  cfg.epsilon_grid = {1e-6, 1.0};  // first is below the conversion floor
  const SweepResult result = run_privacy_utility_sweep(cfg);
  ASSERT_EQ(result.rows.size(), 2u);
  EXPECT_EQ(result.rows[0].status, "infeasible");
  EXPECT_EQ(result.rows[1].status, "ok");
  EXPECT_EQ(result.feasible_rows, 1);
}

TEST(Sweep, TrialsJsonlHasOneLinePerTrial) {
  ExperimentConfig cfg = SmallConfig();
  cfg.methods = {Method::noisy_diffusion};
  cfg.eta_grid = {1e-5};
  const SweepResult result = run_privacy_utility_sweep(cfg);
  std::ostringstream out;
  write_trials_jsonl(out, result);
  std::istringstream lines(out.str());
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const nlohmann::json j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.contains("seed_node"));
    EXPECT_TRUE(j.contains("rng_stream"));
    ++count;
  }
  EXPECT_EQ(count, 3);
}

TEST(Curves, WassersteinColumnMatchesClosedForm) {
  CurveConfig cfg;
  cfg.k_max = 50;
  const BoundCurves c = emit_bound_curves(cfg);
  ASSERT_EQ(c.w_vs_tau.size(), 51u);
  const double rho = 3.2e-5;
  for (const WassersteinPoint& p : c.w_vs_tau) {
    const double expected =
        rho * (1 - std::pow(0.8, static_cast<double>(p.tau))) / 0.2;
    EXPECT_NEAR(p.w_tau, expected, 1e-18);
    EXPECT_DOUBLE_EQ(p.diameter_degree, 1e-5 * 667966);
    EXPECT_DOUBLE_EQ(p.diameter_uniform, 1e-5 * 10312);
  }
}

TEST(Curves, TheoremPlateausCompositionClimbs) {
  CurveConfig cfg;
  cfg.k_max = 120;
  const BoundCurves c = emit_bound_curves(cfg);
  const BoundCurvePoint& at60 = c.bounds_vs_k[59];
  const BoundCurvePoint& at120 = c.bounds_vs_k[119];
  // Composition is exactly linear; the theorem curve has flattened out.
  EXPECT_NEAR(at120.composition, 2.0 * at60.composition, 1e-15);
  EXPECT_LT(at120.theorem1 - at60.theorem1, 0.05 * at60.theorem1);
  // Diameter tracking never beats Wasserstein tracking.
  for (const BoundCurvePoint& p : c.bounds_vs_k) {
    EXPECT_GE(p.diameter_threshold + 1e-15, p.theorem1);
    EXPECT_LE(p.personalized, p.theorem1 + 1e-15);
  }
}

TEST(Curves, SigmaTableFavorsTheorem1) {
  CurveConfig cfg;
  cfg.k_max = 5;  // keep the K-table small; the sigma table is the point
  const BoundCurves c = emit_bound_curves(cfg);
  ASSERT_EQ(c.sigma_vs_eps.size(), 3u);
  for (const SigmaPoint& p : c.sigma_vs_eps) {
    EXPECT_GT(p.ratio, 1.0);
    EXPECT_NEAR(p.ratio, p.sigma_composition / p.sigma_theorem1, 1e-12);
  }
}

TEST(Curves, CsvWritersEmitHeaders) {
  CurveConfig cfg;
  cfg.k_max = 3;
  const BoundCurves c = emit_bound_curves(cfg);
  std::ostringstream a, b, d;
  write_bounds_vs_k_csv(a, c);
  write_w_vs_tau_csv(b, c);
  write_sigma_vs_eps_csv(d, c);
  EXPECT_EQ(a.str().substr(0, 2), "K,");
  EXPECT_EQ(b.str().substr(0, 4), "tau,");
  EXPECT_EQ(d.str().substr(0, 11), "epsilon_dp,");
}

}  // namespace
}  // namespace privdiff
