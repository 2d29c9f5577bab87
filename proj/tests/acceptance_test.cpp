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
// End-to-end acceptance suite. Each test covers one release criterion and
// prints a single PASS/FAIL line with its wall time.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "privdiff/accountant.hpp"
#include "privdiff/diffusion.hpp"
#include "privdiff/experiment.hpp"
#include "privdiff/graph.hpp"
#include "privdiff/metrics.hpp"
#include "privdiff/oracles.hpp"
#include "privdiff/vec.hpp"

namespace privdiff {
namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

void ReportCriterion(int number, const std::string& description,
                     double elapsed_seconds) {
  std::printf("[%s] criterion %02d (%.2fs): %s\n",
              ::testing::Test::HasFailure() ? "FAIL" : "PASS", number,
              elapsed_seconds, description.c_str());
  std::fflush(stdout);
}

AccountantQuery Fig2Query(std::int64_t steps) {
  AccountantQuery q;
  q.alpha = 2.0;
  q.sigma = 0.01;
  q.steps = steps;
  q.rho_diff = 3.2e-5;  // max(4*0.8, 2*0.8) * 1e-5
  q.gamma_max = 0.8;
  return q;
}

std::vector<double> ExtendedAlphaGrid() {
  std::vector<double> grid(default_alpha_grid().begin(),
                           default_alpha_grid().end());
  for (double a : {512.0, 1024.0, 2048.0, 4096.0}) grid.push_back(a);
  return grid;
}

// 1. The scan bound stays bounded in K while plain composition grows
// linearly and is worse by more than 5x at K = 100.
TEST(Acceptance, C01_NonDivergentBound) {
  Stopwatch timer;
  double sup = 0.0;
  for (std::int64_t k = 1; k <= 500; ++k) {
    const double eps = rdp_bound_theorem1(Fig2Query(k)).epsilon;
    ASSERT_TRUE(std::isfinite(eps));
    sup = std::max(sup, eps);
  }
  EXPECT_LT(sup, std::numeric_limits<double>::infinity());
  const double e400 = rdp_bound_theorem1(Fig2Query(400)).epsilon;
  const double e500 = rdp_bound_theorem1(Fig2Query(500)).epsilon;
  EXPECT_LT(std::fabs(e500 - e400), 1e-3 * e400);
  const double comp100 = rdp_bound_composition(Fig2Query(100));
  EXPECT_NEAR(comp100, 100.0 * g_alpha(2.0, 0.01, 3.2e-5), 1e-18);
  for (std::int64_t k : {25, 50, 200}) {
    EXPECT_NEAR(rdp_bound_composition(Fig2Query(2 * k)),
                2.0 * rdp_bound_composition(Fig2Query(k)), 1e-18);
  }
  EXPECT_GT(comp100 / rdp_bound_theorem1(Fig2Query(100)).epsilon, 5.0);
  const double elapsed = timer.seconds();
  EXPECT_LT(elapsed, 1.0);
  ReportCriterion(1, "non-divergent PABI bound vs linear composition",
                  elapsed);
}

// 2. Tracked Wasserstein distance vs thresholding diameter on BlogCatalog
// degrees: w_inf / D = 8 / 667966, independent of eta.
TEST(Acceptance, C02_WassersteinVsDiameter) {
  Stopwatch timer;
  const double expected = 8.0 / 667966.0;
  double previous_ratio = -1.0;
  for (double eta : {1e-10, 1e-7, 1e-4}) {
    const double rho = rho_diff(ppr_schedule(0.8), eta);
    const double w_inf = rho / (1.0 - 0.8);
    const double d = threshold_diameter_degree_sum(eta, 667966);
    const double ratio = w_inf / d;
    EXPECT_NEAR(ratio, expected, 1e-9 * expected);
    EXPECT_LT(ratio, 1e-4);
    if (previous_ratio >= 0.0) {
      EXPECT_NEAR(ratio, previous_ratio, 1e-12 * expected);
    }
    previous_ratio = ratio;
  }
  const double elapsed = timer.seconds();
  EXPECT_LT(elapsed, 1.0);
  ReportCriterion(2, "w_inf/D = 8/667966 independent of eta", elapsed);
}

// 3. Lemma-level distortion soundness over >= 10^4 triples per schedule
// family, plus tightness on the double-star worst case.
TEST(Acceptance, C03_DistortionSoundnessAndTightness) {
  Stopwatch timer;
  struct Family {
    ScheduleTriple triple;
    ClipMode mode;
  };
  const std::vector<Family> families = {
      {{0.8, 0.0, 0.2}, ClipMode::nonnegative_degree},   // fast
      {{0.4, 0.4, 0.2}, ClipMode::nonnegative_degree},   // PPR beta = 0.8
      {{0.1, 0.7, 0.2}, ClipMode::symmetric_degree},     // slow
      {{-0.4, 0.4, 1.0}, ClipMode::symmetric_degree}};   // negative g1
  RngStream rng(20260808, 0);
  for (const Family& family : families) {
    const DiffusionSchedule sched = DiffusionSchedule::constant(family.triple);
    const ThresholdPolicy policy{1e-3, family.mode, {}};
    const double bound = rho_diff(sched, policy.eta);
    std::int64_t triples = 0;
    while (triples < 10000) {
      const NodeId n = static_cast<NodeId>(20 + rng.uniform_int(180));
      const SparseGraph g = make_random_connected_graph(n, 5.0, rng);
      const auto edges = g.edge_list();
      for (int pick = 0; pick < 5; ++pick) {
        EdgePerturbation perturbation;
        if (pick % 2 == 0) {
          const Edge e = edges[static_cast<std::size_t>(
              rng.uniform_int(static_cast<std::int64_t>(edges.size())))];
          if (g.degree(e.u) == 1 || g.degree(e.v) == 1) continue;
          perturbation = {e.u, e.v, EdgePerturbation::Op::remove};
        } else {
          const NodeId u = static_cast<NodeId>(rng.uniform_int(n));
          const NodeId v = static_cast<NodeId>(rng.uniform_int(n));
          if (u == v || g.has_edge(u, v)) continue;
          perturbation = {u, v, EdgePerturbation::Op::add};
        }
        const std::int64_t samples = 40;
        const double observed =
            measure_distortion(g, perturbation, sched, policy, samples, rng);
        ASSERT_LE(observed, bound + 1e-12);
        triples += samples;
      }
    }
  }
  // Tightness: fast schedule, hubs of degree 100 saturating their clips.
  const SparseGraph star = make_double_star(100);
  const DiffusionSchedule fast = DiffusionSchedule::constant({0.8, 0.0, 0.2});
  const ThresholdPolicy policy{1e-3, ClipMode::nonnegative_degree, {}};
  RngStream star_rng(20260809, 0);
  const double observed = measure_distortion(
      star, {0, 1, EdgePerturbation::Op::remove}, fast, policy, 500, star_rng);
  EXPECT_GE(observed, 0.8 * rho_diff(fast, policy.eta));
  const double elapsed = timer.seconds();
  EXPECT_LT(elapsed, 60.0);
  ReportCriterion(3, "single-step distortion <= rho_diff, tight on double star",
                  elapsed);
}

// 4. Diffusion engine against the dense geometric-series oracle.
TEST(Acceptance, C04_EngineMatchesDenseOracle) {
  Stopwatch timer;
  RngStream rng(20260810, 0);
  const double beta = 0.8;
  const std::int64_t steps = 85;  // beta^85 < 1e-8
  ASSERT_LT(std::pow(beta, static_cast<double>(steps)), 1e-8);
  for (int rep = 0; rep < 50; ++rep) {
    const NodeId n = static_cast<NodeId>(20 + rng.uniform_int(180));
    const SparseGraph g = make_random_connected_graph(n, 5.0, rng);
    const NodeId seed = static_cast<NodeId>(rng.uniform_int(n));
    std::vector<double> s(static_cast<std::size_t>(n), 0.0);
    s[static_cast<std::size_t>(seed)] = 1.0;
    const std::vector<double> engine =
        run_exact_diffusion(g, ppr_schedule(beta), s, steps);
    const std::vector<double> oracle = dense_ppr(g, beta, seed, 1e-9);
    EXPECT_LT(l1_distance(engine, oracle), 2e-8);
    EXPECT_NEAR(vec_sum(engine), 1.0, 1e-9);
  }
  const double elapsed = timer.seconds();
  EXPECT_LT(elapsed, 30.0);
  ReportCriterion(4, "exact PPR within 2e-8 of the dense oracle", elapsed);
}

// 5. Calibration round trip: accounting at the calibrated sigma lands in
// [0.99 * target, target] for 100 random DP budgets.
TEST(Acceptance, C05_CalibrationRoundTrip) {
  Stopwatch timer;
  const std::vector<double> grid = ExtendedAlphaGrid();
  RngStream rng(20260811, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const double eps = 0.01 * std::pow(300.0, rng.uniform01());  // [0.01, 3]
    const double beta = 0.5 + 0.45 * rng.uniform01();
    const double eta = std::pow(10.0, -10.0 + 6.0 * rng.uniform01());
    const std::int64_t steps = 10 + rng.uniform_int(191);
    AccountantQuery prototype;
    prototype.steps = steps;
    prototype.gamma_max = beta;
    prototype.rho_diff = rho_diff(ppr_schedule(beta), eta);
    const DpBudget budget{eps, 1e-6};
    const CalibrationResult r =
        calibrate_sigma_dp(budget, prototype, BoundKind::theorem1, {}, grid);
    EXPECT_LE(r.achieved_epsilon, eps * (1 + 1e-9));
    EXPECT_GE(r.achieved_epsilon, 0.99 * eps);
  }
  const double elapsed = timer.seconds();
  EXPECT_LT(elapsed, 10.0);
  ReportCriterion(5, "calibrated sigma accounts back into [0.99t, t]",
                  elapsed);
}

// 6. Ranking metrics: the hand example, the degenerate cases, and exact 1.0
// agreement for a noise-free run with inactive clipping.
TEST(Acceptance, C06_MetricCorrectness) {
  Stopwatch timer;
  const std::vector<double> truth{0.5, 0.3, 0.2};
  const std::vector<double> approx{0.3, 0.5, 0.2};
  EXPECT_NEAR(ndcg_at_r(approx, truth, 3), 0.906479133235, 1e-9);
  EXPECT_DOUBLE_EQ(ndcg_at_r(truth, truth, 3), 1.0);
  EXPECT_LT(ndcg_at_r(std::vector<double>{0.2, 0.3, 0.5}, truth, 3), 1.0);
  EXPECT_DOUBLE_EQ(recall_at_r(truth, truth, 2), 1.0);
  EXPECT_DOUBLE_EQ(
      recall_at_r(std::vector<double>{0.05, 0.1, 0.4, 0.5},
                  std::vector<double>{0.5, 0.4, 0.1, 0.05}, 2),
      0.0);
  EXPECT_EQ(top_r(std::vector<double>{0.5, 0.5}, 1).ids,
            (std::vector<NodeId>{0}));

  RngStream rng(20260812, 0);
  const SparseGraph g = make_preferential_attachment_graph(10000, 5, rng);
  const NodeId seed = 4242;
  std::vector<double> s(static_cast<std::size_t>(g.n()), 0.0);
  s[static_cast<std::size_t>(seed)] = 1.0;
  const ThresholdPolicy policy{1e9, ClipMode::nonnegative_degree, seed};
  RngStream noise_rng(20260812, 1);
  const std::vector<double> noisy =
      run_noisy_diffusion(g, ppr_schedule(0.8), policy, s, 100,
                          {0.0, NoiseKind::laplace, false}, noise_rng);
  const std::vector<double> exact =
      run_exact_diffusion(g, ppr_schedule(0.8), s, 100);
  const std::array<NodeId, 1> exclude{seed};
  EXPECT_DOUBLE_EQ(ndcg_at_r(noisy, exact, 100, exclude), 1.0);
  EXPECT_DOUBLE_EQ(recall_at_r(noisy, exact, 100, exclude), 1.0);
  const double elapsed = timer.seconds();
  ReportCriterion(6, "NDCG/Recall hand values and noise-free agreement",
                  elapsed);
}

// 7. End-to-end ordering on a synthetic power-law graph: the calibrated
// noisy diffusion beats the calibrated edge-flipping baseline at every
// epsilon in {0.1, 0.5, 1}.
TEST(Acceptance, C07_EndToEndOrdering) {
  Stopwatch timer;
  ExperimentConfig cfg;
  cfg.dataset.synthetic_nodes = 10000;
  cfg.dataset.synthetic_edges_per_node = 5;
  cfg.dataset.synthetic_seed = 20260813;
  cfg.methods = {Method::noisy_diffusion, Method::edge_flipping};
  cfg.beta = 0.8;
  cfg.steps = 100;
  cfg.eta_grid = {1e-10, 1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4};
  cfg.epsilon_grid = {0.1, 0.5, 1.0};
  cfg.delta = 0.0;  // 1/#edges
  cfg.rank_cutoff = 100;
  cfg.trials = 20;
  cfg.base_seed = 20260814;
  cfg.bound_kind = BoundKind::personalized;
  cfg.threshold_mode = ClipMode::nonnegative_degree;
  cfg.project_unit_l1 = true;

  const SweepResult sweep = run_privacy_utility_sweep(cfg);
  for (double eps : cfg.epsilon_grid) {
    const SweepRow* best_noisy = nullptr;
    const SweepRow* flip = nullptr;
    for (const SweepRow& row : sweep.rows) {
      if (row.epsilon_dp != eps || row.status != "ok") continue;
      if (row.method == Method::noisy_diffusion && row.best_eta) {
        best_noisy = &row;
      }
      if (row.method == Method::edge_flipping) flip = &row;
    }
    ASSERT_NE(best_noisy, nullptr) << "no feasible noisy row at eps " << eps;
    ASSERT_NE(flip, nullptr) << "no feasible flip row at eps " << eps;
    EXPECT_GT(best_noisy->mean_ndcg, flip->mean_ndcg)
        << "eps=" << eps << " noisy=" << best_noisy->mean_ndcg
        << " (eta=" << best_noisy->eta << ") flip=" << flip->mean_ndcg;
    std::printf(
        "    eps=%.1f: noisy NDCG=%.4f (eta=%.0e, sigma=%.2e)  "
        "flip NDCG=%.4f (p=%.4f)\n",
        eps, best_noisy->mean_ndcg, best_noisy->eta, best_noisy->sigma,
        flip->mean_ndcg, flip->flip_p);
  }
  const double elapsed = timer.seconds();
  EXPECT_LT(elapsed, 7200.0);
  ReportCriterion(7, "noisy diffusion beats edge flipping at every epsilon",
                  elapsed);
}

// 8. At matched DP budgets the composition accountant needs >= 5x the noise
// scale of the scan bound.
TEST(Acceptance, C08_NoiseCalibrationAblation) {
  Stopwatch timer;
  AccountantQuery prototype;
  prototype.steps = 100;
  prototype.gamma_max = 0.8;
  prototype.rho_diff = 3.2e-5;  // Fig. 2 regime
  const double delta = 1.0 / 333983.0;
  for (double eps : {0.1, 0.3, 1.0}) {
    const double sigma_thm =
        calibrate_sigma_dp({eps, delta}, prototype, BoundKind::theorem1).sigma;
    const double sigma_comp =
        calibrate_sigma_dp({eps, delta}, prototype, BoundKind::composition)
            .sigma;
    EXPECT_GE(sigma_comp / sigma_thm, 5.0) << "eps=" << eps;
  }
  const double elapsed = timer.seconds();
  EXPECT_LT(elapsed, 10.0);
  ReportCriterion(8, "composition needs >= 5x the calibrated noise scale",
                  elapsed);
}

// 9. Personalized accounting: zero at K = 1, and for K >= 2 exactly the
// standard scan restricted to tau >= 1.
TEST(Acceptance, C09_PersonalizedConsistency) {
  Stopwatch timer;
  AccountantQuery one = Fig2Query(1);
  one.mode = AccountingMode::personalized;
  EXPECT_EQ(rdp_bound_personalized(one).epsilon, 0.0);
  for (std::int64_t steps : {2, 3, 17, 100, 333}) {
    AccountantQuery q = Fig2Query(steps);
    q.mode = AccountingMode::personalized;
    const double engine = rdp_bound_personalized(q).epsilon;
    double restricted = std::numeric_limits<double>::infinity();
    for (std::int64_t tau = 1; tau < steps; ++tau) {
      const double w = wasserstein_tau(q.rho_diff, q.gamma_max, tau);
      restricted = std::min(
          restricted,
          static_cast<double>(steps - tau) *
                  g_alpha(q.alpha, q.sigma, q.rho_diff) +
              g_alpha(q.alpha, q.sigma,
                      w * std::pow(q.gamma_max,
                                   static_cast<double>(steps - tau))));
    }
    EXPECT_NEAR(engine, restricted, 1e-12);
  }
  const double elapsed = timer.seconds();
  EXPECT_LT(elapsed, 1.0);
  ReportCriterion(9, "personalized bound: 0 at K=1, tau>=1 restriction after",
                  elapsed);
}

// 10. Joint (sigma, eta) scaling leaves every g_alpha-based bound unchanged.
TEST(Acceptance, C10_ScaleInvariance) {
  Stopwatch timer;
  RngStream rng(20260815, 0);
  for (int rep = 0; rep < 100; ++rep) {
    AccountantQuery q;
    q.alpha = 1.5 + rng.uniform01() * 100.0;
    q.sigma = std::pow(10.0, -4.0 + 4.0 * rng.uniform01());
    q.steps = 5 + rng.uniform_int(200);
    q.gamma_max = 0.4 + 0.55 * rng.uniform01();
    q.rho_diff = std::pow(10.0, -8.0 + 4.0 * rng.uniform01());
    const double thm = rdp_bound_theorem1(q).epsilon;
    AccountantQuery qpers = q;
    qpers.mode = AccountingMode::personalized;
    const double pers = rdp_bound_personalized(qpers).epsilon;
    const double comp = rdp_bound_composition(q);
    AccountantQuery qdiam = q;
    qdiam.tracking = Tracking::with_diameter(12.5 * q.rho_diff);
    const double diam = rdp_bound_diameter(qdiam).epsilon;
    const double gauss = rdp_bound_gaussian(q).epsilon;
    for (double c : {0.1, 10.0}) {
      AccountantQuery s = q;
      s.sigma *= c;
      s.rho_diff *= c;
      EXPECT_NEAR(rdp_bound_theorem1(s).epsilon, thm, 1e-12 * thm + 1e-300);
      AccountantQuery sp = s;
      sp.mode = AccountingMode::personalized;
      EXPECT_NEAR(rdp_bound_personalized(sp).epsilon, pers,
                  1e-12 * pers + 1e-300);
      EXPECT_NEAR(rdp_bound_composition(s), comp, 1e-12 * comp + 1e-300);
      AccountantQuery sd = s;
      sd.tracking = Tracking::with_diameter(12.5 * s.rho_diff);
      EXPECT_NEAR(rdp_bound_diameter(sd).epsilon, diam, 1e-12 * diam + 1e-300);
      EXPECT_NEAR(rdp_bound_gaussian(s).epsilon, gauss,
                  1e-12 * gauss + 1e-300);
    }
  }
  const double elapsed = timer.seconds();
  ReportCriterion(10, "bounds invariant under joint (sigma, eta) scaling",
                  elapsed);
}

}  // namespace
}  // namespace privdiff
