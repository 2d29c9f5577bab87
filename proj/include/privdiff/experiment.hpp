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

#ifndef PRIVDIFF_EXPERIMENT_HPP_
#define PRIVDIFF_EXPERIMENT_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "privdiff/accountant.hpp"
#include "privdiff/diffusion.hpp"
#include "privdiff/edge_flipping.hpp"
#include "privdiff/graph.hpp"
#include "privdiff/io.hpp"
#include "privdiff/metrics.hpp"
#include "privdiff/parallel.hpp"
#include "privdiff/rng.hpp"

namespace privdiff {

struct DatasetSpec {
  std::string path;  // empty selects the synthetic generator below
  bool one_indexed = false;
  bool extract_lcc = false;
  NodeId synthetic_nodes = 10000;
  int synthetic_edges_per_node = 5;
  std::uint64_t synthetic_seed = 1;
};

inline SparseGraph resolve_dataset(const DatasetSpec& spec) {
  if (!spec.path.empty()) {
    LoadOptions opts{spec.one_indexed, spec.extract_lcc};
    return load_edge_list_file(spec.path, opts).graph;
  }
  RngStream rng(spec.synthetic_seed, 0x5eedULL);
  return make_preferential_attachment_graph(spec.synthetic_nodes,
                                            spec.synthetic_edges_per_node, rng);
}

enum class Method { noisy_diffusion, edge_flipping };

inline const char* method_name(Method m) {
  return m == Method::noisy_diffusion ? "noisy_diffusion" : "edge_flipping";
}

struct ExperimentConfig {
  DatasetSpec dataset;
  std::vector<Method> methods{Method::noisy_diffusion};
  double beta = 0.8;
  std::int64_t steps = 100;
  std::vector<double> eta_grid{1e-10, 1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4};
  std::vector<double> epsilon_grid{0.1, 0.5, 1.0};
  double delta = 0.0;  // 0 selects 1/#edges of the loaded graph
  std::int64_t rank_cutoff = 100;
  std::int64_t trials = 100;
  std::uint64_t base_seed = 20260101;
  BoundKind bound_kind = BoundKind::personalized;
  ClipMode threshold_mode = ClipMode::nonnegative_degree;
  bool project_unit_l1 = true;
  double l1_radius = 1.0;
  NoiseKind noise_kind = NoiseKind::laplace;
  std::vector<double> alpha_grid;  // empty selects the default grid
  double trial_timeout_seconds = 43200.0;  // single-trial guard

  void validate() const {
    if (eta_grid.empty() || epsilon_grid.empty()) {
      throw std::invalid_argument("config: grids must be non-empty");
    }
    if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (delta < 0.0 || delta >= 1.0) {
      throw std::invalid_argument("config: delta must lie in [0, 1)");
    }
    if (!(beta > 0.0 && beta < 1.0)) {
      throw std::invalid_argument("config: beta must lie in (0, 1)");
    }
    if (steps < 1 || rank_cutoff < 1) {
      throw std::invalid_argument("config: steps and rank cutoff must be >= 1");
    }
  }

  std::span<const double> alphas() const {
    return alpha_grid.empty() ? default_alpha_grid()
                              : std::span<const double>(alpha_grid);
  }
};

struct TrialReport {
  std::int64_t trial_id = 0;
  NodeId seed_node = 0;
  double sigma = std::numeric_limits<double>::quiet_NaN();
  double flip_p = std::numeric_limits<double>::quiet_NaN();
  double ndcg = 0.0;
  double recall = 0.0;
  double runtime_seconds = 0.0;
  std::uint64_t rng_seed = 0;
  std::uint64_t rng_stream = 0;
};

struct SweepRow {
  Method method = Method::noisy_diffusion;
  double epsilon_dp = 0.0;
  double delta = 0.0;
  double eta = std::numeric_limits<double>::quiet_NaN();
  double sigma = std::numeric_limits<double>::quiet_NaN();
  double flip_p = std::numeric_limits<double>::quiet_NaN();
  double alpha_star = 0.0;
  std::int64_t tau_star = 0;
  // DP level re-derived from the stored noise parameter; never above
  // epsilon_dp (no under-reporting).
  double epsilon_dp_check = 0.0;
  std::int64_t trials = 0;
  double mean_ndcg = 0.0;
  double ci95_ndcg = 0.0;
  double mean_recall = 0.0;
  double ci95_recall = 0.0;
  std::string status = "ok";  // ok | infeasible | skipped
  bool best_eta = false;
  std::vector<TrialReport> trial_reports;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::int64_t feasible_rows = 0;
};

namespace detail {

inline std::uint64_t trial_stream_id(std::uint64_t method, std::uint64_t eps_i,
                                     std::uint64_t eta_i, std::uint64_t trial) {
  std::uint64_t h = splitmix64(0x70726976ULL ^ (method + 1));
  h = splitmix64(h ^ (eps_i + 1));
  h = splitmix64(h ^ ((eta_i + 1) << 8));
  h = splitmix64(h ^ ((trial + 1) << 16));
  return h;
}

struct Aggregate {
  double mean = 0.0;
  double ci95 = 0.0;
};

// Normal-approximation 95% interval: half-width 1.96 * sd / sqrt(n).
inline Aggregate aggregate(const std::vector<double>& xs) {
  Aggregate a;
  if (xs.empty()) return a;
  double sum = 0.0;
  for (double x : xs) sum += x;
  a.mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return a;
  double ss = 0.0;
  for (double x : xs) ss += (x - a.mean) * (x - a.mean);
  const double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  a.ci95 = 1.96 * sd / std::sqrt(static_cast<double>(xs.size()));
  return a;
}

}  // namespace detail

// The paper's ranking protocol: per (epsilon, eta) calibrate the noise to the
// budget, run `trials` noisy diffusions from per-trial random seed nodes,
// score NDCG@R / Recall@R against the noise-free PPR from the same node
// (seed excluded from both rankings), aggregate with 95% intervals, and flag
// the best-eta row per epsilon. Seed nodes are shared across methods and
// cells (paired trials). Edge-flipping rows calibrate the flip probability
// instead and run exact PPR on the flipped graph.
inline SweepResult run_privacy_utility_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const SparseGraph g = resolve_dataset(cfg.dataset);
  const double delta =
      cfg.delta > 0.0 ? cfg.delta : 1.0 / static_cast<double>(g.num_edges());
  const DiffusionSchedule sched = ppr_schedule(cfg.beta);
  const double rho = rho_diff(sched, 1.0);  // per unit eta; scales linearly

  // Paired seed nodes for every cell and method.
  std::vector<NodeId> seed_nodes(static_cast<std::size_t>(cfg.trials));
  {
    RngStream seed_rng(cfg.base_seed, 0xFEEDULL);
    for (auto& s : seed_nodes) {
      s = static_cast<NodeId>(seed_rng.uniform_int(g.n()));
    }
  }

  // Noise-free references, one per distinct seed node.
  std::map<NodeId, std::vector<double>> references;
  for (NodeId s : seed_nodes) references.emplace(s, std::vector<double>{});
  {
    std::vector<std::pair<NodeId, std::vector<double>*>> slots;
    for (auto& [node, ref] : references) slots.emplace_back(node, &ref);
    parallel_for(0, static_cast<std::int64_t>(slots.size()),
                 [&](std::int64_t i) {
                   const auto& [node, ref] = slots[static_cast<std::size_t>(i)];
                   std::vector<double> s(static_cast<std::size_t>(g.n()), 0.0);
                   s[static_cast<std::size_t>(node)] = 1.0;
                   *ref = run_exact_diffusion(g, sched, s, cfg.steps);
                 });
  }
  const bool personalized = cfg.bound_kind == BoundKind::personalized;

  SweepResult result;
  const auto now = [] { return std::chrono::steady_clock::now(); };
  const auto seconds_since = [](auto t0, auto t1) {
    return std::chrono::duration<double>(t1 - t0).count();
  };

  for (Method method : cfg.methods) {
    for (std::size_t ei = 0; ei < cfg.epsilon_grid.size(); ++ei) {
      const double eps = cfg.epsilon_grid[ei];
      const std::size_t eta_cells =
          method == Method::noisy_diffusion ? cfg.eta_grid.size() : 1;
      for (std::size_t hi = 0; hi < eta_cells; ++hi) {
        SweepRow row;
        row.method = method;
        row.epsilon_dp = eps;
        row.delta = delta;
        row.trials = cfg.trials;

        CalibrationResult calib;
        FlipCalibration flip_calib;
        try {
          if (method == Method::noisy_diffusion) {
            row.eta = cfg.eta_grid[hi];
            AccountantQuery prototype;
            prototype.steps = cfg.steps;
            prototype.rho_diff = rho * row.eta;
            prototype.gamma_max = sched.gamma_max();
            prototype.mode = cfg.bound_kind == BoundKind::personalized
                                 ? AccountingMode::personalized
                                 : AccountingMode::standard;
            calib = calibrate_sigma_dp({eps, delta}, prototype, cfg.bound_kind,
                                       {}, cfg.alphas());
            row.sigma = calib.sigma;
            row.alpha_star = calib.alpha_star;
            row.tau_star = calib.tau_star;
            row.epsilon_dp_check = calib.achieved_epsilon;
          } else {
            flip_calib = calibrate_flip_prob({eps, delta}, {}, cfg.alphas());
            row.flip_p = flip_calib.p;
            row.alpha_star = flip_calib.alpha_star;
            row.epsilon_dp_check = flip_calib.achieved_eps_dp;
          }
        } catch (const InfeasibleTargetError&) {
          row.status = "infeasible";
          result.rows.push_back(std::move(row));
          continue;
        }

        row.trial_reports.resize(static_cast<std::size_t>(cfg.trials));
        const auto run_trial = [&](std::int64_t t) {
          TrialReport& report =
              row.trial_reports[static_cast<std::size_t>(t)];
          const auto t0 = now();
          const NodeId seed_node = seed_nodes[static_cast<std::size_t>(t)];
          const std::uint64_t stream = detail::trial_stream_id(
              static_cast<std::uint64_t>(method), ei, hi,
              static_cast<std::uint64_t>(t));
          RngStream rng(cfg.base_seed, stream);
          std::vector<double> scores;
          if (method == Method::noisy_diffusion) {
            std::vector<double> s(static_cast<std::size_t>(g.n()), 0.0);
            s[static_cast<std::size_t>(seed_node)] = 1.0;
            // The seed exemption is only sound under personalized accounting.
            ThresholdPolicy policy{row.eta, cfg.threshold_mode,
                                   personalized ? std::optional<NodeId>(seed_node)
                                                : std::nullopt};
            NoiseOptions noise{row.sigma, cfg.noise_kind, cfg.project_unit_l1,
                               cfg.l1_radius};
            scores = run_noisy_diffusion(g, sched, policy, s, cfg.steps, noise,
                                         rng);
            report.sigma = row.sigma;
          } else {
            FlipConfig fc;
            fc.p = row.flip_p;
            if (personalized) fc.personalized_seed = seed_node;
            fc.node_limit = std::max<NodeId>(g.n(), 20000);
            const FlipResult flipped = edge_flipping(g, fc, rng);
            scores =
                flipped_ppr_scores(flipped, seed_node, cfg.beta, cfg.steps);
            report.flip_p = row.flip_p;
          }
          const std::vector<double>& reference = references.at(seed_node);
          const std::array<NodeId, 1> exclude{seed_node};
          report.trial_id = t;
          report.seed_node = seed_node;
          report.ndcg =
              ndcg_at_r(scores, reference, cfg.rank_cutoff, exclude);
          report.recall =
              recall_at_r(scores, reference, cfg.rank_cutoff, exclude);
          report.rng_seed = cfg.base_seed;
          report.rng_stream = stream;
          report.runtime_seconds = seconds_since(t0, now());
        };

        // Single-trial timeout guard: probe trial 0 serially first.
        run_trial(0);
        if (row.trial_reports[0].runtime_seconds > cfg.trial_timeout_seconds) {
          row.status = "skipped";
          row.trial_reports.clear();
          result.rows.push_back(std::move(row));
          continue;
        }
        parallel_for(1, cfg.trials, run_trial);

        std::vector<double> ndcgs, recalls;
        for (const TrialReport& r : row.trial_reports) {
          ndcgs.push_back(r.ndcg);
          recalls.push_back(r.recall);
        }
        const detail::Aggregate an = detail::aggregate(ndcgs);
        const detail::Aggregate ar = detail::aggregate(recalls);
        row.mean_ndcg = an.mean;
        row.ci95_ndcg = an.ci95;
        row.mean_recall = ar.mean;
        row.ci95_recall = ar.ci95;
        ++result.feasible_rows;
        result.rows.push_back(std::move(row));
      }
    }
  }

  // Best-eta flag per (noisy, epsilon): highest mean NDCG, ties to smaller eta.
  for (std::size_t ei = 0; ei < cfg.epsilon_grid.size(); ++ei) {
    SweepRow* best = nullptr;
    for (SweepRow& row : result.rows) {
      if (row.method != Method::noisy_diffusion || row.status != "ok" ||
          row.epsilon_dp != cfg.epsilon_grid[ei]) {
        continue;
      }
      if (!best || row.mean_ndcg > best->mean_ndcg ||
          (row.mean_ndcg == best->mean_ndcg && row.eta < best->eta)) {
        best = &row;
      }
    }
    if (best) best->best_eta = true;
  }
  return result;
}

inline void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  const auto opt = [](double v) {
    return std::isnan(v) ? std::string() : format_double(v);
  };
  const std::vector<std::string> header{
      "method",      "epsilon_dp", "delta",       "eta",
      "sigma",       "flip_p",     "alpha_star",  "tau_star",
      "epsilon_dp_check", "trials", "mean_ndcg",  "ci95_ndcg",
      "mean_recall", "ci95_recall", "status",     "best_eta"};
  write_csv_row(out, header);
  for (const SweepRow& row : sweep.rows) {
    const bool ok = row.status == "ok";
    const std::vector<std::string> fields{
        method_name(row.method),
        format_double(row.epsilon_dp),
        format_double(row.delta),
        opt(row.eta),
        opt(row.sigma),
        opt(row.flip_p),
        row.status == "infeasible" ? std::string() : format_double(row.alpha_star),
        std::to_string(row.tau_star),
        row.status == "infeasible" ? std::string() : format_double(row.epsilon_dp_check),
        std::to_string(row.trials),
        ok ? format_double(row.mean_ndcg) : std::string(),
        ok ? format_double(row.ci95_ndcg) : std::string(),
        ok ? format_double(row.mean_recall) : std::string(),
        ok ? format_double(row.ci95_recall) : std::string(),
        row.status,
        row.best_eta ? "1" : "0"};
    write_csv_row(out, fields);
  }
}

inline void write_trials_jsonl(std::ostream& out, const SweepResult& sweep) {
  for (const SweepRow& row : sweep.rows) {
    for (const TrialReport& r : row.trial_reports) {
      nlohmann::json j{{"method", method_name(row.method)},
                       {"epsilon_dp", row.epsilon_dp},
                       {"delta", row.delta},
                       {"trial", r.trial_id},
                       {"seed_node", r.seed_node},
                       {"ndcg", r.ndcg},
                       {"recall", r.recall},
                       {"runtime_seconds", r.runtime_seconds},
                       {"rng_seed", r.rng_seed},
                       {"rng_stream", r.rng_stream}};
      if (!std::isnan(row.eta)) j["eta"] = row.eta;
      if (!std::isnan(r.sigma)) j["sigma"] = r.sigma;
      if (!std::isnan(r.flip_p)) j["flip_p"] = r.flip_p;
      out << j.dump() << '\n';
    }
  }
}

// --- Bound curves -----------------------------------------------------------

struct CurveConfig {
  ScheduleTriple gammas{0.8, 0.0, 0.2};
  double eta = 1e-5;
  double alpha = 2.0;
  double sigma = 0.01;
  std::int64_t k_max = 200;
  std::int64_t steps_for_sigma = 100;
  double delta = 1.0 / 333983.0;
  std::vector<double> epsilon_grid{0.1, 0.3, 1.0};
  std::int64_t degree_sum = 667966;  // threshold-diameter input
  std::int64_t n_nodes = 10312;      // uniform-diameter input
  std::vector<double> alpha_grid;

  std::span<const double> alphas() const {
    return alpha_grid.empty() ? default_alpha_grid()
                              : std::span<const double>(alpha_grid);
  }
};

struct BoundCurvePoint {
  std::int64_t k = 0;
  double theorem1 = 0.0;
  double personalized = 0.0;
  double composition = 0.0;
  double diameter_unit_l1 = 0.0;
  double diameter_threshold = 0.0;
  double gaussian = 0.0;
};

struct WassersteinPoint {
  std::int64_t tau = 0;
  double w_tau = 0.0;
  double diameter_degree = 0.0;
  double diameter_uniform = 0.0;
};

struct SigmaPoint {
  double epsilon_dp = 0.0;
  double sigma_theorem1 = 0.0;
  double sigma_composition = 0.0;
  double ratio = 0.0;
};

struct BoundCurves {
  std::vector<BoundCurvePoint> bounds_vs_k;
  std::vector<WassersteinPoint> w_vs_tau;
  std::vector<SigmaPoint> sigma_vs_eps;
};

inline BoundCurves emit_bound_curves(const CurveConfig& cfg) {
  const DiffusionSchedule sched = DiffusionSchedule::constant(cfg.gammas);
  const double rho = rho_diff(sched, cfg.eta);
  BoundCurves curves;

  for (std::int64_t k = 1; k <= cfg.k_max; ++k) {
    AccountantQuery q;
    q.alpha = cfg.alpha;
    q.sigma = cfg.sigma;
    q.steps = k;
    q.rho_diff = rho;
    q.gamma_max = sched.gamma_max();
    BoundCurvePoint p;
    p.k = k;
    p.theorem1 = rdp_bound_theorem1(q).epsilon;
    AccountantQuery qp = q;
    qp.mode = AccountingMode::personalized;
    p.personalized = rdp_bound_personalized(qp).epsilon;
    p.composition = rdp_bound_composition(q);
    AccountantQuery qd = q;
    qd.tracking = Tracking::with_diameter(diameter_unit_l1());
    p.diameter_unit_l1 = rdp_bound_diameter(qd).epsilon;
    qd.tracking = Tracking::with_diameter(
        threshold_diameter_degree_sum(cfg.eta, cfg.degree_sum));
    p.diameter_threshold = rdp_bound_diameter(qd).epsilon;
    p.gaussian = rdp_bound_gaussian(q).epsilon;
    curves.bounds_vs_k.push_back(p);
  }

  for (std::int64_t tau = 0; tau <= cfg.k_max; ++tau) {
    WassersteinPoint p;
    p.tau = tau;
    p.w_tau = wasserstein_tau(rho, sched.gamma_max(), tau);
    p.diameter_degree = threshold_diameter_degree_sum(cfg.eta, cfg.degree_sum);
    p.diameter_uniform = threshold_diameter_uniform(cfg.eta, cfg.n_nodes);
    curves.w_vs_tau.push_back(p);
  }

  for (double eps : cfg.epsilon_grid) {
    AccountantQuery prototype;
    prototype.steps = cfg.steps_for_sigma;
    prototype.rho_diff = rho;
    prototype.gamma_max = sched.gamma_max();
    SigmaPoint p;
    p.epsilon_dp = eps;
    p.sigma_theorem1 = calibrate_sigma_dp({eps, cfg.delta}, prototype,
                                          BoundKind::theorem1, {}, cfg.alphas())
                           .sigma;
    p.sigma_composition =
        calibrate_sigma_dp({eps, cfg.delta}, prototype, BoundKind::composition,
                           {}, cfg.alphas())
            .sigma;
    p.ratio = p.sigma_composition / p.sigma_theorem1;
    curves.sigma_vs_eps.push_back(p);
  }
  return curves;
}

inline void write_bounds_vs_k_csv(std::ostream& out, const BoundCurves& c) {
  write_csv_row(out, std::vector<std::string>{
                         "K", "theorem1", "personalized", "composition",
                         "diameter_unit_l1", "diameter_threshold", "gaussian"});
  for (const BoundCurvePoint& p : c.bounds_vs_k) {
    write_csv_row(out, std::vector<std::string>{
                           std::to_string(p.k), format_double(p.theorem1),
                           format_double(p.personalized),
                           format_double(p.composition),
                           format_double(p.diameter_unit_l1),
                           format_double(p.diameter_threshold),
                           format_double(p.gaussian)});
  }
}

inline void write_w_vs_tau_csv(std::ostream& out, const BoundCurves& c) {
  write_csv_row(out, std::vector<std::string>{"tau", "w_tau", "diameter_degree",
                                              "diameter_uniform"});
  for (const WassersteinPoint& p : c.w_vs_tau) {
    write_csv_row(out, std::vector<std::string>{
                           std::to_string(p.tau), format_double(p.w_tau),
                           format_double(p.diameter_degree),
                           format_double(p.diameter_uniform)});
  }
}

inline void write_sigma_vs_eps_csv(std::ostream& out, const BoundCurves& c) {
  write_csv_row(out, std::vector<std::string>{"epsilon_dp", "sigma_theorem1",
                                              "sigma_composition", "ratio"});
  for (const SigmaPoint& p : c.sigma_vs_eps) {
    write_csv_row(out, std::vector<std::string>{
                           format_double(p.epsilon_dp),
                           format_double(p.sigma_theorem1),
                           format_double(p.sigma_composition),
                           format_double(p.ratio)});
  }
}

// --- JSON config ------------------------------------------------------------

inline ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  if (j.contains("dataset")) {
    const auto& d = j.at("dataset");
    if (d.contains("path")) cfg.dataset.path = d.at("path").get<std::string>();
    if (d.contains("one_indexed")) cfg.dataset.one_indexed = d.at("one_indexed");
    if (d.contains("extract_lcc")) cfg.dataset.extract_lcc = d.at("extract_lcc");
    if (d.contains("synthetic")) {
      const auto& s = d.at("synthetic");
      if (s.contains("nodes")) cfg.dataset.synthetic_nodes = s.at("nodes");
      if (s.contains("edges_per_node")) {
        cfg.dataset.synthetic_edges_per_node = s.at("edges_per_node");
      }
      if (s.contains("seed")) cfg.dataset.synthetic_seed = s.at("seed");
    }
  }
  if (j.contains("method")) {
    const std::string m = j.at("method").get<std::string>();
    if (m == "noisy_diffusion") {
      cfg.methods = {Method::noisy_diffusion};
    } else if (m == "edge_flipping") {
      cfg.methods = {Method::edge_flipping};
    } else if (m == "both") {
      cfg.methods = {Method::noisy_diffusion, Method::edge_flipping};
    } else {
      throw std::invalid_argument("config: unknown method '" + m + "'");
    }
  }
  if (j.contains("beta")) cfg.beta = j.at("beta");
  if (j.contains("steps")) cfg.steps = j.at("steps");
  if (j.contains("eta_grid")) cfg.eta_grid = j.at("eta_grid").get<std::vector<double>>();
  if (j.contains("epsilon_grid")) {
    cfg.epsilon_grid = j.at("epsilon_grid").get<std::vector<double>>();
  }
  if (j.contains("delta")) cfg.delta = j.at("delta");
  if (j.contains("rank_cutoff")) cfg.rank_cutoff = j.at("rank_cutoff");
  if (j.contains("trials")) cfg.trials = j.at("trials");
  if (j.contains("base_seed")) cfg.base_seed = j.at("base_seed");
  if (j.contains("bound_kind")) {
    const std::string b = j.at("bound_kind").get<std::string>();
    if (b == "theorem1") cfg.bound_kind = BoundKind::theorem1;
    else if (b == "personalized") cfg.bound_kind = BoundKind::personalized;
    else if (b == "composition") cfg.bound_kind = BoundKind::composition;
    else if (b == "gaussian") cfg.bound_kind = BoundKind::gaussian;
    else throw std::invalid_argument("config: unknown bound_kind '" + b + "'");
  }
  if (j.contains("threshold_mode")) {
    const std::string t = j.at("threshold_mode").get<std::string>();
    if (t == "symmetric_degree") cfg.threshold_mode = ClipMode::symmetric_degree;
    else if (t == "nonnegative_degree") {
      cfg.threshold_mode = ClipMode::nonnegative_degree;
    } else if (t == "uniform") cfg.threshold_mode = ClipMode::uniform;
    else if (t == "nonnegative_uniform") {
      cfg.threshold_mode = ClipMode::nonnegative_uniform;
    } else {
      throw std::invalid_argument("config: unknown threshold_mode '" + t + "'");
    }
  }
  if (j.contains("project_l1")) cfg.project_unit_l1 = j.at("project_l1");
  if (j.contains("l1_radius")) cfg.l1_radius = j.at("l1_radius");
  if (j.contains("noise_kind")) {
    const std::string k = j.at("noise_kind").get<std::string>();
    if (k == "laplace") cfg.noise_kind = NoiseKind::laplace;
    else if (k == "gaussian") cfg.noise_kind = NoiseKind::gaussian;
    else throw std::invalid_argument("config: unknown noise_kind '" + k + "'");
  }
  if (j.contains("alpha_grid")) {
    cfg.alpha_grid = j.at("alpha_grid").get<std::vector<double>>();
  }
  if (j.contains("trial_timeout_seconds")) {
    cfg.trial_timeout_seconds = j.at("trial_timeout_seconds");
  }
  return cfg;
}

}  // namespace privdiff

#endif  // PRIVDIFF_EXPERIMENT_HPP_
