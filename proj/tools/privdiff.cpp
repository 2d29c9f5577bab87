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
// privdiff: edge-level differentially private graph diffusion.
//
// Subcommands: ingest | diffuse | account | calibrate | verify | sweep |
// curves | flip-baseline. Exit codes: 0 success, 1 I/O or validation error,
// 2 infeasible privacy target (sweep: infeasible across all rows).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "privdiff/accountant.hpp"
#include "privdiff/diffusion.hpp"
#include "privdiff/edge_flipping.hpp"
#include "privdiff/experiment.hpp"
#include "privdiff/graph.hpp"
#include "privdiff/io.hpp"
#include "privdiff/oracles.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

privdiff::ClipMode parse_clip_mode(const std::string& name) {
  if (name == "symmetric_degree") return privdiff::ClipMode::symmetric_degree;
  if (name == "nonnegative_degree") return privdiff::ClipMode::nonnegative_degree;
  if (name == "uniform") return privdiff::ClipMode::uniform;
  if (name == "nonnegative_uniform") return privdiff::ClipMode::nonnegative_uniform;
  throw CLI::ValidationError("unknown threshold mode '" + name + "'");
}

privdiff::BoundKind parse_bound_kind(const std::string& name) {
  if (name == "theorem1") return privdiff::BoundKind::theorem1;
  if (name == "personalized") return privdiff::BoundKind::personalized;
  if (name == "composition") return privdiff::BoundKind::composition;
  if (name == "diameter") return privdiff::BoundKind::diameter;
  if (name == "gaussian") return privdiff::BoundKind::gaussian;
  throw CLI::ValidationError("unknown bound kind '" + name + "'");
}

std::ofstream open_out(const std::string& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  return out;
}

struct ScheduleArgs {
  double beta = 0.0;         // PPR shortcut
  std::vector<double> gammas;  // or an explicit triple

  privdiff::DiffusionSchedule make() const {
    if (beta > 0.0) return privdiff::ppr_schedule(beta);
    if (gammas.size() == 3) {
      return privdiff::DiffusionSchedule::constant(
          {gammas[0], gammas[1], gammas[2]});
    }
    throw CLI::ValidationError("give either --beta or --gammas g1 g2 g3");
  }
};

void add_schedule_flags(CLI::App* cmd, ScheduleArgs* args) {
  cmd->add_option("--beta", args->beta,
                  "PPR teleport complement; schedule (b/2, b/2, 1-b)");
  cmd->add_option("--gammas", args->gammas,
                  "explicit constant triple g1 g2 g3 (sums to 1)")
      ->expected(3);
}

int run_ingest(const std::string& input, bool one_indexed, bool extract_lcc,
               const std::string& output, const std::string& id_map_path) {
  privdiff::LoadResult loaded =
      privdiff::load_edge_list_file(input, {one_indexed, extract_lcc});
  if (!output.empty()) {
    auto out = open_out(output);
    privdiff::write_edge_list(out, loaded.graph);
  }
  if (!id_map_path.empty()) {
    auto out = open_out(id_map_path);
    for (std::size_t i = 0; i < loaded.new_to_old.size(); ++i) {
      out << i << ' ' << loaded.new_to_old[i] << '\n';
    }
  }
  json report{{"nodes", loaded.graph.n()},
              {"edges", loaded.graph.num_edges()},
              {"self_loops_dropped", loaded.self_loops_dropped},
              {"duplicates_removed", loaded.duplicates_removed},
              {"lcc_extracted", loaded.lcc_extracted},
              {"original_nodes", loaded.original_nodes}};
  std::cout << report.dump() << '\n';
  return kExitOk;
}

int main_impl(int argc, char** argv) {
  CLI::App app{"edge-level differentially private graph diffusion"};
  app.require_subcommand(1);

  // ingest ----------------------------------------------------------------
  auto* ingest = app.add_subcommand("ingest", "load, validate, canonicalize");
  std::string in_path, out_path, id_map_path;
  bool one_indexed = false, extract_lcc = false;
  ingest->add_option("--input", in_path, "edge-list file")->required();
  ingest->add_flag("--one-indexed", one_indexed, "input ids start at 1");
  ingest->add_flag("--extract-lcc", extract_lcc,
                   "keep the largest connected component");
  ingest->add_option("--output", out_path, "canonical edge-list output");
  ingest->add_option("--id-map", id_map_path, "new->old id map output");

  // diffuse ---------------------------------------------------------------
  auto* diffuse = app.add_subcommand("diffuse", "run one diffusion");
  std::string d_input, d_output, d_format = "json", d_mode = "nonnegative_degree";
  std::string d_noise = "laplace";
  bool d_one_indexed = false, d_lcc = false, d_project = false,
       d_exempt_seed = false;
  std::int64_t d_seed_node = 0, d_steps = 100;
  double d_beta = 0.8, d_sigma = 0.0, d_eta = 0.0, d_radius = 1.0;
  std::uint64_t d_rng_seed = 1, d_rng_stream = 0;
  diffuse->add_option("--input", d_input, "edge-list file")->required();
  diffuse->add_flag("--one-indexed", d_one_indexed, "input ids start at 1");
  diffuse->add_flag("--extract-lcc", d_lcc, "load the LCC");
  diffuse->add_option("--seed-node", d_seed_node, "diffusion seed node")
      ->required();
  diffuse->add_option("--beta", d_beta, "PPR parameter");
  diffuse->add_option("--steps", d_steps, "diffusion steps K");
  diffuse->add_option("--sigma", d_sigma, "Laplace scale (0 = noise-free)");
  diffuse->add_option("--eta", d_eta, "threshold (0 = no thresholding)");
  diffuse->add_option("--threshold-mode", d_mode,
                      "symmetric_degree|nonnegative_degree|uniform|"
                      "nonnegative_uniform");
  diffuse->add_flag("--exempt-seed", d_exempt_seed,
                    "personalized seed exemption from the upper clip");
  diffuse->add_flag("--project", d_project, "project onto the l1 ball");
  diffuse->add_option("--l1-radius", d_radius, "projection radius");
  diffuse->add_option("--noise", d_noise, "laplace|gaussian");
  diffuse->add_option("--rng-seed", d_rng_seed, "RNG seed");
  diffuse->add_option("--rng-stream", d_rng_stream, "RNG stream id");
  diffuse->add_option("--format", d_format, "json|binary");
  diffuse->add_option("--output", d_output, "score vector output file");

  // account ---------------------------------------------------------------
  auto* account = app.add_subcommand("account", "evaluate a privacy bound");
  ScheduleArgs a_sched;
  add_schedule_flags(account, &a_sched);
  std::string a_bound = "theorem1";
  double a_alpha = 2.0, a_sigma = 0.0, a_eta = 0.0, a_rho = -1.0, a_delta = 0.0,
         a_diameter = 0.0;
  std::int64_t a_steps = 100, a_diameter_degree_sum = 0, a_diameter_n = 0;
  std::vector<double> a_grid;
  account->add_option("--alpha", a_alpha, "Renyi order");
  account->add_option("--sigma", a_sigma, "noise scale")->required();
  account->add_option("--steps", a_steps, "diffusion steps K");
  account->add_option("--eta", a_eta, "threshold (sets rho_diff)");
  account->add_option("--rho-diff", a_rho, "distortion override");
  account->add_option("--bound", a_bound,
                      "theorem1|personalized|composition|diameter|gaussian");
  account->add_option("--diameter", a_diameter, "explicit diameter D");
  account->add_option("--diameter-degree-sum", a_diameter_degree_sum,
                      "D = eta * degree_sum");
  account->add_option("--diameter-uniform-n", a_diameter_n, "D = eta * n");
  account->add_option("--delta", a_delta, "also convert to (eps, delta)-DP");
  account->add_option("--alpha-grid", a_grid, "conversion grid override");

  // calibrate ---------------------------------------------------------------
  auto* calibrate = app.add_subcommand("calibrate", "noise/flip calibration");
  ScheduleArgs c_sched;
  add_schedule_flags(calibrate, &c_sched);
  std::string c_bound = "personalized", c_mechanism = "noise";
  double c_eps = 0.0, c_delta = 0.0, c_eps_rdp = 0.0, c_alpha = 0.0,
         c_eta = 0.0;
  std::int64_t c_steps = 100;
  std::vector<double> c_grid;
  calibrate->add_option("--epsilon", c_eps, "DP target epsilon");
  calibrate->add_option("--delta", c_delta, "DP target delta");
  calibrate->add_option("--epsilon-rdp", c_eps_rdp, "raw RDP target");
  calibrate->add_option("--alpha", c_alpha, "alpha for the raw RDP target");
  calibrate->add_option("--eta", c_eta, "threshold");
  calibrate->add_option("--steps", c_steps, "diffusion steps K");
  calibrate->add_option("--bound", c_bound, "bound kind");
  calibrate->add_option("--mechanism", c_mechanism, "noise|flip");
  calibrate->add_option("--alpha-grid", c_grid, "conversion grid override");

  // verify ------------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "run the oracle suite");
  std::uint64_t v_seed = 20260301;
  verify->add_option("--seed", v_seed, "oracle RNG seed");

  // sweep ---------------------------------------------------------------
  auto* sweep = app.add_subcommand("sweep", "privacy-utility sweep");
  std::string s_config, s_csv, s_jsonl, s_dataset, s_method, s_bound,
      s_threshold;
  std::vector<double> s_eps, s_eta;
  std::int64_t s_trials = -1, s_steps = -1;
  double s_beta = -1.0, s_delta = -1.0;
  std::uint64_t s_base_seed = 0;
  bool s_standard = false, s_has_seed = false;
  sweep->add_option("--config", s_config, "JSON config file");
  sweep->add_option("--dataset", s_dataset, "edge-list path override");
  sweep->add_option("--method", s_method,
                    "noisy_diffusion|edge_flipping|both");
  sweep->add_option("--epsilon-grid", s_eps, "DP epsilon grid override");
  sweep->add_option("--eta-grid", s_eta, "threshold grid override");
  sweep->add_option("--trials", s_trials, "trials per cell");
  sweep->add_option("--steps", s_steps, "diffusion steps K");
  sweep->add_option("--beta", s_beta, "PPR parameter");
  sweep->add_option("--delta", s_delta, "DP delta (default 1/#edges)");
  sweep
      ->add_option("--base-seed", s_base_seed, "base RNG seed")
      ->each([&](const std::string&) { s_has_seed = true; });
  sweep->add_option("--bound", s_bound, "bound kind override");
  sweep->add_option("--threshold-mode", s_threshold, "clip mode override");
  sweep->add_flag("--standard", s_standard,
                  "standard (non-personalized) accounting");
  sweep->add_option("--csv", s_csv, "aggregate CSV output");
  sweep->add_option("--trials-jsonl", s_jsonl, "per-trial JSONL output");

  // curves ------------------------------------------------------------------
  auto* curves = app.add_subcommand("curves", "bound/calibration curves");
  privdiff::CurveConfig curve_cfg;
  std::vector<double> k_gammas;
  std::string k_out_dir = ".";
  curves->add_option("--gammas", k_gammas, "constant triple g1 g2 g3")
      ->expected(3);
  curves->add_option("--eta", curve_cfg.eta, "threshold");
  curves->add_option("--alpha", curve_cfg.alpha, "Renyi order");
  curves->add_option("--sigma", curve_cfg.sigma, "noise scale");
  curves->add_option("--k-max", curve_cfg.k_max, "largest K");
  curves->add_option("--steps", curve_cfg.steps_for_sigma,
                     "K for the sigma-vs-epsilon table");
  curves->add_option("--delta", curve_cfg.delta, "DP delta");
  curves->add_option("--epsilon-grid", curve_cfg.epsilon_grid,
                     "DP epsilon grid");
  curves->add_option("--degree-sum", curve_cfg.degree_sum,
                     "sum of degrees for the threshold diameter");
  curves->add_option("--n-nodes", curve_cfg.n_nodes,
                     "node count for the uniform diameter");
  curves->add_option("--out-dir", k_out_dir, "output directory");

  // flip-baseline -----------------------------------------------------------
  auto* flip = app.add_subcommand("flip-baseline", "edge-flipping release");
  std::string f_input, f_output, f_scores_out;
  double f_p = 0.0, f_eps = 0.0, f_delta = 0.0, f_beta = 0.8;
  std::int64_t f_seed_node = -1, f_steps = 100, f_node_limit = 20000;
  std::uint64_t f_rng_seed = 1, f_rng_stream = 0;
  bool f_one_indexed = false, f_lcc = false;
  flip->add_option("--input", f_input, "edge-list file")->required();
  flip->add_flag("--one-indexed", f_one_indexed, "input ids start at 1");
  flip->add_flag("--extract-lcc", f_lcc, "load the LCC");
  flip->add_option("--p", f_p, "flip probability");
  flip->add_option("--epsilon", f_eps, "DP epsilon (auto-calibrates p)");
  flip->add_option("--delta", f_delta, "DP delta (default 1/#edges)");
  flip->add_option("--seed-node", f_seed_node,
                   "personalized seed (incident pairs exempt)");
  flip->add_option("--node-limit", f_node_limit, "O(n^2) pass guard");
  flip->add_option("--beta", f_beta, "PPR parameter for --scores-out");
  flip->add_option("--steps", f_steps, "PPR steps for --scores-out");
  flip->add_option("--rng-seed", f_rng_seed, "RNG seed");
  flip->add_option("--rng-stream", f_rng_stream, "RNG stream id");
  flip->add_option("--output", f_output, "flipped edge-list output");
  flip->add_option("--scores-out", f_scores_out,
                   "PPR-on-flipped-graph JSON scores output");

  CLI11_PARSE(app, argc, argv);

  if (*ingest) {
    return run_ingest(in_path, one_indexed, extract_lcc, out_path, id_map_path);
  }

  if (*diffuse) {
    const privdiff::SparseGraph g =
        privdiff::load_edge_list_file(d_input, {d_one_indexed, d_lcc}).graph;
    if (d_seed_node < 0 || d_seed_node >= g.n()) {
      throw std::runtime_error("seed node out of range");
    }
    std::vector<double> s(static_cast<std::size_t>(g.n()), 0.0);
    s[static_cast<std::size_t>(d_seed_node)] = 1.0;
    const privdiff::DiffusionSchedule sched = privdiff::ppr_schedule(d_beta);
    std::vector<double> scores;
    if (d_eta <= 0.0) {
      if (d_sigma > 0.0) {
        throw std::runtime_error("noisy diffusion needs --eta > 0");
      }
      scores = privdiff::run_exact_diffusion(g, sched, s, d_steps);
    } else {
      privdiff::ThresholdPolicy policy{
          d_eta, parse_clip_mode(d_mode),
          d_exempt_seed
              ? std::optional<privdiff::NodeId>(
                    static_cast<privdiff::NodeId>(d_seed_node))
              : std::nullopt};
      privdiff::NoiseOptions noise{
          d_sigma,
          d_noise == "gaussian" ? privdiff::NoiseKind::gaussian
                                : privdiff::NoiseKind::laplace,
          d_project, d_radius};
      privdiff::RngStream rng(d_rng_seed, d_rng_stream);
      scores = privdiff::run_noisy_diffusion(g, sched, policy, s, d_steps,
                                             noise, rng);
    }
    const bool binary = d_format == "binary";
    if (d_output.empty()) {
      if (binary) throw std::runtime_error("binary format needs --output");
      privdiff::write_vector_json(std::cout, scores);
    } else {
      auto out = open_out(d_output, binary);
      binary ? privdiff::write_vector_binary(out, scores)
             : privdiff::write_vector_json(out, scores);
    }
    return kExitOk;
  }

  if (*account) {
    const privdiff::DiffusionSchedule sched = a_sched.make();
    privdiff::AccountantQuery q;
    q.alpha = a_alpha;
    q.sigma = a_sigma;
    q.steps = a_steps;
    q.gamma_max = sched.gamma_max();
    if (a_rho >= 0.0) {
      q.rho_diff = a_rho;
    } else if (a_eta > 0.0) {
      q.rho_diff = privdiff::rho_diff(sched, a_eta);
    } else {
      throw std::runtime_error("give --eta or --rho-diff");
    }
    const privdiff::BoundKind kind = parse_bound_kind(a_bound);
    if (kind == privdiff::BoundKind::personalized) {
      q.mode = privdiff::AccountingMode::personalized;
    }
    if (kind == privdiff::BoundKind::diameter) {
      double d = a_diameter;
      if (a_diameter_degree_sum > 0) {
        d = privdiff::threshold_diameter_degree_sum(a_eta,
                                                    a_diameter_degree_sum);
      } else if (a_diameter_n > 0) {
        d = privdiff::threshold_diameter_uniform(a_eta, a_diameter_n);
      }
      q.tracking = privdiff::Tracking::with_diameter(d);
    }
    const privdiff::RdpBound bound = privdiff::eval_bound(kind, q);
    json record{{"epsilon_rdp", bound.epsilon}, {"alpha", q.alpha},
                {"tau_star", bound.tau_star},   {"bound_kind", a_bound},
                {"sigma", q.sigma},             {"steps", q.steps},
                {"rho_diff", q.rho_diff},       {"gamma_max", q.gamma_max}};
    if (a_delta > 0.0) {
      const auto grid = a_grid.empty()
                            ? privdiff::default_alpha_grid()
                            : std::span<const double>(a_grid);
      const privdiff::DpConversion conv = privdiff::rdp_to_dp(
          [&](double alpha) {
            privdiff::AccountantQuery qa = q;
            qa.alpha = alpha;
            return privdiff::eval_bound(kind, qa).epsilon;
          },
          a_delta, grid);
      record["epsilon_dp"] = conv.eps_dp;
      record["alpha_star"] = conv.alpha_star;
      record["delta"] = a_delta;
    }
    std::cout << record.dump() << '\n';
    return kExitOk;
  }

  if (*calibrate) {
    const auto grid = c_grid.empty() ? privdiff::default_alpha_grid()
                                     : std::span<const double>(c_grid);
    if (c_mechanism == "flip") {
      if (!(c_eps > 0.0 && c_delta > 0.0)) {
        throw std::runtime_error("flip calibration needs --epsilon/--delta");
      }
      const privdiff::FlipCalibration fc =
          privdiff::calibrate_flip_prob({c_eps, c_delta}, {}, grid);
      json record{{"p", fc.p},
                  {"achieved_epsilon", fc.achieved_eps_dp},
                  {"alpha_star", fc.alpha_star}};
      std::cout << record.dump() << '\n';
      return kExitOk;
    }
    const privdiff::DiffusionSchedule sched = c_sched.make();
    if (!(c_eta > 0.0)) throw std::runtime_error("calibration needs --eta");
    privdiff::AccountantQuery prototype;
    prototype.steps = c_steps;
    prototype.gamma_max = sched.gamma_max();
    prototype.rho_diff = privdiff::rho_diff(sched, c_eta);
    const privdiff::BoundKind kind = parse_bound_kind(c_bound);
    if (kind == privdiff::BoundKind::personalized) {
      prototype.mode = privdiff::AccountingMode::personalized;
    }
    privdiff::CalibrationResult result;
    if (c_eps > 0.0 && c_delta > 0.0) {
      result = privdiff::calibrate_sigma_dp({c_eps, c_delta}, prototype, kind,
                                            {}, grid);
    } else if (c_eps_rdp > 0.0 && c_alpha > 1.0) {
      prototype.alpha = c_alpha;
      result = privdiff::calibrate_sigma_rdp(c_eps_rdp, prototype, kind);
    } else {
      throw std::runtime_error(
          "give --epsilon/--delta or --epsilon-rdp/--alpha");
    }
    json record{{"sigma", result.sigma},
                {"achieved_epsilon", result.achieved_epsilon},
                {"alpha_star", result.alpha_star},
                {"tau_star", result.tau_star}};
    std::cout << record.dump() << '\n';
    return kExitOk;
  }

  if (*verify) {
    bool all_pass = true;
    for (const privdiff::OracleReport& r : privdiff::run_oracle_suite(v_seed)) {
      json line{{"quantity", r.quantity},     {"oracle_value", r.oracle_value},
                {"engine_value", r.engine_value}, {"abs_error", r.abs_error},
                {"rel_error", r.rel_error},   {"tolerance", r.tolerance},
                {"pass", r.pass}};
      std::cout << line.dump() << '\n';
      all_pass = all_pass && r.pass;
    }
    return all_pass ? kExitOk : kExitError;
  }

  if (*sweep) {
    privdiff::ExperimentConfig cfg;
    if (!s_config.empty()) {
      std::ifstream in(s_config);
      if (!in) throw std::runtime_error("cannot open config " + s_config);
      json j;
      in >> j;
      cfg = privdiff::experiment_config_from_json(j);
    }
    if (!s_dataset.empty()) cfg.dataset.path = s_dataset;
    if (!s_method.empty()) {
      json j{{"method", s_method}};
      cfg.methods = privdiff::experiment_config_from_json(j).methods;
    }
    if (!s_eps.empty()) cfg.epsilon_grid = s_eps;
    if (!s_eta.empty()) cfg.eta_grid = s_eta;
    if (s_trials > 0) cfg.trials = s_trials;
    if (s_steps > 0) cfg.steps = s_steps;
    if (s_beta > 0.0) cfg.beta = s_beta;
    if (s_delta >= 0.0) cfg.delta = s_delta;
    if (s_has_seed) cfg.base_seed = s_base_seed;
    if (!s_bound.empty()) cfg.bound_kind = parse_bound_kind(s_bound);
    if (!s_threshold.empty()) cfg.threshold_mode = parse_clip_mode(s_threshold);
    if (s_standard) cfg.bound_kind = privdiff::BoundKind::theorem1;

    const privdiff::SweepResult result =
        privdiff::run_privacy_utility_sweep(cfg);
    if (s_csv.empty()) {
      privdiff::write_sweep_csv(std::cout, result);
    } else {
      auto out = open_out(s_csv);
      privdiff::write_sweep_csv(out, result);
    }
    if (!s_jsonl.empty()) {
      auto out = open_out(s_jsonl);
      privdiff::write_trials_jsonl(out, result);
    }
    return result.feasible_rows > 0 ? kExitOk : kExitInfeasible;
  }

  if (*curves) {
    if (k_gammas.size() == 3) {
      curve_cfg.gammas = {k_gammas[0], k_gammas[1], k_gammas[2]};
    }
    const privdiff::BoundCurves c = privdiff::emit_bound_curves(curve_cfg);
    {
      auto out = open_out(k_out_dir + "/bounds_vs_k.csv");
      privdiff::write_bounds_vs_k_csv(out, c);
    }
    {
      auto out = open_out(k_out_dir + "/wasserstein_vs_tau.csv");
      privdiff::write_w_vs_tau_csv(out, c);
    }
    {
      auto out = open_out(k_out_dir + "/sigma_vs_eps.csv");
      privdiff::write_sigma_vs_eps_csv(out, c);
    }
    return kExitOk;
  }

  if (*flip) {
    const privdiff::SparseGraph g =
        privdiff::load_edge_list_file(f_input, {f_one_indexed, f_lcc}).graph;
    privdiff::FlipConfig fc;
    fc.node_limit = static_cast<privdiff::NodeId>(f_node_limit);
    if (f_seed_node >= 0) {
      fc.personalized_seed = static_cast<privdiff::NodeId>(f_seed_node);
    }
    json record;
    if (f_p > 0.0) {
      fc.p = f_p;
    } else if (f_eps > 0.0) {
      const double delta =
          f_delta > 0.0 ? f_delta : 1.0 / static_cast<double>(g.num_edges());
      const privdiff::FlipCalibration calib =
          privdiff::calibrate_flip_prob({f_eps, delta});
      fc.p = calib.p;
      record["epsilon_dp"] = f_eps;
      record["delta"] = delta;
      record["achieved_epsilon"] = calib.achieved_eps_dp;
      record["alpha_star"] = calib.alpha_star;
    } else {
      throw std::runtime_error("give --p or --epsilon");
    }
    privdiff::RngStream rng(f_rng_seed, f_rng_stream);
    const privdiff::FlipResult flipped = privdiff::edge_flipping(g, fc, rng);
    record["p"] = fc.p;
    record["nodes"] = flipped.n;
    record["edges_out"] = flipped.edges.size();
    record["pairs_redrawn"] = flipped.pairs_redrawn;
    if (!f_output.empty()) {
      auto out = open_out(f_output);
      for (const privdiff::Edge& e : flipped.edges) {
        out << e.u << ' ' << e.v << '\n';
      }
    }
    if (!f_scores_out.empty()) {
      if (f_seed_node < 0) {
        throw std::runtime_error("--scores-out needs --seed-node");
      }
      const std::vector<double> scores = privdiff::flipped_ppr_scores(
          flipped, static_cast<privdiff::NodeId>(f_seed_node), f_beta, f_steps);
      auto out = open_out(f_scores_out);
      privdiff::write_vector_json(out, scores);
    }
    std::cout << record.dump() << '\n';
    return kExitOk;
  }

  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return main_impl(argc, argv);
  } catch (const privdiff::InfeasibleTargetError& e) {
    std::cerr << "privdiff: infeasible target: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "privdiff: error: " << e.what() << '\n';
    return kExitError;
  }
}
