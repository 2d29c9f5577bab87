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

#ifndef PRIVDIFF_DIFFUSION_HPP_
#define PRIVDIFF_DIFFUSION_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "privdiff/graph.hpp"
#include "privdiff/rng.hpp"
#include "privdiff/vec.hpp"

namespace privdiff {

// Per-step coefficients of the diffusion map
//   phi_k(x) = (g1 * P + g2 * I) x + g3 * s,   g1 + g2 + g3 = 1.
// g1 may be negative; |g1| + |g2| must stay below 1 for every step.
struct ScheduleTriple {
  double g1 = 0.0;
  double g2 = 0.0;
  double g3 = 0.0;
};

class DiffusionSchedule {
 public:
  // One triple reused for every step. declared_steps (optional) bounds the
  // step indices the schedule admits.
  static DiffusionSchedule constant(ScheduleTriple t,
                                    std::int64_t declared_steps = 0) {
    return DiffusionSchedule({t}, true, declared_steps);
  }

  // Explicit coefficients for steps 1..coeffs.size().
  static DiffusionSchedule per_step(std::vector<ScheduleTriple> coeffs) {
    if (coeffs.empty()) {
      throw std::invalid_argument("DiffusionSchedule: no coefficients");
    }
    const auto steps = static_cast<std::int64_t>(coeffs.size());
    return DiffusionSchedule(std::move(coeffs), false, steps);
  }

  const ScheduleTriple& at(std::int64_t k) const {
    if (k < 1 || (declared_steps_ > 0 && k > declared_steps_)) {
      throw std::invalid_argument("DiffusionSchedule: step index " +
                                  std::to_string(k) + " out of range");
    }
    return constant_ ? coeffs_.front()
                     : coeffs_[static_cast<std::size_t>(k - 1)];
  }

  // Lipschitz constant max_k |g1| + |g2| of the map in l1.
  double gamma_max() const { return gamma_max_; }
  // Maximum diffusion coefficient max_k |g1|.
  double gamma1_max() const { return gamma1_max_; }
  bool is_constant() const { return constant_; }
  std::int64_t declared_steps() const { return declared_steps_; }

 private:
  DiffusionSchedule(std::vector<ScheduleTriple> coeffs, bool constant,
                    std::int64_t declared_steps)
      : coeffs_(std::move(coeffs)),
        constant_(constant),
        declared_steps_(declared_steps) {
    gamma_max_ = 0.0;
    gamma1_max_ = 0.0;
    for (const ScheduleTriple& t : coeffs_) {
      if (std::fabs(t.g1 + t.g2 + t.g3 - 1.0) > 1e-12) {
        throw std::invalid_argument(
            "DiffusionSchedule: coefficients must sum to 1");
      }
      gamma_max_ = std::max(gamma_max_, std::fabs(t.g1) + std::fabs(t.g2));
      gamma1_max_ = std::max(gamma1_max_, std::fabs(t.g1));
    }
    // Nonexpansive schedules (gamma_max = 1, e.g. the identity triple) are
    // valid diffusions; the privacy accountant separately insists on a
    // strict contraction where its geometric sums need one.
    if (gamma_max_ > 1.0 + 1e-12) {
      throw std::invalid_argument(
          "DiffusionSchedule: |g1| + |g2| must not exceed 1");
    }
  }

  std::vector<ScheduleTriple> coeffs_;
  bool constant_ = true;
  std::int64_t declared_steps_ = 0;
  double gamma_max_ = 0.0;
  double gamma1_max_ = 0.0;
};

// PPR with the lazy walk: phi_k(x) = beta*W*x + (1-beta)*s, i.e. the constant
// triple (beta/2, beta/2, 1-beta); gamma_max = beta, gamma1_max = beta/2.
inline DiffusionSchedule ppr_schedule(double beta,
                                      std::int64_t declared_steps = 0) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("ppr_schedule: beta must lie in (0, 1)");
  }
  return DiffusionSchedule::constant({beta / 2, beta / 2, 1 - beta},
                                     declared_steps);
}

enum class ClipMode {
  symmetric_degree,     // [-eta*d_i, +eta*d_i]
  nonnegative_degree,   // [0, eta*d_i]
  uniform,              // [-eta, +eta]
  nonnegative_uniform,  // [0, eta]
};

// Degree-based clipping policy. When personalized_seed is set, that
// coordinate is exempt from the upper clip (any positive threshold is
// admissible at the seed; unbounded is the least intrusive choice).
struct ThresholdPolicy {
  double eta = 0.0;
  ClipMode mode = ClipMode::symmetric_degree;
  std::optional<NodeId> personalized_seed;

  void validate(NodeId n) const {
    if (!(eta > 0.0)) {
      throw std::invalid_argument("ThresholdPolicy: eta must be positive");
    }
    if (personalized_seed && (*personalized_seed < 0 || *personalized_seed >= n)) {
      throw std::invalid_argument("ThresholdPolicy: seed id out of range");
    }
  }
};

// f(x): coordinatewise clip to the policy's interval.
inline std::vector<double> apply_threshold(const ThresholdPolicy& policy,
                                           const SparseGraph& g,
                                           std::span<const double> x) {
  if (static_cast<std::int64_t>(x.size()) != g.n()) {
    throw std::invalid_argument("apply_threshold: length mismatch");
  }
  policy.validate(g.n());
  const bool degree_based = policy.mode == ClipMode::symmetric_degree ||
                            policy.mode == ClipMode::nonnegative_degree;
  const bool nonneg = policy.mode == ClipMode::nonnegative_degree ||
                      policy.mode == ClipMode::nonnegative_uniform;
  const auto deg = g.degrees();
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double cap =
        degree_based
            ? policy.eta * static_cast<double>(deg[i])
            : policy.eta;
    double hi = cap;
    if (policy.personalized_seed &&
        static_cast<std::size_t>(*policy.personalized_seed) == i) {
      hi = std::numeric_limits<double>::infinity();
    }
    const double lo = nonneg ? 0.0 : -cap;
    out[i] = std::clamp(x[i], lo, hi);
  }
  return out;
}

// phi_k(x) = g1 * P x + g2 * x + g3 * s for the step-k triple.
inline std::vector<double> diffusion_step(const SparseGraph& g,
                                          const DiffusionSchedule& sched,
                                          std::int64_t k,
                                          std::span<const double> x,
                                          std::span<const double> s) {
  if (x.size() != s.size() ||
      static_cast<std::int64_t>(x.size()) != g.n()) {
    throw std::invalid_argument("diffusion_step: length mismatch");
  }
  const ScheduleTriple& t = sched.at(k);
  std::vector<double> y = random_walk_matvec(g, x);
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = t.g1 * y[i] + t.g2 * x[i] + t.g3 * s[i];
  }
  return y;
}

// Euclidean projection onto {y : sum |y_i| <= radius}. Inputs already inside
// the ball come back unchanged; otherwise the usual sorted soft-threshold.
inline std::vector<double> project_l1_ball(std::span<const double> x,
                                           double radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("project_l1_ball: radius must be positive");
  }
  std::vector<double> out(x.begin(), x.end());
  if (l1_norm(x) <= radius) return out;
  std::vector<double> mags(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mags[i] = std::fabs(x[i]);
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  double running = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < mags.size(); ++k) {
    running += mags[k];
    const double candidate = (running - radius) / static_cast<double>(k + 1);
    if (candidate >= mags[k]) break;  // later entries fall below the cut
    theta = candidate;
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double mag = std::fabs(out[i]) - theta;
    out[i] = mag > 0.0 ? std::copysign(mag, out[i]) : 0.0;
  }
  return out;
}

enum class SeedCheck { warn, error, ignore };

namespace detail {
inline void check_stochastic_seed(std::span<const double> s, SeedCheck mode) {
  if (mode == SeedCheck::ignore) return;
  bool nonneg = true;
  for (double v : s) nonneg = nonneg && v >= 0.0;
  const bool ok = nonneg && std::fabs(vec_sum(s) - 1.0) <= 1e-9;
  if (ok) return;
  if (mode == SeedCheck::error) {
    throw std::invalid_argument("diffusion: seed vector is not stochastic");
  }
  std::cerr << "privdiff: warning: seed vector is not stochastic\n";
}
}  // namespace detail

// Noise-free s_K = phi_K o ... o phi_1(s). No thresholding, no projection.
inline std::vector<double> run_exact_diffusion(
    const SparseGraph& g, const DiffusionSchedule& sched,
    std::span<const double> s, std::int64_t steps,
    SeedCheck seed_check = SeedCheck::warn) {
  if (steps < 1) throw std::invalid_argument("run_exact_diffusion: K >= 1");
  detail::check_stochastic_seed(s, seed_check);
  std::vector<double> state(s.begin(), s.end());
  for (std::int64_t k = 1; k <= steps; ++k) {
    state = diffusion_step(g, sched, k, state, s);
  }
  return state;
}

enum class NoiseKind { laplace, gaussian };

struct NoiseOptions {
  double sigma = 0.0;  // 0 degenerates to the thresholded exact recursion
  NoiseKind kind = NoiseKind::laplace;
  bool project_unit_l1 = false;
  double l1_radius = 1.0;
};

// Replay log: the child stream ids consumed per step, two noise draws each.
struct StepLog {
  std::uint64_t seed = 0;
  std::uint64_t base_stream = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> noise_streams;
};

// One noisy trajectory of
//   s_k = phi_k(f(s_{k-1})) + xi_k^(1) + xi_k^(2),
// optionally followed by projection onto the l1 ball each step. The two
// noise vectors are two literal independent draws at scale sigma (their sum
// is not Laplace, and the analysis assigns them distinct roles).
inline std::vector<double> run_noisy_diffusion(
    const SparseGraph& g, const DiffusionSchedule& sched,
    const ThresholdPolicy& policy, std::span<const double> s,
    std::int64_t steps, const NoiseOptions& noise, RngStream& rng,
    StepLog* log = nullptr, SeedCheck seed_check = SeedCheck::warn) {
  if (steps < 1) throw std::invalid_argument("run_noisy_diffusion: K >= 1");
  if (noise.sigma < 0.0) {
    throw std::invalid_argument("run_noisy_diffusion: sigma must be >= 0");
  }
  detail::check_stochastic_seed(s, seed_check);
  policy.validate(g.n());
  if (log) {
    log->seed = rng.seed();
    log->base_stream = rng.stream_id();
    log->noise_streams.clear();
  }
  std::vector<double> state(s.begin(), s.end());
  for (std::int64_t k = 1; k <= steps; ++k) {
    state = apply_threshold(policy, g, state);
    state = diffusion_step(g, sched, k, state, s);
    if (noise.sigma > 0.0) {
      RngStream first = rng.child(static_cast<std::uint64_t>(2 * k - 1));
      RngStream second = rng.child(static_cast<std::uint64_t>(2 * k));
      if (log) {
        log->noise_streams.emplace_back(first.stream_id(), second.stream_id());
      }
      const auto draw = [&](RngStream& stream) {
        return noise.kind == NoiseKind::laplace
                   ? sample_laplace_vec(g.n(), noise.sigma, stream)
                   : sample_gaussian_vec(g.n(), noise.sigma, stream);
      };
      const std::vector<double> xi1 = draw(first);
      const std::vector<double> xi2 = draw(second);
      for (std::size_t i = 0; i < state.size(); ++i) {
        state[i] += xi1[i] + xi2[i];
      }
    }
    if (noise.project_unit_l1) {
      state = project_l1_ball(state, noise.l1_radius);
    }
  }
  return state;
}

}  // namespace privdiff

#endif  // PRIVDIFF_DIFFUSION_HPP_
