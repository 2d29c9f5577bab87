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

#ifndef PRIVDIFF_ACCOUNTANT_HPP_
#define PRIVDIFF_ACCOUNTANT_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "privdiff/diffusion.hpp"

namespace privdiff {

// Renyi divergence of order alpha between two Laplace(scale sigma)
// distributions whose means differ by rho in l1:
//   g_alpha(sigma, rho) = ln( a * e^{(alpha-1) rho / sigma}
//                           + b * e^{-alpha rho / sigma} ) / (alpha - 1),
// a = alpha / (2 alpha - 1), b = (alpha - 1) / (2 alpha - 1). Evaluated in
// log space; overflow degrades to +inf, never an error. Increasing in rho,
// decreasing in sigma, and exactly 0 at rho = 0.
inline double g_alpha(double alpha, double sigma, double rho) {
  if (!(alpha > 1.0)) throw std::invalid_argument("g_alpha: alpha must be > 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("g_alpha: sigma must be > 0");
  if (rho < 0.0) throw std::invalid_argument("g_alpha: rho must be >= 0");
  if (rho == 0.0) return 0.0;
  const double log_a = std::log(alpha / (2.0 * alpha - 1.0));
  const double log_b = std::log((alpha - 1.0) / (2.0 * alpha - 1.0));
  const double t1 = log_a + (alpha - 1.0) * rho / sigma;
  const double t2 = log_b - alpha * rho / sigma;
  const double m = std::max(t1, t2);
  if (!std::isfinite(m)) return std::numeric_limits<double>::infinity();
  return (m + std::log(std::exp(t1 - m) + std::exp(t2 - m))) / (alpha - 1.0);
}

// Maximum single-step l1 distortion between diffusions on edge-adjacent
// graphs under degree thresholding: max(4*gamma1_max, 2*gamma_max) * eta.
inline double rho_diff(const DiffusionSchedule& sched, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("rho_diff: eta must be > 0");
  return std::max(4.0 * sched.gamma1_max(), 2.0 * sched.gamma_max()) * eta;
}

// Tracked infinity-Wasserstein distance between the coupled iterates:
//   w_tau = rho_diff * (1 - gamma_max^tau) / (1 - gamma_max),
// satisfying w_{tau+1} = gamma_max * w_tau + rho_diff with w_0 = 0.
inline double wasserstein_tau(double rho_diff_value, double gamma_max,
                              std::int64_t tau) {
  if (tau < 0) throw std::invalid_argument("wasserstein_tau: tau must be >= 0");
  if (rho_diff_value < 0.0 || !(gamma_max > 0.0 && gamma_max < 1.0)) {
    throw std::invalid_argument("wasserstein_tau: invalid parameters");
  }
  return rho_diff_value * (1.0 - std::pow(gamma_max, static_cast<double>(tau))) /
         (1.0 - gamma_max);
}

enum class AccountingMode { standard, personalized };

struct Tracking {
  enum class Kind { wasserstein, diameter };
  Kind kind = Kind::wasserstein;
  double diameter = 0.0;

  static Tracking wasserstein() { return {}; }
  static Tracking with_diameter(double d) {
    if (!(d > 0.0)) throw std::invalid_argument("Tracking: diameter must be > 0");
    return {Kind::diameter, d};
  }
};

// Everything a privacy bound needs. sigma is the Laplace scale (standard
// deviation for the Gaussian ablation bound).
struct AccountantQuery {
  double alpha = 2.0;
  double sigma = 0.0;
  std::int64_t steps = 1;
  double rho_diff = 0.0;
  double gamma_max = 0.0;
  AccountingMode mode = AccountingMode::standard;
  Tracking tracking = Tracking::wasserstein();

  void validate() const {
    if (!(alpha > 1.0)) throw std::invalid_argument("query: alpha must be > 1");
    if (!(sigma > 0.0)) throw std::invalid_argument("query: sigma must be > 0");
    if (steps < 1) throw std::invalid_argument("query: K must be >= 1");
    if (rho_diff < 0.0) throw std::invalid_argument("query: rho_diff >= 0");
    if (!(gamma_max > 0.0 && gamma_max < 1.0)) {
      throw std::invalid_argument("query: gamma_max must lie in (0, 1)");
    }
    if (tracking.kind == Tracking::Kind::diameter && !(tracking.diameter > 0.0)) {
      throw std::invalid_argument("query: diameter must be > 0");
    }
  }
};

struct DpBudget {
  double eps_dp = 0.0;
  double delta = 0.0;

  void validate() const {
    if (!(eps_dp > 0.0)) throw std::invalid_argument("budget: eps must be > 0");
    if (!(delta > 0.0 && delta < 1.0)) {
      throw std::invalid_argument("budget: delta must lie in (0, 1)");
    }
  }
};

struct RdpBound {
  double epsilon = 0.0;
  std::int64_t tau_star = 0;
};

namespace detail {

// Exhaustive scan of
//   eps(tau) = (K - tau) g(sigma, rho) + g(sigma, shift(tau) gamma^{K-tau})
// over tau in [tau_min, K-1]. Ties keep the larger tau.
template <typename ShiftFn>
RdpBound scan_tau(const AccountantQuery& q, std::int64_t tau_min,
                  ShiftFn shift_at) {
  const double per_step = g_alpha(q.alpha, q.sigma, q.rho_diff);
  RdpBound best{std::numeric_limits<double>::infinity(), tau_min};
  for (std::int64_t tau = tau_min; tau < q.steps; ++tau) {
    const double decay =
        std::pow(q.gamma_max, static_cast<double>(q.steps - tau));
    const double v = static_cast<double>(q.steps - tau) * per_step +
                     g_alpha(q.alpha, q.sigma, shift_at(tau) * decay);
    if (v <= best.epsilon) best = {v, tau};
  }
  return best;
}

}  // namespace detail

// Edge-level RDP of the noisy diffusion released at step K (Wasserstein
// tracking): exact minimum over all tau by linear scan.
inline RdpBound rdp_bound_theorem1(const AccountantQuery& q) {
  q.validate();
  if (q.mode != AccountingMode::standard) {
    throw std::invalid_argument("rdp_bound_theorem1: standard mode only");
  }
  if (q.tracking.kind != Tracking::Kind::wasserstein) {
    throw std::invalid_argument("rdp_bound_theorem1: wasserstein tracking only");
  }
  return detail::scan_tau(q, 0, [&](std::int64_t tau) {
    return wasserstein_tau(q.rho_diff, q.gamma_max, tau);
  });
}

// Personalized edge-level RDP: zero leakage at K = 1; for K >= 2 the scan is
// restricted to tau >= 1 (the literal tau = 0 term of the personalized bound
// zeroes the absorption sum for every K, which cannot be sound; tau >= 1 is
// the conservative reading and coincides with the standard bound there).
inline RdpBound rdp_bound_personalized(const AccountantQuery& q) {
  q.validate();
  if (q.mode != AccountingMode::personalized) {
    throw std::invalid_argument("rdp_bound_personalized: personalized mode only");
  }
  if (q.steps == 1) return {0.0, 0};
  return detail::scan_tau(q, 1, [&](std::int64_t tau) {
    return wasserstein_tau(q.rho_diff, q.gamma_max, tau);
  });
}

struct AsymptoticBound {
  double epsilon_bound = 0.0;
  std::int64_t suggested_tau = 0;
};

// Closed-form non-divergence envelope
//   eps <= rho/(sigma ln(1/gamma)) [ln((1/rho + 1/(1-gamma)) ln(1/gamma)) + 1]
// with its analytic tau, clamped into {0..K-1}. Reporting only; the scans
// above are the operative bounds.
inline AsymptoticBound rdp_bound_asymptotic(const AccountantQuery& q) {
  q.validate();
  if (q.rho_diff == 0.0) return {0.0, q.steps - 1};
  const double log_inv_gamma = std::log(1.0 / q.gamma_max);
  const double inner =
      (1.0 / q.rho_diff + 1.0 / (1.0 - q.gamma_max)) * log_inv_gamma;
  const double bound =
      q.rho_diff / (q.sigma * log_inv_gamma) * (std::log(inner) + 1.0);
  double tau = std::ceil(static_cast<double>(q.steps) -
                         std::log(inner) / log_inv_gamma);
  tau = std::clamp(tau, 0.0, static_cast<double>(q.steps - 1));
  return {bound, static_cast<std::int64_t>(tau)};
}

// Baseline accountant: K-fold RDP composition of the per-step Laplace
// mechanism at sensitivity rho_diff. One of the two per-step noises is
// credited; the other is post-processing. Exactly linear in K.
inline double rdp_bound_composition(const AccountantQuery& q) {
  q.validate();
  return static_cast<double>(q.steps) * g_alpha(q.alpha, q.sigma, q.rho_diff);
}

// Ablation: the scan with the tracked distance replaced by a fixed set
// diameter D (query must carry tracking = diameter).
inline RdpBound rdp_bound_diameter(const AccountantQuery& q) {
  q.validate();
  if (q.tracking.kind != Tracking::Kind::diameter) {
    throw std::invalid_argument("rdp_bound_diameter: query needs a diameter");
  }
  return detail::scan_tau(q, 0,
                          [&](std::int64_t) { return q.tracking.diameter; });
}

// Diameters the thresholding functions induce, and the unit l1 ball's.
inline double diameter_unit_l1() { return 1.0; }
inline double threshold_diameter_degree(double eta, const SparseGraph& g) {
  if (!(eta > 0.0)) throw std::invalid_argument("diameter: eta must be > 0");
  return eta * static_cast<double>(g.degree_sum());
}
inline double threshold_diameter_degree_sum(double eta, std::int64_t degree_sum) {
  if (!(eta > 0.0) || degree_sum <= 0) {
    throw std::invalid_argument("diameter: invalid parameters");
  }
  return eta * static_cast<double>(degree_sum);
}
inline double threshold_diameter_uniform(double eta, std::int64_t n) {
  if (!(eta > 0.0) || n <= 0) {
    throw std::invalid_argument("diameter: invalid parameters");
  }
  return eta * static_cast<double>(n);
}

// Gaussian-noise ablation with Wasserstein tracking (sigma is the standard
// deviation; the l1 distortion bounds the l2 one):
//   eps = min_tau alpha/(2 sigma^2) [ (K-tau) rho^2 + (w_tau gamma^{K-tau})^2 ].
inline RdpBound rdp_bound_gaussian(const AccountantQuery& q) {
  q.validate();
  const double scale = q.alpha / (2.0 * q.sigma * q.sigma);
  RdpBound best{std::numeric_limits<double>::infinity(), 0};
  for (std::int64_t tau = 0; tau < q.steps; ++tau) {
    const double shift =
        wasserstein_tau(q.rho_diff, q.gamma_max, tau) *
        std::pow(q.gamma_max, static_cast<double>(q.steps - tau));
    const double v = scale * (static_cast<double>(q.steps - tau) *
                                  q.rho_diff * q.rho_diff +
                              shift * shift);
    if (v <= best.epsilon) best = {v, tau};
  }
  return best;
}

// Log-spaced default grid for the RDP -> DP search; configurable everywhere
// it is consumed.
inline std::span<const double> default_alpha_grid() {
  static constexpr std::array<double, 14> kGrid = {
      1.01, 1.05, 1.1, 1.25, 1.5, 2, 3, 4, 8, 16, 32, 64, 128, 256};
  return kGrid;
}

struct DpConversion {
  double eps_dp = 0.0;
  double alpha_star = 0.0;
};

// eps_DP = min over the grid of eps_RDP(alpha) + ln(1/delta)/(alpha - 1).
inline DpConversion rdp_to_dp(
    const std::function<double(double)>& rdp_curve, double delta,
    std::span<const double> alpha_grid = default_alpha_grid()) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("rdp_to_dp: delta must lie in (0, 1)");
  }
  if (alpha_grid.empty()) throw std::invalid_argument("rdp_to_dp: empty grid");
  const double log_inv_delta = std::log(1.0 / delta);
  DpConversion best{std::numeric_limits<double>::infinity(), 0.0};
  for (double alpha : alpha_grid) {
    if (!(alpha > 1.0)) {
      throw std::invalid_argument("rdp_to_dp: grid alpha must be > 1");
    }
    const double v = rdp_curve(alpha) + log_inv_delta / (alpha - 1.0);
    if (v < best.eps_dp) best = {v, alpha};
  }
  return best;
}

enum class BoundKind { theorem1, personalized, composition, diameter, gaussian };

inline const char* bound_kind_name(BoundKind kind) {
  switch (kind) {
    case BoundKind::theorem1: return "theorem1";
    case BoundKind::personalized: return "personalized";
    case BoundKind::composition: return "composition";
    case BoundKind::diameter: return "diameter";
    case BoundKind::gaussian: return "gaussian";
  }
  return "unknown";
}

// RDP bound value for (query, kind); tau_star is 0 where no scan applies.
inline RdpBound eval_bound(BoundKind kind, const AccountantQuery& q) {
  switch (kind) {
    case BoundKind::theorem1: return rdp_bound_theorem1(q);
    case BoundKind::personalized: return rdp_bound_personalized(q);
    case BoundKind::composition: return {rdp_bound_composition(q), 0};
    case BoundKind::diameter: return rdp_bound_diameter(q);
    case BoundKind::gaussian: return rdp_bound_gaussian(q);
  }
  throw std::invalid_argument("eval_bound: unknown bound kind");
}

// Thrown when no grid alpha leaves a positive RDP residual for a DP target.
class InfeasibleTargetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CalibrationOptions {
  double rel_tol = 1e-6;
  int max_bisection_steps = 200;
  double sigma_min = 1e-12;
  double sigma_hi_init = 1.0;
};

struct CalibrationResult {
  double sigma = 0.0;
  double achieved_epsilon = 0.0;  // RDP at alpha_star, or DP for DP targets
  double alpha_star = 0.0;
  std::int64_t tau_star = 0;
};

namespace detail {

// Smallest sigma with eval_bound(kind, q(sigma)) <= target, to relative
// tolerance: doubling bracket expansion above, bisection inside. The bound
// is continuous and strictly decreasing in sigma for rho_diff > 0.
inline CalibrationResult calibrate_sigma_at_alpha(double target_eps,
                                                  AccountantQuery q,
                                                  BoundKind kind,
                                                  const CalibrationOptions& opt) {
  if (!(target_eps > 0.0)) {
    throw std::invalid_argument("calibrate_sigma: target must be > 0");
  }
  if (q.rho_diff == 0.0) {
    q.sigma = opt.sigma_min;
    const RdpBound b = eval_bound(kind, q);
    return {opt.sigma_min, b.epsilon, q.alpha, b.tau_star};
  }
  const auto value_at = [&](double sigma) {
    q.sigma = sigma;
    return eval_bound(kind, q).epsilon;
  };
  double hi = opt.sigma_hi_init;
  int expansions = 0;
  while (value_at(hi) > target_eps) {
    hi *= 2.0;
    if (++expansions > 200) {
      throw std::runtime_error("calibrate_sigma: bracket expansion failed");
    }
  }
  double lo = hi / 2.0;
  while (lo > opt.sigma_min && value_at(lo) <= target_eps) {
    hi = lo;
    lo *= 0.5;
  }
  if (value_at(lo) <= target_eps) {
    // Feasible all the way down to the floor.
    q.sigma = std::max(lo, opt.sigma_min);
    const RdpBound b = eval_bound(kind, q);
    return {q.sigma, b.epsilon, q.alpha, b.tau_star};
  }
  for (int it = 0;
       it < opt.max_bisection_steps && (hi - lo) > opt.rel_tol * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (value_at(mid) <= target_eps) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  q.sigma = std::max(hi, opt.sigma_min);
  const RdpBound b = eval_bound(kind, q);
  return {q.sigma, b.epsilon, q.alpha, b.tau_star};
}

}  // namespace detail

// Calibration against a raw RDP target at the query's fixed alpha.
inline CalibrationResult calibrate_sigma_rdp(double target_eps_rdp,
                                             const AccountantQuery& prototype,
                                             BoundKind kind,
                                             const CalibrationOptions& opt = {}) {
  return detail::calibrate_sigma_at_alpha(target_eps_rdp, prototype, kind, opt);
}

// Calibration against a (eps_DP, delta) budget: per grid alpha, the residual
// RDP budget is eps_DP - ln(1/delta)/(alpha - 1); the returned sigma is the
// smallest over all alphas with positive residual. Accounting at the result
// with the same grid lands in [target - tol, target].
inline CalibrationResult calibrate_sigma_dp(
    const DpBudget& budget, const AccountantQuery& prototype, BoundKind kind,
    const CalibrationOptions& opt = {},
    std::span<const double> alpha_grid = default_alpha_grid()) {
  budget.validate();
  const double log_inv_delta = std::log(1.0 / budget.delta);
  CalibrationResult best;
  bool feasible = false;
  for (double alpha : alpha_grid) {
    const double residual = budget.eps_dp - log_inv_delta / (alpha - 1.0);
    if (residual <= 0.0) continue;
    AccountantQuery q = prototype;
    q.alpha = alpha;
    CalibrationResult r =
        detail::calibrate_sigma_at_alpha(residual, q, kind, opt);
    if (!feasible || r.sigma < best.sigma) {
      best = r;
      feasible = true;
    }
  }
  if (!feasible) {
    throw InfeasibleTargetError(
        "calibrate_sigma: eps_dp too small for every alpha in the grid "
        "(needs eps_dp > ln(1/delta)/(alpha_max - 1))");
  }
  AccountantQuery q = prototype;
  q.sigma = best.sigma;
  best.achieved_epsilon = rdp_to_dp(
                              [&](double alpha) {
                                AccountantQuery qa = q;
                                qa.alpha = alpha;
                                return eval_bound(kind, qa).epsilon;
                              },
                              budget.delta, alpha_grid)
                              .eps_dp;
  return best;
}

// RDP of randomized response that redraws each adjacency bit uniformly from
// {0, 1} with probability p (keep-probability 1 - p/2):
//   eps = ln(q1^a q0^{1-a} + q0^a q1^{1-a}) / (a - 1), q1 = 1 - p/2, q0 = p/2.
inline double rr_rdp(double p, double alpha) {
  if (!(p > 0.0 && p <= 1.0)) {
    // p = 1 is admitted as the pure-noise limit (both laws coincide).
    throw std::invalid_argument("rr_rdp: p must lie in (0, 1]");
  }
  if (!(alpha > 1.0)) throw std::invalid_argument("rr_rdp: alpha must be > 1");
  const double q1 = 1.0 - p / 2.0;
  const double q0 = p / 2.0;
  const double t1 = alpha * std::log(q1) + (1.0 - alpha) * std::log(q0);
  const double t2 = alpha * std::log(q0) + (1.0 - alpha) * std::log(q1);
  const double m = std::max(t1, t2);
  return (m + std::log(std::exp(t1 - m) + std::exp(t2 - m))) / (alpha - 1.0);
}

struct FlipCalibration {
  double p = 0.0;
  double achieved_eps_dp = 0.0;
  double alpha_star = 0.0;
};

// Smallest flip probability whose randomized-response release satisfies the
// DP budget after grid conversion. eps_DP(p) is continuous and decreasing in
// p, so plain bisection on (0, 1) applies.
inline FlipCalibration calibrate_flip_prob(
    const DpBudget& budget, const CalibrationOptions& opt = {},
    std::span<const double> alpha_grid = default_alpha_grid()) {
  budget.validate();
  const auto eps_at = [&](double p) {
    return rdp_to_dp([&](double alpha) { return rr_rdp(p, alpha); },
                     budget.delta, alpha_grid);
  };
  double hi = 1.0 - 1e-15;
  if (eps_at(hi).eps_dp > budget.eps_dp) {
    throw InfeasibleTargetError(
        "calibrate_flip_prob: eps_dp below the conversion floor "
        "ln(1/delta)/(alpha_max - 1)");
  }
  double lo = 1e-15;
  if (eps_at(lo).eps_dp <= budget.eps_dp) {
    const DpConversion c = eps_at(lo);
    return {lo, c.eps_dp, c.alpha_star};
  }
  for (int it = 0;
       it < opt.max_bisection_steps && (hi - lo) > opt.rel_tol * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (eps_at(mid).eps_dp <= budget.eps_dp) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const DpConversion c = eps_at(hi);
  return {hi, c.eps_dp, c.alpha_star};
}

}  // namespace privdiff

#endif  // PRIVDIFF_ACCOUNTANT_HPP_
