// Copyright 2026 The qaoa-girth Authors
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

// Maximizing nu over the 2p angles.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <exception>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "qaoa_girth/core.hpp"
#include "qaoa_girth/lbfgs.hpp"
#include "qaoa_girth/parallel.hpp"
#include "qaoa_girth/xorsat.hpp"

namespace qaoa_girth {

enum class GradientMode { forward, central };

struct OptimizerConfig {
  GradientMode gradient_mode = GradientMode::forward;
  double fd_step = 1e-6;
  double grad_tolerance = 1e-7;  // sup-norm
  int max_iterations = 500;
  int multistart_count = 8;
  std::uint64_t seed = 0;
  // Forward differences carry an O(fd_step) bias that sits above
  // grad_tolerance; below this sup-norm the search continues with central
  // differences.
  double central_switch = 1e-4;

  void validate() const {
    if (!(fd_step > 0.0)) throw std::invalid_argument("OptimizerConfig: fd_step must be > 0");
    if (!(grad_tolerance > 0.0)) throw std::invalid_argument("OptimizerConfig: grad_tolerance must be > 0");
    if (!(central_switch > 0.0)) throw std::invalid_argument("OptimizerConfig: central_switch must be > 0");
    if (max_iterations < 0) throw std::invalid_argument("OptimizerConfig: max_iterations must be >= 0");
    if (multistart_count < 0) throw std::invalid_argument("OptimizerConfig: multistart_count must be >= 0");
  }
};

struct OptimumRecord {
  QaoaParams params;
  double value = 0.0;
  double grad_norm = 0.0;  // central-difference sup-norm at params
  long long n_evals = 0;
  bool converged = false;
};

using Objective = std::function<double(const QaoaParams&)>;

/// The D -> infinity objective for clause arity q.
inline Objective infinite_objective(int q) {
  return [q](const QaoaParams& x) { return nu_q_infinite(q, x, Method::fast); };
}

namespace detail {

inline double checked_eval(const Objective& f, const QaoaParams& x) {
  const double v = f(x);
  if (!std::isfinite(v)) throw NumericFailure("objective returned a non-finite value");
  return v;
}

// Gradient at x; `base` is f(x) and is only used in forward mode.
inline std::vector<double> fd_gradient(const Objective& f, const std::vector<double>& x, int q, double base,
                                       GradientMode mode, double h, long long& evals) {
  std::vector<double> g(x.size());
  std::vector<double> y = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = x[i] + h;
    const double up = checked_eval(f, QaoaParams::from_vector(y, q));
    if (mode == GradientMode::forward) {
      g[i] = (up - base) / h;
      evals += 1;
    } else {
      y[i] = x[i] - h;
      const double down = checked_eval(f, QaoaParams::from_vector(y, q));
      g[i] = (up - down) / (2.0 * h);
      evals += 2;
    }
    y[i] = x[i];
  }
  return g;
}

}  // namespace detail

/// Finite-difference gradient of the objective in the order
/// (gamma_1..gamma_p, beta_1..beta_p). Forward mode costs 2p+1 evaluations,
/// central mode 4p.
inline std::vector<double> gradient(const Objective& f, const QaoaParams& params, const OptimizerConfig& config,
                                    long long* evals = nullptr) {
  config.validate();
  long long n = 0;
  double base = 0.0;
  if (config.gradient_mode == GradientMode::forward) {
    base = detail::checked_eval(f, params);
    n = 1;
  }
  auto g = detail::fd_gradient(f, params.to_vector(), params.q(), base, config.gradient_mode, config.fd_step, n);
  if (evals != nullptr) *evals += n;
  return g;
}

/// L-BFGS ascent from `init`. The returned record carries the
/// central-difference gradient sup-norm at the final point.
inline OptimumRecord maximize(const Objective& f, const QaoaParams& init, const OptimizerConfig& config) {
  config.validate();
  const int q = init.q();
  long long evals = 0;
  GradientMode mode = config.gradient_mode;

  auto fg = [&](const std::vector<double>& x, std::vector<double>& g) {
    const double v = detail::checked_eval(f, QaoaParams::from_vector(x, q));
    ++evals;
    g = detail::fd_gradient(f, x, q, v, mode, config.fd_step, evals);
    for (double& c : g) c = -c;
    return -v;
  };

  std::vector<double> x = init.to_vector();
  int budget = config.max_iterations;
  if (mode == GradientMode::forward) {
    lbfgs::Options coarse;
    coarse.max_iterations = budget;
    coarse.grad_tolerance = std::max(config.grad_tolerance, config.central_switch);
    const auto r = lbfgs::minimize(fg, x, coarse);
    x = r.x;
    budget -= r.iterations;
    mode = GradientMode::central;
  }
  lbfgs::Options fine;
  fine.max_iterations = std::max(budget, 0);
  fine.grad_tolerance = config.grad_tolerance;
  const auto r = lbfgs::minimize(fg, x, fine);

  OptimumRecord rec{QaoaParams::from_vector(r.x, q), -r.f, 0.0, evals, false};
  long long cert_evals = 0;
  const auto g = detail::fd_gradient(f, r.x, q, 0.0, GradientMode::central, config.fd_step, cert_evals);
  rec.n_evals += cert_evals;
  rec.grad_norm = lbfgs::sup_norm(g);
  rec.converged = rec.grad_norm <= config.grad_tolerance;
  return rec;
}

/// Depth-p initial guess from a depth-(p-1) optimum: each angle sequence is
/// read as a curve on (r-1)/(p-2) and linearly resampled on (r-1)/(p-1).
inline QaoaParams warm_start(const QaoaParams& prev) {
  const int m = prev.p();  // p - 1
  auto resample = [m](const std::vector<double>& v) {
    std::vector<double> out(m + 1);
    if (m == 1) {
      out[0] = out[1] = v[0];
      return out;
    }
    for (int r = 0; r <= m; ++r) {
      const double t = static_cast<double>(r) * (m - 1) / m;  // position on the old grid
      const int k = std::min(static_cast<int>(std::floor(t)), m - 2);
      const double w = t - k;
      out[r] = (1.0 - w) * v[k] + w * v[k + 1];
    }
    return out;
  };
  return QaoaParams(resample(prev.gamma()), resample(prev.beta()), prev.q());
}

inline QaoaParams warm_start(const OptimumRecord& prev) { return warm_start(prev.params); }

namespace detail {

// Uniform on (0, 1].
inline double open_closed_unit(std::mt19937_64& rng) {
  return 1.0 - static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Random initial points with gamma in (0, 1.2] and beta in (0, pi/4].
inline std::vector<QaoaParams> random_inits(int p, int q, int count, std::mt19937_64& rng) {
  std::vector<QaoaParams> out;
  for (int s = 0; s < count; ++s) {
    std::vector<double> g(p), b(p);
    for (double& v : g) v = 1.2 * detail::open_closed_unit(rng);
    for (double& v : b) v = std::numbers::pi / 4.0 * detail::open_closed_unit(rng);
    out.emplace_back(std::move(g), std::move(b), q);
  }
  return out;
}

/// Runs every start (concurrently) and keeps the best by value, ties to the
/// lowest start index.
inline OptimumRecord best_of(const Objective& f, const std::vector<QaoaParams>& starts,
                             const OptimizerConfig& config) {
  if (starts.empty()) throw std::invalid_argument("best_of: no starting points");
  std::vector<OptimumRecord> results(starts.size(), OptimumRecord{starts[0], 0.0, 0.0, 0, false});
  std::vector<std::exception_ptr> errors(starts.size());
  const auto n = static_cast<std::int64_t>(starts.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      results[i] = maximize(f, starts[i], config);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::size_t best = 0;
  long long total_evals = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    total_evals += results[i].n_evals;
    if (results[i].value > results[best].value) best = i;
  }
  OptimumRecord rec = results[best];
  rec.n_evals = total_evals;
  return rec;
}

/// Optima for p = 1..p_max; each depth starts from the warm start of the
/// previous optimum (or `first_warm` at the first depth, if given) plus
/// `multistart_count` seeded random points. `on_record` sees each depth as
/// soon as it finishes.
inline std::vector<OptimumRecord> sweep(int p_max, int q, const OptimizerConfig& config,
                                        const std::function<void(const OptimumRecord&)>& on_record = {},
                                        const std::optional<QaoaParams>& first_warm = std::nullopt,
                                        const Objective& objective = {}) {
  if (p_max < 1) throw std::invalid_argument("sweep: p_max must be >= 1");
  config.validate();
  const Objective f = objective ? objective : infinite_objective(q);
  std::mt19937_64 rng(config.seed);
  std::vector<OptimumRecord> out;
  std::optional<QaoaParams> warm = first_warm;
  int p_start = 1;
  if (warm) {
    if (warm->p() >= p_max) throw std::invalid_argument("sweep: warm start depth must be below p_max");
    p_start = warm->p() + 1;
  }
  for (int p = p_start; p <= p_max; ++p) {
    std::vector<QaoaParams> starts;
    if (warm) starts.push_back(warm_start(warm->with_q(q)));
    for (auto& s : random_inits(p, q, config.multistart_count, rng)) starts.push_back(std::move(s));
    if (starts.empty()) starts = random_inits(p, q, 1, rng);
    OptimumRecord rec = best_of(f, starts, config);
    out.push_back(rec);
    if (on_record) on_record(rec);
    warm = rec.params;
  }
  return out;
}

}  // namespace qaoa_girth
