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

// Limited-memory BFGS minimization with a strong Wolfe line search
// (bracketing + zoom with safeguarded cubic interpolation).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <vector>

namespace qaoa_girth::lbfgs {

struct Options {
  int memory = 10;
  double c1 = 1e-4;
  double c2 = 0.9;
  int max_iterations = 500;
  double grad_tolerance = 1e-7;  // sup-norm
  int max_line_search = 40;
};

struct Result {
  std::vector<double> x;
  double f = 0.0;
  std::vector<double> g;
  int iterations = 0;
  bool converged = false;
  bool line_search_failed = false;
};

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double sup_norm(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

namespace detail {

// Minimizer of the cubic through (a, fa, da) and (b, fb, db), kept away from
// the interval ends; bisection when the cubic has no usable minimizer.
inline double cubic_step(double a, double fa, double da, double b, double fb, double db) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  const double margin = 0.1 * (hi - lo);
  const double d1 = da + db - 3.0 * (fa - fb) / (a - b);
  const double disc = d1 * d1 - da * db;
  double x = 0.5 * (a + b);
  if (disc >= 0.0) {
    const double d2 = std::copysign(std::sqrt(disc), b - a);
    const double denom = db - da + 2.0 * d2;
    if (denom != 0.0) {
      const double c = b - (b - a) * (db + d2 - d1) / denom;
      if (std::isfinite(c)) x = c;
    }
  }
  if (!(x >= lo + margin && x <= hi - margin)) x = 0.5 * (a + b);
  return x;
}

}  // namespace detail

/// Minimizes f; `fg(x, g)` returns f(x) and writes the gradient into g.
template <class FG>
Result minimize(FG&& fg, std::vector<double> x0, const Options& opt) {
  const std::size_t n = x0.size();
  Result res;
  res.x = std::move(x0);
  res.g.assign(n, 0.0);
  res.f = fg(res.x, res.g);
  if (!std::isfinite(res.f)) return res;

  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;
  std::vector<double> d(n), x_new(n), g_new(n);

  for (int it = 0; it < opt.max_iterations; ++it) {
    if (sup_norm(res.g) <= opt.grad_tolerance) {
      res.converged = true;
      return res;
    }

    // Two-loop recursion: d = -H g.
    d = res.g;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t k = s_hist.size(); k-- > 0;) {
      alpha[k] = rho_hist[k] * dot(s_hist[k], d);
      for (std::size_t i = 0; i < n; ++i) d[i] -= alpha[k] * y_hist[k][i];
    }
    if (!s_hist.empty()) {
      const double scale = dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
      for (double& v : d) v *= scale;
    }
    for (std::size_t k = 0; k < s_hist.size(); ++k) {
      const double b = rho_hist[k] * dot(y_hist[k], d);
      for (std::size_t i = 0; i < n; ++i) d[i] += s_hist[k][i] * (alpha[k] - b);
    }
    for (double& v : d) v = -v;

    double dphi0 = dot(res.g, d);
    if (!(dphi0 < 0.0)) {
      // Not a descent direction: restart from steepest descent.
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      for (std::size_t i = 0; i < n; ++i) d[i] = -res.g[i];
      dphi0 = dot(res.g, d);
    }

    const double phi0 = res.f;
    auto eval = [&](double a, double& phi, double& dphi) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = res.x[i] + a * d[i];
      phi = fg(x_new, g_new);
      dphi = dot(g_new, d);
      if (!std::isfinite(phi)) phi = std::numeric_limits<double>::infinity();
    };

    // Strong Wolfe bracketing phase.
    double a_prev = 0.0, phi_prev = phi0, dphi_prev = dphi0;
    double a = s_hist.empty() ? std::min(1.0, 1.0 / std::sqrt(dot(res.g, res.g))) : 1.0;
    double phi = 0.0, dphi = 0.0;
    bool found = false;
    double a_lo = 0.0, phi_lo = 0.0, dphi_lo = 0.0, a_hi = 0.0, phi_hi = 0.0, dphi_hi = 0.0;
    bool zoom = false;
    int evals = 0;
    for (; evals < opt.max_line_search; ++evals) {
      eval(a, phi, dphi);
      if (phi > phi0 + opt.c1 * a * dphi0 || (evals > 0 && phi >= phi_prev)) {
        a_lo = a_prev, phi_lo = phi_prev, dphi_lo = dphi_prev;
        a_hi = a, phi_hi = phi, dphi_hi = dphi;
        zoom = true;
        break;
      }
      if (std::abs(dphi) <= -opt.c2 * dphi0) {
        found = true;
        break;
      }
      if (dphi >= 0.0) {
        a_lo = a, phi_lo = phi, dphi_lo = dphi;
        a_hi = a_prev, phi_hi = phi_prev, dphi_hi = dphi_prev;
        zoom = true;
        break;
      }
      a_prev = a, phi_prev = phi, dphi_prev = dphi;
      a *= 2.0;
    }

    // Zoom phase; x_new/g_new always hold the last evaluation.
    std::vector<double> best_x, best_g;
    if (zoom) {
      for (++evals; evals <= opt.max_line_search; ++evals) {
        a = detail::cubic_step(a_lo, phi_lo, dphi_lo, a_hi, phi_hi, dphi_hi);
        eval(a, phi, dphi);
        if (phi > phi0 + opt.c1 * a * dphi0 || phi >= phi_lo) {
          a_hi = a, phi_hi = phi, dphi_hi = dphi;
        } else {
          if (std::abs(dphi) <= -opt.c2 * dphi0) {
            found = true;
            break;
          }
          if (dphi * (a_hi - a_lo) >= 0.0) {
            a_hi = a_lo, phi_hi = phi_lo, dphi_hi = dphi_lo;
          }
          a_lo = a, phi_lo = phi, dphi_lo = dphi;
          best_x = x_new;
          best_g = g_new;
        }
        if (std::abs(a_hi - a_lo) <= 1e-16 * std::max(1.0, std::abs(a_lo))) break;
      }
    }

    if (!found) {
      // Accept the best sufficient-decrease point if the zoom found one,
      // otherwise report failure with the current iterate.
      if (!best_x.empty() && phi_lo < res.f) {
        x_new = best_x;
        g_new = best_g;
        phi = phi_lo;
      } else {
        res.line_search_failed = true;
        res.iterations = it;
        return res;
      }
    }

    std::vector<double> s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = x_new[i] - res.x[i];
      y[i] = g_new[i] - res.g[i];
    }
    const double sy = dot(s, y);
    if (sy > 0.0) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > opt.memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    res.x = x_new;
    res.g = g_new;
    res.f = phi;
    res.iterations = it + 1;
  }
  res.converged = sup_norm(res.g) <= opt.grad_tolerance;
  return res;
}

}  // namespace qaoa_girth::lbfgs
