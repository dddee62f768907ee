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

// D -> infinity iteration on the (2p+1)x(2p+1) correlation matrix G.
//
// Two routes compute the same number:
//
//  * the naive route rebuilds every entry of G^(m) from G^(m-1) by a full
//    sum over all 2^(2p+1) configurations, O(p^3 4^p) overall;
//  * the placement route uses the fact that G^(m)_{r,s} (r < s) only depends
//    on entries G^(m-1)_{r',s'} with s' < s. Step m therefore only places
//    column m+1, summing over configurations with T(a) <= m, and the last
//    step fills row 0. Total cost O(p^2 4^p) with two matrices in memory.
//
// The naive route stays as the differential oracle for the placement route.
// Both are written for general clause arity q: the exponent uses the
// (q-1)-th power of G and the final contraction the q-th power. MaxCut is
// q = 2.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qaoa_girth/core.hpp"
#include "qaoa_girth/errors.hpp"
#include "qaoa_girth/finite_d.hpp"
#include "qaoa_girth/parallel.hpp"

namespace qaoa_girth {

/// Complex (2p+1)x(2p+1) matrix indexed by slice indices j, k in [-p, p].
class GMatrix {
 public:
  GMatrix(int p, int level) : p_(p), level_(level), n_(num_slices(p)), data_(std::size_t(n_) * n_) {
    if (p < 1 || p > kMaxDepth) throw std::invalid_argument("GMatrix: bad depth");
  }

  int p() const { return p_; }
  int level() const { return level_; }
  void set_level(int level) { level_ = level; }
  int size() const { return n_; }

  cplx& operator()(int j, int k) { return at_pos(position_of(j, p_), position_of(k, p_)); }
  const cplx& operator()(int j, int k) const { return at_pos(position_of(j, p_), position_of(k, p_)); }

  cplx& at_pos(int kj, int kk) { return data_[std::size_t(kj) * n_ + kk]; }
  const cplx& at_pos(int kj, int kk) const { return data_[std::size_t(kj) * n_ + kk]; }

 private:
  int p_;
  int level_;
  int n_;
  std::vector<cplx> data_;
};

namespace detail {

inline cplx ipow_small(cplx z, int n) {
  cplx r{1.0, 0.0};
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

// G^(m)_{j,k} = sum_a f(a) a_j a_k exp(-1/2 sum_{j',k'} (G_{j',k'})^(q-1) Gamma_j' Gamma_k' a_j' a_k').
// With prev == nullptr the exponent vanishes and this is G^(0).
inline GMatrix g_step_power(const GMatrix* prev, int q, const QaoaParams& params, const GammaVec& gamma) {
  const int p = params.p();
  const int ns = num_slices(p);
  if (prev != nullptr && prev->p() != p) throw std::invalid_argument("g_step: depth mismatch");
  if (prev != nullptr && prev->level() >= p) throw std::invalid_argument("g_step: matrix is already at level p");

  // M_{kl} = (G_{kl})^(q-1) Gamma_k Gamma_l by position; row/column of a_0 vanish.
  std::vector<cplx> m(std::size_t(ns) * ns, cplx{0.0, 0.0});
  if (prev != nullptr) {
    const auto g = gamma.by_position();
    for (int k = 0; k < ns; ++k) {
      for (int l = 0; l < ns; ++l) {
        m[std::size_t(k) * ns + l] = ipow_small(prev->at_pos(k, l), q - 1) * (g[k] * g[l]);
      }
    }
  }

  const FWeightTable f(params);
  const std::size_t width = std::size_t(ns) * (ns + 1) / 2;  // upper triangle j <= k
  const auto sums = parallel::block_sum(num_configs(p), width, [&](std::uint64_t begin, std::uint64_t end,
                                                                    std::span<cplx> acc) {
    std::vector<double> s(ns);
    for (std::uint64_t a = begin; a < end; ++a) {
      for (int k = 0; k < ns; ++k) s[k] = spin_at(a, k);
      cplx w = f(a);
      if (prev != nullptr) {
        cplx x{0.0, 0.0};
        for (int k = 0; k < ns; ++k) {
          cplx row{0.0, 0.0};
          const cplx* mk = &m[std::size_t(k) * ns];
          for (int l = 0; l < ns; ++l) row += mk[l] * s[l];
          x += row * s[k];
        }
        w *= std::exp(-0.5 * x);
      }
      std::size_t idx = 0;
      for (int j = 0; j < ns; ++j) {
        const cplx wj = w * s[j];
        for (int k = j; k < ns; ++k) acc[idx++] += wj * s[k];
      }
    }
  });

  GMatrix out(p, prev == nullptr ? 0 : prev->level() + 1);
  std::size_t idx = 0;
  for (int j = 0; j < ns; ++j) {
    for (int k = j; k < ns; ++k) {
      out.at_pos(j, k) = sums[idx];
      out.at_pos(k, j) = sums[idx];
      ++idx;
    }
  }
  // Diagonal and anti-diagonal are exactly one; the computed sums only
  // serve as a check on the normalization.
  for (int j = -p; j <= p; ++j) {
    for (int k : {j, -j}) {
      if (std::abs(out(j, k) - 1.0) > kImagResidualTolerance) {
        throw NumericFailure("g_step: normalization lost at (" + std::to_string(j) + ", " + std::to_string(k) + ")");
      }
      out(j, k) = cplx{1.0, 0.0};
    }
  }
  return out;
}

// (i / sqrt(2q)) sum_j Gamma_j (G_{0,j})^q, returned as a real number.
inline double nu_from_g(const GMatrix& g, int q, const GammaVec& gamma, const char* what) {
  cplx s{0.0, 0.0};
  for (int j = -g.p(); j <= g.p(); ++j) s += gamma(j) * ipow_small(g(0, j), q);
  return real_or_throw(cplx{0.0, 1.0 / std::sqrt(2.0 * q)} * s, what);
}

// Writes value v at (r, s), 1 <= r < s, and at every symmetry image.
inline void place_orbit(GMatrix& g, int r, int s, cplx v) {
  const cplx c = std::conj(v);
  g(r, s) = g(s, r) = v;
  g(r, -s) = g(-s, r) = v;
  g(-r, -s) = g(-s, -r) = c;
  g(-r, s) = g(s, -r) = c;
}

inline void place_cross(GMatrix& g) {
  for (int j = -g.p(); j <= g.p(); ++j) {
    g(j, j) = cplx{1.0, 0.0};
    g(j, -j) = cplx{1.0, 0.0};
  }
}

// exp(-E) with E from the simplified exponent, restricted to s' <= t_cap:
//   E = sum_s' gamma_s'^2 (1 - a_s' a_-s')
//     + sum_{r'<s'} gamma_r' gamma_s' [Gq_{r's'} a_r' - conj(Gq_{r's'}) a_-r'] (a_s' - a_-s')
// where Gq = G^(q-1). `coef[(s'-1)*p + (r'-1)]` holds gamma_r' gamma_s' Gq_{r's'}.
inline cplx h_from_coefficients(std::uint64_t a, int p, int t_cap, std::span<const cplx> coef,
                                std::span<const double> gamma_sq) {
  double e_re = 0.0;
  double e_im = 0.0;
  double diff[kMaxDepth];
  double sum[kMaxDepth];
  for (int s = 1; s <= t_cap; ++s) {
    const int u = spin_at(a, s - 1);
    const int v = spin_at(a, 2 * p + 1 - s);
    diff[s - 1] = u - v;
    sum[s - 1] = u + v;
    if (u == v) continue;
    e_re += 2.0 * gamma_sq[s - 1];
    double acc_re = 0.0;
    double acc_im = 0.0;
    const cplx* c = coef.data() + std::size_t(s - 1) * p;
    for (int r = 0; r < s - 1; ++r) {
      acc_re += c[r].real() * diff[r];
      acc_im += c[r].imag() * sum[r];
    }
    const double d = u - v;
    e_re += d * acc_re;
    e_im += d * acc_im;
  }
  if (e_re == 0.0 && e_im == 0.0) return {1.0, 0.0};
  return std::exp(cplx{-e_re, -e_im});
}

inline std::vector<cplx> h_coefficients(const GMatrix& g, int q, const QaoaParams& params, int s_max) {
  const int p = params.p();
  std::vector<cplx> coef(std::size_t(p) * p, cplx{0.0, 0.0});
  for (int s = 2; s <= s_max; ++s) {
    for (int r = 1; r < s; ++r) {
      coef[std::size_t(s - 1) * p + (r - 1)] = ipow_small(g(r, s), q - 1) * (params.gamma(r) * params.gamma(s));
    }
  }
  return coef;
}

inline std::vector<double> gamma_squares(const QaoaParams& params) {
  std::vector<double> g2(params.p());
  for (int r = 1; r <= params.p(); ++r) g2[r - 1] = params.gamma(r) * params.gamma(r);
  return g2;
}

// The placement iteration. Returns nu and, if requested, the final matrix.
inline double nu_placement(int q, const QaoaParams& params, GMatrix* final_matrix) {
  const int p = params.p();
  const GammaVec gamma(params);
  const FWeightTable f(params);
  const LevelEnumerator levels(p);
  const auto gamma_sq = gamma_squares(params);

  GMatrix prev(p, 0);
  place_cross(prev);
  // placed[(s-1)*p + (r-1)] marks the orbit of (r, s), r < s.
  std::vector<char> placed(std::size_t(p) * p, 0);

  for (int m = 1; m <= p; ++m) {
    // H^(m)(a) for T(a) <= m reads G^(m-1)_{r',s'} with s' <= m only.
    for (int s = 2; s <= m; ++s) {
      for (int r = 1; r < s; ++r) {
        if (!placed[std::size_t(s - 1) * p + (r - 1)]) {
          throw std::logic_error("placement: read of unplaced entry G(" + std::to_string(r) + "," +
                                 std::to_string(s) + ") at step " + std::to_string(m));
        }
      }
    }
    const auto coef = h_coefficients(prev, q, params, m);
    GMatrix cur = prev;
    cur.set_level(m);

    const bool last = (m == p);
    const int width = m;                     // r = 1..m (m == p on the last step)
    const int target = last ? 0 : m + 1;     // a_s for G_{r,s}, or a_0 for G_{0,r}
    const int target_pos = position_of(target, p);
    std::vector<cplx> total(width, cplx{0.0, 0.0});

    for (int level = 0; level <= m; ++level) {
      // On placement steps only r <= T(a) contributes from outside B_0.
      const int r_max = (level == 0 || last) ? width : level;
      const auto part = parallel::block_sum(levels.level_size(level), width,
                                            [&](std::uint64_t begin, std::uint64_t end, std::span<cplx> acc) {
        for (std::uint64_t idx = begin; idx < end; ++idx) {
          const std::uint64_t a = levels.at(level, idx);
          cplx w = f(a);
          if (level > 0) w *= h_from_coefficients(a, p, level, coef, gamma_sq);
          if (spin_at(a, target_pos) < 0) w = -w;
          for (int r = 1; r <= r_max; ++r) {
            if (spin_at(a, r - 1) > 0) acc[r - 1] += w;
            else acc[r - 1] -= w;
          }
        }
      });
      for (int k = 0; k < width; ++k) total[k] += part[k];
    }

    if (!last) {
      for (int r = 1; r <= m; ++r) {
        place_orbit(cur, r, m + 1, total[r - 1]);
        placed[std::size_t(m) * p + (r - 1)] = 1;
      }
    } else {
      for (int r = 1; r <= p; ++r) {
        cur(0, r) = cur(r, 0) = total[r - 1];
        cur(0, -r) = cur(-r, 0) = std::conj(total[r - 1]);
      }
    }
    prev = std::move(cur);
  }

  // (i/sqrt(2q)) sum_r gamma_r [G_{0,r}^q - conj(G_{0,r})^q]
  cplx s{0.0, 0.0};
  for (int r = 1; r <= p; ++r) {
    const cplx g0r = ipow_small(prev(0, r), q);
    s += params.gamma(r) * (g0r - std::conj(g0r));
  }
  if (final_matrix != nullptr) *final_matrix = prev;
  return real_or_throw(cplx{0.0, 1.0 / std::sqrt(2.0 * q)} * s, "nu_infinite_fast");
}

}  // namespace detail

/// G^(0)_{j,k} = sum_a f(a) a_j a_k.
inline GMatrix g_init(const QaoaParams& params) {
  return detail::g_step_power(nullptr, params.q(), params, GammaVec(params));
}

/// One naive MaxCut step G^(m-1) -> G^(m), every entry recomputed.
inline GMatrix g_step_naive(const GMatrix& prev, const QaoaParams& params, const GammaVec& gamma) {
  return detail::g_step_power(&prev, 2, params, gamma);
}

/// G^(p) by p naive steps from G^(0), for clause arity q.
inline GMatrix g_final_naive(const QaoaParams& params) {
  const GammaVec gamma(params);
  GMatrix g = g_init(params);
  for (int m = 1; m <= params.p(); ++m) g = detail::g_step_power(&g, params.q(), params, gamma);
  return g;
}

/// nu_p(gamma, beta) = lim_{D->inf} nu_p(D, gamma, beta) via the naive route.
inline double nu_infinite_naive(const QaoaParams& params) {
  if (params.q() != 2) throw std::invalid_argument("nu_infinite_naive: MaxCut requires q = 2");
  const GMatrix g = g_final_naive(params);
  return detail::nu_from_g(g, 2, GammaVec(params), "nu_infinite_naive");
}

/// H^(m)(a) from G^(m-1) through the simplified exponent, summing only
/// s' <= t_cap. Equal to the full exponent whenever t_cap >= T(a).
inline cplx h_infinite(const SpinConfig& a, const GMatrix& prev, const QaoaParams& params, int t_cap, int q = 2) {
  const int p = params.p();
  if (a.depth() != p || prev.p() != p) throw std::invalid_argument("h_infinite: depth mismatch");
  if (t_cap < t_index(a) || t_cap > p) throw std::invalid_argument("h_infinite: t_cap must lie in [T(a), p]");
  const auto coef = detail::h_coefficients(prev, q, params, t_cap);
  return detail::h_from_coefficients(a.bits(), p, t_cap, coef, detail::gamma_squares(params));
}

/// H^(m)(a) = exp(-1/2 sum_{j',k'} (G_{j'k'})^(q-1) Gamma_j' Gamma_k' a_j' a_k'), all terms.
inline cplx h_infinite_full(const SpinConfig& a, const GMatrix& prev, const GammaVec& gamma, int q = 2) {
  const int p = gamma.p();
  cplx x{0.0, 0.0};
  for (int j = -p; j <= p; ++j) {
    for (int k = -p; k <= p; ++k) {
      x += detail::ipow_small(prev(j, k), q - 1) * (gamma(j) * gamma(k) * a.spin(j) * a.spin(k));
    }
  }
  return std::exp(-0.5 * x);
}

/// nu_p(gamma, beta) via the O(p^2 4^p) placement route.
inline double nu_infinite_fast(const QaoaParams& params) {
  if (params.q() != 2) throw std::invalid_argument("nu_infinite_fast: MaxCut requires q = 2");
  return detail::nu_placement(2, params, nullptr);
}

/// The final matrix assembled by the placement route (every entry of G^(p)).
inline GMatrix g_final_fast(const QaoaParams& params) {
  GMatrix g(params.p(), params.p());
  detail::nu_placement(params.q(), params, &g);
  return g;
}

}  // namespace qaoa_girth
