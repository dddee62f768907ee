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

// Finite-D MaxCut iteration on the glued D-ary tree.
//
// Throughout, D is the branching factor: every tree node has D children and
// the underlying graph is (D+1)-regular.

#pragma once

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qaoa_girth/core.hpp"
#include "qaoa_girth/errors.hpp"
#include "qaoa_girth/parallel.hpp"

namespace qaoa_girth {

inline constexpr double kImagResidualTolerance = 1e-9;

// Finite-D sums are O(16^p); beyond this many configuration bits per side the
// double sum stops being a desk-scale computation.
inline constexpr int kMaxFiniteDepth = 6;

/// H_D^(m) over all 2^(2p+1) configurations.
struct HTable {
  int p = 0;
  int level = 0;
  long long branching = 0;  // D; zero until the first step
  std::vector<cplx> entries;

  cplx operator[](std::uint64_t bits) const { return entries[bits]; }
};

/// z^n by repeated squaring.
inline cplx ipow(cplx z, long long n) {
  cplx result{1.0, 0.0};
  while (n > 0) {
    if (n & 1) result *= z;
    z *= z;
    n >>= 1;
  }
  return result;
}

namespace detail {

inline void check_branching(long long D) {
  if (D < 1) throw std::invalid_argument("branching D must be >= 1");
}

inline void check_finite_depth(int p) {
  if (p > kMaxFiniteDepth) {
    throw std::invalid_argument("finite-D iteration supports p <= " + std::to_string(kMaxFiniteDepth) +
                                "; use the infinite-D iteration for deeper circuits");
  }
}

inline double real_or_throw(cplx z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw NumericFailure(std::string(what) + ": non-finite result");
  }
  if (std::abs(z.imag()) >= kImagResidualTolerance) {
    throw NumericFailure(std::string(what) + ": imaginary residual " + std::to_string(z.imag()));
  }
  return z.real();
}

// (1 + u)^n by repeated squaring, carried as offsets from one so that
// bases within O(1/D) of one keep their relative precision.
inline cplx pow_one_plus(cplx u, long long n) {
  cplx r{0.0, 0.0};
  while (n > 0) {
    if (n & 1) r += u + r * u;
    u = 2.0 * u + u * u;
    n >>= 1;
  }
  return 1.0 + r;
}

// cos(x) - 1 without cancellation.
inline double cos_minus_one(double x) {
  const double s = std::sin(0.5 * x);
  return -2.0 * s * s;
}

// entries[a] = ( sum_c cos(theta[a ^ c]) weight[c] )^D, given
// offset_kernel = cos(theta) - 1 and sum_c weight[c] = 1. The base is then
// 1 + sum_c offset_kernel[a ^ c] weight[c], which is 1 + O(1/D); summing the
// offset alone keeps the D-th power accurate for large D.
inline std::vector<cplx> xor_kernel_power(const std::vector<cplx>& weight, const std::vector<double>& offset_kernel,
                                          long long D, const char* what) {
  const std::uint64_t n = weight.size();
  std::vector<cplx> out(n);
  std::atomic<bool> bad{false};
  parallel::for_each_index(n, [&](std::uint64_t a) {
    cplx u{0.0, 0.0};
    for (std::uint64_t c = 0; c < n; ++c) u += offset_kernel[a ^ c] * weight[c];
    const cplx v = pow_one_plus(u, D);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) bad.store(true, std::memory_order_relaxed);
    out[a] = v;
  });
  if (bad.load()) throw NumericFailure(std::string(what) + ": overflow in complex power");
  return out;
}

}  // namespace detail

/// H_D^(0): every entry is exactly one.
inline HTable h_init(int p) {
  if (p < 1 || p > kMaxDepth) throw std::invalid_argument("h_init: bad depth");
  return HTable{p, 0, 0, std::vector<cplx>(num_configs(p), cplx{1.0, 0.0})};
}

/// One level of the finite-D recursion:
/// H^(m)(a) = ( sum_b f(b) H^(m-1)(b) cos(Gamma.(ab) / sqrt(D)) )^D.
inline HTable h_step(const HTable& prev, long long D, const QaoaParams& params, const GammaVec& gamma) {
  detail::check_branching(D);
  const int p = params.p();
  if (prev.p != p || gamma.p() != p) throw std::invalid_argument("h_step: depth mismatch");
  if (prev.level >= p) throw std::invalid_argument("h_step: table is already at level p");
  detail::check_finite_depth(p);

  const std::uint64_t n = num_configs(p);
  const FWeightTable f(params);
  std::vector<cplx> weight(n);
  for (std::uint64_t b = 0; b < n; ++b) weight[b] = f(b) * prev.entries[b];

  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(D));
  std::vector<double> kernel = gamma_dot_table(gamma);
  for (double& v : kernel) v = detail::cos_minus_one(v * inv_sqrt_d);

  return HTable{p, prev.level + 1, D, detail::xor_kernel_power(weight, kernel, D, "h_step")};
}

/// nu_p(D, gamma, beta): the scaled edge expectation on the (D+1)-regular
/// large-girth graph, so that the cut fraction is 1/2 + nu / sqrt(D).
inline double nu_finite(long long D, const QaoaParams& params) {
  detail::check_branching(D);
  if (params.q() != 2) throw std::invalid_argument("nu_finite: MaxCut requires q = 2");
  const int p = params.p();
  detail::check_finite_depth(p);
  const GammaVec gamma(params);

  HTable h = h_init(p);
  for (int m = 1; m <= p; ++m) h = h_step(h, D, params, gamma);

  const std::uint64_t n = num_configs(p);
  const FWeightTable f(params);
  const int zero_pos = position_of(0, p);
  std::vector<cplx> w(n);
  for (std::uint64_t a = 0; a < n; ++a) w[a] = static_cast<double>(spin_at(a, zero_pos)) * f(a) * h.entries[a];

  const double sqrt_d = std::sqrt(static_cast<double>(D));
  std::vector<double> sine = gamma_dot_table(gamma);
  for (double& v : sine) v = std::sin(v / sqrt_d);

  // The outer index is parallel; the inner sum runs in a fixed order.
  const auto total = parallel::block_sum(n, 1, [&](std::uint64_t begin, std::uint64_t end, std::span<cplx> acc) {
    for (std::uint64_t a = begin; a < end; ++a) {
      cplx inner{0.0, 0.0};
      for (std::uint64_t b = 0; b < n; ++b) inner += w[b] * sine[a ^ b];
      acc[0] += w[a] * inner;
    }
  });
  return detail::real_or_throw(cplx{0.0, 0.5 * sqrt_d} * total[0], "nu_finite");
}

}  // namespace qaoa_girth
