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

// Max-q-XORSAT on D-regular q-uniform hypergraphs of large girth.
//
// The finite-D sums over (q-1)- and q-tuples of configurations only depend on
// the entrywise product of the tuple, so they are grouped by that product:
// the tuple weight becomes an iterated XOR convolution of the per-config
// weight, which costs O(q 16^p) instead of O(4^(pq)).

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qaoa_girth/core.hpp"
#include "qaoa_girth/errors.hpp"
#include "qaoa_girth/finite_d.hpp"
#include "qaoa_girth/infinite_d.hpp"
#include "qaoa_girth/parallel.hpp"
#include "qaoa_girth/tree.hpp"

namespace qaoa_girth {

enum class Method { naive, fast };

namespace detail {

inline void check_arity(int q) {
  if (q < 2) throw std::invalid_argument("clause arity q must be >= 2");
}

// out[c] = sum_b x[b] y[b ^ c]
inline std::vector<cplx> xor_convolve(const std::vector<cplx>& x, const std::vector<cplx>& y) {
  const std::uint64_t n = x.size();
  std::vector<cplx> out(n);
  parallel::for_each_index(n, [&](std::uint64_t c) {
    cplx s{0.0, 0.0};
    for (std::uint64_t b = 0; b < n; ++b) s += x[b] * y[b ^ c];
    out[c] = s;
  });
  return out;
}

// Weight of each product value over k-tuples: the k-fold XOR convolution.
inline std::vector<cplx> tuple_weight(const std::vector<cplx>& w, int k) {
  std::vector<cplx> acc = w;
  for (int i = 1; i < k; ++i) acc = xor_convolve(acc, w);
  return acc;
}

}  // namespace detail

/// H^(m)(a) = ( sum_{b^1..b^{q-1}} cos(Gamma.(a b^1 ... b^{q-1}) / sqrt(D))
///              prod_i f(b^i) H^(m-1)(b^i) )^D.
inline HTable h_step_q(const HTable& prev, long long D, int q, const QaoaParams& params, const GammaVec& gamma) {
  detail::check_arity(q);
  detail::check_branching(D);
  const int p = params.p();
  if (prev.p != p || gamma.p() != p) throw std::invalid_argument("h_step_q: depth mismatch");
  if (prev.level >= p) throw std::invalid_argument("h_step_q: table is already at level p");
  detail::check_finite_depth(p);

  const std::uint64_t n = num_configs(p);
  const FWeightTable f(params);
  std::vector<cplx> weight(n);
  for (std::uint64_t b = 0; b < n; ++b) weight[b] = f(b) * prev.entries[b];
  const auto grouped = detail::tuple_weight(weight, q - 1);

  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(D));
  std::vector<double> kernel = gamma_dot_table(gamma);
  for (double& v : kernel) v = detail::cos_minus_one(v * inv_sqrt_d);

  return HTable{p, prev.level + 1, D, detail::xor_kernel_power(grouped, kernel, D, "h_step_q")};
}

/// nu_p^[q](D): the satisfied fraction per clause is 1/2 + nu sqrt(q / 2D).
inline double nu_q_finite(long long D, int q, const QaoaParams& params) {
  detail::check_arity(q);
  detail::check_branching(D);
  const int p = params.p();
  detail::check_finite_depth(p);
  const GammaVec gamma(params);

  HTable h = h_init(p);
  for (int m = 1; m <= p; ++m) h = h_step_q(h, D, q, params, gamma);

  const std::uint64_t n = num_configs(p);
  const FWeightTable f(params);
  const int zero_pos = position_of(0, p);
  std::vector<cplx> w(n);
  for (std::uint64_t a = 0; a < n; ++a) w[a] = static_cast<double>(spin_at(a, zero_pos)) * f(a) * h.entries[a];
  const auto grouped = detail::tuple_weight(w, q - 1);

  const double sqrt_d = std::sqrt(static_cast<double>(D));
  std::vector<double> sine = gamma_dot_table(gamma);
  for (double& v : sine) v = std::sin(v / sqrt_d);

  const auto total = parallel::block_sum(n, 1, [&](std::uint64_t begin, std::uint64_t end, std::span<cplx> acc) {
    for (std::uint64_t a = begin; a < end; ++a) {
      cplx inner{0.0, 0.0};
      for (std::uint64_t b = 0; b < n; ++b) inner += grouped[b] * sine[a ^ b];
      acc[0] += w[a] * inner;
    }
  });
  const double pref = std::sqrt(static_cast<double>(D) / (2.0 * q));
  return detail::real_or_throw(cplx{0.0, pref} * total[0], "nu_q_finite");
}

/// One naive step of the D -> infinity iteration with (q-1)-th powers in the exponent.
inline GMatrix g_step_q(const GMatrix& prev, int q, const QaoaParams& params, const GammaVec& gamma) {
  detail::check_arity(q);
  return detail::g_step_power(&prev, q, params, gamma);
}

/// nu_p^[q] = lim_{D->inf} nu_p^[q](D). The clause arity is `q`; params.q() is ignored.
inline double nu_q_infinite(int q, const QaoaParams& params, Method method = Method::fast) {
  detail::check_arity(q);
  const QaoaParams pq = params.with_q(q);
  if (method == Method::fast) return detail::nu_placement(q, pq, nullptr);
  const GMatrix g = g_final_naive(pq);
  return detail::nu_from_g(g, q, GammaVec(pq), "nu_q_infinite");
}

/// Gauge walk from the central clause outward: every clause reached through
/// one already-fixed vertex flips one of its fresh vertices if its coupling
/// is +1. Returns true iff all couplings end at -1; the flipped vertices are
/// appended to `flipped` if given. Throws on cycles.
inline bool j_resign_check(const TreeSpec& t, std::span<const int> couplings, std::vector<int>* flipped = nullptr) {
  validate_tree(t);
  if (couplings.size() != t.hyperedges.size()) throw std::invalid_argument("j_resign_check: one coupling per hyperedge");
  for (int j : couplings) {
    if (j != 1 && j != -1) throw std::invalid_argument("j_resign_check: couplings must be +1 or -1");
  }

  std::vector<std::vector<int>> incident(t.num_vertices);
  for (std::size_t e = 0; e < t.hyperedges.size(); ++e) {
    for (int v : t.hyperedges[e]) incident[v].push_back(static_cast<int>(e));
  }
  std::vector<int> j(couplings.begin(), couplings.end());
  std::vector<char> fixed(t.num_vertices, 0);
  std::vector<char> queued(t.hyperedges.size(), 0);
  std::deque<int> order{t.central_edge};
  queued[t.central_edge] = 1;

  while (!order.empty()) {
    const int e = order.front();
    order.pop_front();
    if (j[e] == 1) {
      int free_vertex = -1;
      for (int v : t.hyperedges[e]) {
        if (!fixed[v]) {
          free_vertex = v;
          break;
        }
      }
      if (free_vertex < 0) return false;
      for (int f : incident[free_vertex]) j[f] = -j[f];
      if (flipped != nullptr) flipped->push_back(free_vertex);
    }
    for (int v : t.hyperedges[e]) {
      fixed[v] = 1;
      for (int f : incident[v]) {
        if (!queued[f]) {
          queued[f] = 1;
          order.push_back(f);
        }
      }
    }
  }
  for (int v : j) {
    if (v != -1) return false;
  }
  return true;
}

inline bool j_resign_check(const TreeSpec& t) { return j_resign_check(t, t.couplings); }

}  // namespace qaoa_girth
