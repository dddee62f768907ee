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

// Dense statevector simulation of the QAOA on a small (hyper)tree.
//
// Basis index bit v is qubit v; bit value 1 means Z = -1. The cost operator is
// C = (1/sqrt(D)) sum_e J_e prod_{v in e} Z_v; each layer applies
// exp(-i gamma C) then exp(-i beta sum_v X_v).

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qaoa_girth/core.hpp"
#include "qaoa_girth/errors.hpp"
#include "qaoa_girth/parallel.hpp"
#include "qaoa_girth/tree.hpp"

namespace qaoa_girth {

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kJSpreadTolerance = 1e-12;

namespace detail {

inline std::vector<std::uint64_t> edge_masks(const TreeSpec& t) {
  std::vector<std::uint64_t> masks;
  masks.reserve(t.hyperedges.size());
  for (const auto& e : t.hyperedges) {
    std::uint64_t m = 0;
    for (int v : e) m |= std::uint64_t{1} << v;
    masks.push_back(m);
  }
  return masks;
}

inline double squared_norm(std::span<const cplx> psi) {
  const auto s = parallel::block_sum(psi.size(), 1, [&](std::uint64_t b, std::uint64_t e, std::span<cplx> acc) {
    double v = 0.0;
    for (std::uint64_t z = b; z < e; ++z) v += std::norm(psi[z]);
    acc[0] += v;
  });
  return s[0].real();
}

inline void check_norm(std::span<const cplx> psi, const char* layer, int r) {
  const double n = std::sqrt(squared_norm(psi));
  if (!(std::abs(n - 1.0) <= kNormTolerance)) {
    throw NormDriftError(std::string("statevector: norm ") + std::to_string(n) + " after " + layer + " layer " +
                         std::to_string(r));
  }
}

}  // namespace detail

/// The QAOA state on the tree's qubits for the given couplings
/// (empty span: use the tree's own couplings).
inline std::vector<cplx> simulate(const TreeSpec& t, const QaoaParams& params, std::span<const int> couplings = {}) {
  validate_tree(t);
  if (t.num_vertices > kMaxQubits) {
    throw SizeCapError("simulate: " + std::to_string(t.num_vertices) + " qubits exceed the cap of " +
                       std::to_string(kMaxQubits));
  }
  if (couplings.empty()) couplings = t.couplings;
  if (couplings.size() != t.hyperedges.size()) throw std::invalid_argument("simulate: one coupling per hyperedge");

  const int n = t.num_vertices;
  const std::uint64_t dim = std::uint64_t{1} << n;
  const auto masks = detail::edge_masks(t);
  const double scale = 1.0 / std::sqrt(static_cast<double>(t.D));

  std::vector<cplx> psi(dim, cplx{1.0 / std::sqrt(static_cast<double>(dim)), 0.0});
  for (int r = 1; r <= params.p(); ++r) {
    const double gamma = params.gamma(r);
    parallel::for_each_index(dim, [&](std::uint64_t z) {
      double c = 0.0;
      for (std::size_t e = 0; e < masks.size(); ++e) {
        c += (std::popcount(z & masks[e]) & 1) ? -couplings[e] : couplings[e];
      }
      psi[z] *= std::polar(1.0, -gamma * scale * c);
    });
    detail::check_norm(psi, "cost", r);

    const double cb = std::cos(params.beta(r));
    const double sb = std::sin(params.beta(r));
    for (int v = 0; v < n; ++v) {
      const std::uint64_t bit = std::uint64_t{1} << v;
      const std::uint64_t low = bit - 1;
      parallel::for_each_index(dim / 2, [&](std::uint64_t i) {
        const std::uint64_t z0 = ((i & ~low) << 1) | (i & low);
        const std::uint64_t z1 = z0 | bit;
        const cplx x0 = psi[z0];
        const cplx x1 = psi[z1];
        psi[z0] = cb * x0 + cplx{0.0, -sb} * x1;
        psi[z1] = cplx{0.0, -sb} * x0 + cb * x1;
      });
    }
    detail::check_norm(psi, "mixer", r);
  }
  return psi;
}

/// <prod_{v in e} Z_v> for every hyperedge e.
inline std::vector<double> parity_expectations(const TreeSpec& t, std::span<const cplx> psi) {
  const auto masks = detail::edge_masks(t);
  const auto sums = parallel::block_sum(psi.size(), masks.size(),
                                        [&](std::uint64_t b, std::uint64_t e, std::span<cplx> acc) {
    for (std::uint64_t z = b; z < e; ++z) {
      const double w = std::norm(psi[z]);
      for (std::size_t k = 0; k < masks.size(); ++k) {
        acc[k] += (std::popcount(z & masks[k]) & 1) ? -w : w;
      }
    }
  });
  std::vector<double> out(sums.size());
  for (std::size_t k = 0; k < sums.size(); ++k) out[k] = sums[k].real();
  return out;
}

/// nu read off the central clause: sqrt(2D/q) (satisfied fraction - 1/2)
/// = sqrt(D/2q) J_c <prod Z>, i.e. -sqrt(D/2q) <prod Z> for J = -1.
inline double statevector_nu(const TreeSpec& t, const QaoaParams& params) {
  const auto psi = simulate(t, params);
  const auto parity = parity_expectations(t, psi);
  const double jc = t.couplings[t.central_edge];
  return std::sqrt(static_cast<double>(t.D) / (2.0 * t.q)) * jc * parity[t.central_edge];
}

struct JIndependenceReport {
  std::vector<std::vector<int>> couplings;  // draw 0 is all -1
  std::vector<double> mean_fraction;        // satisfied fraction over all clauses
  std::vector<double> central_fraction;     // satisfied fraction of the central clause
  double max_deviation = 0.0;
  bool passed = false;
};

/// Satisfied fractions of clause e: (1 + J_e <prod Z>) / 2.
inline JIndependenceReport j_independence_test(const TreeSpec& t, const QaoaParams& params, int draws,
                                               std::uint64_t seed) {
  if (draws < 0) throw std::invalid_argument("j_independence_test: draws must be >= 0");
  validate_tree(t);
  JIndependenceReport rep;
  std::mt19937_64 rng(seed);
  rep.couplings.emplace_back(t.hyperedges.size(), -1);
  for (int d = 0; d < draws; ++d) {
    std::vector<int> j(t.hyperedges.size());
    for (int& v : j) v = (rng() >> 63) ? 1 : -1;
    rep.couplings.push_back(std::move(j));
  }
  for (const auto& j : rep.couplings) {
    const auto psi = simulate(t, params, j);
    const auto parity = parity_expectations(t, psi);
    double mean = 0.0;
    for (std::size_t e = 0; e < parity.size(); ++e) mean += 0.5 * (1.0 + j[e] * parity[e]);
    rep.mean_fraction.push_back(mean / static_cast<double>(parity.size()));
    rep.central_fraction.push_back(0.5 * (1.0 + j[t.central_edge] * parity[t.central_edge]));
  }
  auto spread = [](const std::vector<double>& v) {
    double lo = v.front(), hi = v.front();
    for (double x : v) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    return hi - lo;
  };
  rep.max_deviation = std::max(spread(rep.mean_fraction), spread(rep.central_fraction));
  rep.passed = rep.max_deviation < kJSpreadTolerance;
  return rep;
}

}  // namespace qaoa_girth
