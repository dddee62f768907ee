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

// Evaluates the published optimal angles for p = 1..p_max (default 8) in the
// D -> infinity limit and at a few finite branching factors.
//
//   qaoa_girth_demo [p_max]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "qaoa_girth.hpp"

namespace qg = qaoa_girth;

int main(int argc, char** argv) {
  const int p_max = argc > 1 ? std::atoi(argv[1]) : 8;
  if (p_max < 1 || p_max > 17) {
    std::fprintf(stderr, "usage: %s [p_max in 1..17]\n", argv[0]);
    return 2;
  }

  std::printf("%3s  %10s  %10s  %9s\n", "p", "published", "nu", "seconds");
  for (int p = 1; p <= p_max; ++p) {
    const auto x = qg::published::optimal_params(p);
    const auto t0 = std::chrono::steady_clock::now();
    const double nu = qg::nu_infinite_fast(x);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%3d  %10.4f  %10.6f  %9.3f\n", p, *qg::published::optimal_value(p), nu, dt);
  }

  // Cut fraction on (D+1)-regular graphs: 1/2 + nu(D) / sqrt(D).
  const auto x = qg::published::optimal_params(2);
  std::printf("\np = 2 cut fraction on (D+1)-regular large-girth graphs\n");
  for (long long D : {2LL, 3LL, 5LL, 10LL, 100LL}) {
    std::printf("  D+1 = %4lld  %.6f\n", D + 1, 0.5 + qg::nu_finite(D, x) / std::sqrt(static_cast<double>(D)));
  }
  return 0;
}
