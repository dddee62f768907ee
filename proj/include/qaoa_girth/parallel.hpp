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

#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qaoa_girth::parallel {

using cplx = std::complex<double>;

// Reductions split the index range into blocks whose size depends only on
// the range length. Per-block partial sums are combined in block order, so
// the result is bit-identical for any thread count.
inline constexpr std::uint64_t kBlockSize = std::uint64_t{1} << 12;

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

/// Sums `width` complex accumulators over the index range [0, count).
///
/// `body(begin, end, acc)` must add the contributions of indices
/// [begin, end) into `acc` (a span of `width` zero-initialized values).
template <class Body>
std::vector<cplx> block_sum(std::uint64_t count, std::size_t width, Body&& body) {
  std::vector<cplx> total(width, cplx{0.0, 0.0});
  if (count == 0 || width == 0) return total;
  const std::int64_t nblocks = static_cast<std::int64_t>((count + kBlockSize - 1) / kBlockSize);
  std::vector<cplx> partial(static_cast<std::size_t>(nblocks) * width, cplx{0.0, 0.0});

#pragma omp parallel for schedule(dynamic, 1) if (nblocks > 1)
  for (std::int64_t blk = 0; blk < nblocks; ++blk) {
    const std::uint64_t begin = static_cast<std::uint64_t>(blk) * kBlockSize;
    const std::uint64_t end = std::min(count, begin + kBlockSize);
    std::span<cplx> acc(partial.data() + static_cast<std::size_t>(blk) * width, width);
    body(begin, end, acc);
  }

  for (std::int64_t blk = 0; blk < nblocks; ++blk) {
    const cplx* src = partial.data() + static_cast<std::size_t>(blk) * width;
    for (std::size_t k = 0; k < width; ++k) total[k] += src[k];
  }
  return total;
}

/// Runs `fn(i)` for every i in [0, count); iterations must write disjoint data.
template <class Fn>
void for_each_index(std::uint64_t count, Fn&& fn) {
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static) if (n > 1024)
  for (std::int64_t i = 0; i < n; ++i) fn(static_cast<std::uint64_t>(i));
}

}  // namespace qaoa_girth::parallel
