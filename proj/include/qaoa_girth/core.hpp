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

// Spin-configuration algebra shared by every iteration.
//
// A configuration assigns a spin to each of the 2p+1 "time slices" of a
// depth-p QAOA, ordered (a_1, ..., a_p, a_0, a_{-p}, ..., a_{-1}). It is
// packed LSB-first in that order: bit k holds the k-th entry, bit value 0
// means spin +1 and 1 means spin -1. With this packing the entrywise product
// of two configurations is XOR, global negation is XOR with the full mask, and
// mirror reversal (a_j -> a_{-j}) is a reversal of the 2p+1 bits.

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qaoa_girth {

using cplx = std::complex<double>;

inline constexpr int kMaxDepth = 31;  // 2p+1 bits must fit in 64

/// The 2p variational angles of a depth-p QAOA together with the clause arity.
///
/// Angles follow the scaled convention: the cost operator carries a 1/sqrt(D)
/// prefactor, so good gammas are of order one. q = 2 is MaxCut.
class QaoaParams {
 public:
  QaoaParams(std::vector<double> gamma, std::vector<double> beta, int q = 2)
      : gamma_(std::move(gamma)), beta_(std::move(beta)), q_(q) {
    validate();
  }

  /// Parameters with every angle set to zero.
  static QaoaParams zeros(int p, int q = 2) {
    if (p < 1) throw std::invalid_argument("QaoaParams: p must be >= 1");
    return QaoaParams(std::vector<double>(p, 0.0), std::vector<double>(p, 0.0), q);
  }

  /// Inverse of `to_vector`: x = (gamma_1..gamma_p, beta_1..beta_p).
  static QaoaParams from_vector(std::span<const double> x, int q = 2) {
    if (x.empty() || x.size() % 2 != 0) {
      throw std::invalid_argument("QaoaParams: flat vector must have even, nonzero length");
    }
    const std::size_t p = x.size() / 2;
    return QaoaParams(std::vector<double>(x.begin(), x.begin() + p),
                      std::vector<double>(x.begin() + p, x.end()), q);
  }

  int p() const { return static_cast<int>(gamma_.size()); }
  int q() const { return q_; }
  const std::vector<double>& gamma() const { return gamma_; }
  const std::vector<double>& beta() const { return beta_; }
  double gamma(int r) const { return gamma_.at(r - 1); }  // 1-based
  double beta(int r) const { return beta_.at(r - 1); }    // 1-based

  std::vector<double> to_vector() const {
    std::vector<double> x(gamma_);
    x.insert(x.end(), beta_.begin(), beta_.end());
    return x;
  }

  QaoaParams negated() const {
    std::vector<double> g(gamma_), b(beta_);
    for (double& v : g) v = -v;
    for (double& v : b) v = -v;
    return QaoaParams(std::move(g), std::move(b), q_);
  }

  QaoaParams with_q(int q) const { return QaoaParams(gamma_, beta_, q); }

  friend bool operator==(const QaoaParams&, const QaoaParams&) = default;

 private:
  void validate() const {
    if (gamma_.empty()) throw std::invalid_argument("QaoaParams: p must be >= 1");
    if (gamma_.size() != beta_.size()) {
      throw std::invalid_argument("QaoaParams: gamma and beta must both have length p");
    }
    if (gamma_.size() > static_cast<std::size_t>(kMaxDepth)) {
      throw std::invalid_argument("QaoaParams: p exceeds the supported maximum of " +
                                  std::to_string(kMaxDepth));
    }
    if (q_ < 2) throw std::invalid_argument("QaoaParams: q must be >= 2");
    for (double v : gamma_) {
      if (!std::isfinite(v)) throw std::invalid_argument("QaoaParams: non-finite gamma");
    }
    for (double v : beta_) {
      if (!std::isfinite(v)) throw std::invalid_argument("QaoaParams: non-finite beta");
    }
  }

  std::vector<double> gamma_;
  std::vector<double> beta_;
  int q_;
};

// ---------------------------------------------------------------------------
// Index <-> bit-position mapping.

/// Bit position of slice index j in [-p, p].
constexpr int position_of(int j, int p) {
  if (j > 0) return j - 1;
  if (j == 0) return p;
  return 2 * p + 1 + j;
}

/// Slice index stored at bit position k in [0, 2p].
constexpr int index_at(int k, int p) {
  if (k < p) return k + 1;
  if (k == p) return 0;
  return k - 2 * p - 1;
}

constexpr int num_slices(int p) { return 2 * p + 1; }

constexpr std::uint64_t full_mask(int p) {
  return (std::uint64_t{1} << num_slices(p)) - 1;
}

constexpr std::uint64_t num_configs(int p) { return std::uint64_t{1} << num_slices(p); }

/// Spin (+1 / -1) at bit position k of packed bits.
constexpr int spin_at(std::uint64_t bits, int k) { return ((bits >> k) & 1U) ? -1 : 1; }

/// Reverses the low `width` bits.
constexpr std::uint64_t reverse_bits(std::uint64_t bits, int width) {
  std::uint64_t out = 0;
  for (int k = 0; k < width; ++k) out |= ((bits >> k) & 1U) << (width - 1 - k);
  return out;
}

// ---------------------------------------------------------------------------

/// The (2p+1)-component vector (gamma_1..gamma_p, 0, -gamma_p..-gamma_1).
class GammaVec {
 public:
  explicit GammaVec(const QaoaParams& params) : p_(params.p()), values_(num_slices(p_), 0.0) {
    for (int r = 1; r <= p_; ++r) {
      values_[position_of(r, p_)] = params.gamma(r);
      values_[position_of(-r, p_)] = -params.gamma(r);
    }
  }

  int p() const { return p_; }
  /// Component for slice index j in [-p, p].
  double operator()(int j) const { return values_.at(position_of(j, p_)); }
  /// Components in bit-position order.
  std::span<const double> by_position() const { return values_; }

 private:
  int p_;
  std::vector<double> values_;
};

inline GammaVec gamma_vec(const QaoaParams& params) { return GammaVec(params); }

/// A packed spin configuration for a depth-p QAOA.
class SpinConfig {
 public:
  SpinConfig(std::uint64_t bits, int p) : bits_(bits), p_(p) {
    if (p < 1 || p > kMaxDepth) throw std::invalid_argument("SpinConfig: bad depth");
    if ((bits & ~full_mask(p)) != 0) {
      throw std::invalid_argument("SpinConfig: bits set beyond position 2p");
    }
  }

  /// Builds from spins listed in vector order (a_1..a_p, a_0, a_{-p}..a_{-1}).
  static SpinConfig from_spins(std::span<const int> spins) {
    if (spins.size() % 2 != 1) throw std::invalid_argument("SpinConfig: need 2p+1 spins");
    const int p = static_cast<int>(spins.size() / 2);
    std::uint64_t bits = 0;
    for (std::size_t k = 0; k < spins.size(); ++k) {
      if (spins[k] != 1 && spins[k] != -1) throw std::invalid_argument("SpinConfig: spins are +1/-1");
      if (spins[k] == -1) bits |= std::uint64_t{1} << k;
    }
    return SpinConfig(bits, p);
  }

  std::uint64_t bits() const { return bits_; }
  int depth() const { return p_; }
  /// Spin at slice index j in [-p, p].
  int spin(int j) const { return spin_at(bits_, position_of(j, p_)); }

  SpinConfig operator-() const { return SpinConfig(bits_ ^ full_mask(p_), p_); }
  /// Entrywise product.
  friend SpinConfig operator*(const SpinConfig& a, const SpinConfig& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("SpinConfig: depth mismatch");
    return SpinConfig(a.bits_ ^ b.bits_, a.p_);
  }
  friend bool operator==(const SpinConfig&, const SpinConfig&) = default;

 private:
  std::uint64_t bits_;
  int p_;
};

/// <x| exp(i * sign * beta * X) |y> for spins x, y.
inline cplx transfer_amp(int x, int y, double beta, int sign) {
  if (x == y) return {std::cos(beta), 0.0};
  return {0.0, sign * std::sin(beta)};
}

/// The chain weight f(a): half the product of the 2p transfer amplitudes,
/// forward with +beta_1..+beta_p up to a_0, then back with -beta_p..-beta_1.
inline cplx f_weight(const SpinConfig& a, const QaoaParams& params) {
  const int p = params.p();
  if (a.depth() != p) throw std::invalid_argument("f_weight: depth mismatch");
  cplx prod{0.5, 0.0};
  for (int k = 0; k < 2 * p; ++k) {
    const int x = spin_at(a.bits(), k);
    const int y = spin_at(a.bits(), k + 1);
    // Slice k -> k+1 uses beta_{k+1} on the way in and beta_{2p-k} on the way out.
    prod *= (k < p) ? transfer_amp(x, y, params.beta(k + 1), +1)
                    : transfer_amp(x, y, params.beta(2 * p - k), -1);
  }
  return prod;
}

/// Largest r with a_r != a_{-r}; zero for mirror-symmetric configurations.
inline int t_index(std::uint64_t bits, int p) {
  for (int r = p; r >= 1; --r) {
    if (((bits >> position_of(r, p)) ^ (bits >> position_of(-r, p))) & 1U) return r;
  }
  return 0;
}

inline int t_index(const SpinConfig& a) { return t_index(a.bits(), a.depth()); }

/// Mask of positions holding a_{+-r} for 1 <= r <= t.
constexpr std::uint64_t outer_mask(int t, int p) {
  if (t <= 0) return 0;
  const std::uint64_t low = (std::uint64_t{1} << t) - 1;  // positions 0..t-1
  return low | (low << (2 * p + 1 - t));                  // positions 2p+1-t..2p
}

/// Flips a_{+-r} for every r <= T(a). Undefined (and rejected) on B_0.
inline SpinConfig prime(const SpinConfig& a) {
  const int t = t_index(a);
  if (t == 0) throw std::invalid_argument("prime: configuration is mirror-symmetric");
  return SpinConfig(a.bits() ^ outer_mask(t, a.depth()), a.depth());
}

/// Mirror reversal a_j -> a_{-j}.
inline SpinConfig reverse(const SpinConfig& a) {
  return SpinConfig(reverse_bits(a.bits(), num_slices(a.depth())), a.depth());
}

/// Gamma . (a b) for a packed product c = a XOR b.
inline double gamma_dot(std::span<const double> gamma_by_position, std::uint64_t product_bits) {
  double s = 0.0;
  for (std::size_t k = 0; k < gamma_by_position.size(); ++k) {
    s += ((product_bits >> k) & 1U) ? -gamma_by_position[k] : gamma_by_position[k];
  }
  return s;
}

inline double gamma_dot(const GammaVec& g, const SpinConfig& a, const SpinConfig& b) {
  if (a.depth() != g.p() || b.depth() != g.p()) throw std::invalid_argument("gamma_dot: depth mismatch");
  return gamma_dot(g.by_position(), a.bits() ^ b.bits());
}

/// Table of Gamma . c for every packed product c.
inline std::vector<double> gamma_dot_table(const GammaVec& g) {
  const std::uint64_t n = num_configs(g.p());
  std::vector<double> table(n);
  for (std::uint64_t c = 0; c < n; ++c) table[c] = gamma_dot(g.by_position(), c);
  return table;
}

/// Constant-time f(a) from two half-chain tables of 2^(p+1) entries each.
class FWeightTable {
 public:
  explicit FWeightTable(const QaoaParams& params)
      : p_(params.p()),
        half_mask_((std::uint64_t{1} << (params.p() + 1)) - 1),
        fwd_(std::size_t{1} << (params.p() + 1)),
        bwd_(std::size_t{1} << (params.p() + 1)) {
    const int p = p_;
    for (std::uint64_t h = 0; h <= half_mask_; ++h) {
      // fwd_: positions 0..p, links k -> k+1 for k < p.
      cplx f{0.5, 0.0};
      for (int k = 0; k < p; ++k) {
        f *= transfer_amp(spin_at(h, k), spin_at(h, k + 1), params.beta(k + 1), +1);
      }
      fwd_[h] = f;
      // bwd_: h holds positions p..2p shifted down by p.
      cplx b{1.0, 0.0};
      for (int k = p; k < 2 * p; ++k) {
        b *= transfer_amp(spin_at(h, k - p), spin_at(h, k - p + 1), params.beta(2 * p - k), -1);
      }
      bwd_[h] = b;
    }
  }

  int p() const { return p_; }
  cplx operator()(std::uint64_t bits) const { return fwd_[bits & half_mask_] * bwd_[bits >> p_]; }

 private:
  int p_;
  std::uint64_t half_mask_;
  std::vector<cplx> fwd_;
  std::vector<cplx> bwd_;
};

/// Enumerates the configurations with a fixed outermost mirror break.
///
/// Level 0 is B_0 (2^(p+1) members); level l >= 1 is {a : T(a) = l}
/// (2^(p+l) members). Within level l the free bits are a_1..a_p, a_0 and
/// a_{-1}..a_{-(l-1)}; a_{-l} = -a_l and a_{-r} = a_r for r > l.
class LevelEnumerator {
 public:
  explicit LevelEnumerator(int p) : p_(p), mirror_(std::size_t{1} << p) {
    if (p < 1 || p > kMaxDepth) throw std::invalid_argument("LevelEnumerator: bad depth");
    for (std::uint64_t x = 0; x < mirror_.size(); ++x) {
      // position r-1 -> position 2p+1-r, i.e. k -> 2p-k
      std::uint64_t m = 0;
      for (int k = 0; k < p; ++k) m |= ((x >> k) & 1U) << (2 * p - k);
      mirror_[x] = m;
    }
  }

  int p() const { return p_; }

  static std::uint64_t level_size(int p, int level) {
    return std::uint64_t{1} << (level == 0 ? p + 1 : p + level);
  }
  std::uint64_t level_size(int level) const { return level_size(p_, level); }

  /// The idx-th member of the given level; idx < level_size(level).
  std::uint64_t at(int level, std::uint64_t idx) const {
    const std::uint64_t low = idx & ((std::uint64_t{1} << (p_ + 1)) - 1);  // a_1..a_p, a_0
    std::uint64_t bits = low | mirror_[low & ((std::uint64_t{1} << p_) - 1)];
    if (level > 0) {
      bits ^= std::uint64_t{1} << (2 * p_ + 1 - level);  // a_{-l} = -a_l
      const std::uint64_t inner = idx >> (p_ + 1);        // a_{-1}..a_{-(l-1)}
      bits ^= inner << (2 * p_ + 2 - level);
    }
    return bits;
  }

 private:
  int p_;
  std::vector<std::uint64_t> mirror_;
};

}  // namespace qaoa_girth
