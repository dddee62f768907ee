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

#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <vector>

#include "qaoa_girth/core.hpp"
#include "reference.hpp"

namespace qg = qaoa_girth;
using qg::cplx;
using qg::SpinConfig;

namespace {

constexpr double kPi = std::numbers::pi;

SpinConfig spins(std::vector<int> v) { return SpinConfig::from_spins(v); }

// Converts a packed configuration to the reference layout (index j + p).
ref::Spins to_ref(std::uint64_t bits, int p) {
  ref::Spins s(2 * p + 1);
  for (int j = -p; j <= p; ++j) s[j + p] = qg::spin_at(bits, qg::position_of(j, p));
  return s;
}

}  // namespace

TEST(QaoaParams, RejectsBadShapes) {
  EXPECT_THROW(qg::QaoaParams({}, {}), std::invalid_argument);
  EXPECT_THROW(qg::QaoaParams({0.1, 0.2}, {0.1}), std::invalid_argument);
  EXPECT_THROW(qg::QaoaParams({0.1}, {0.1}, 1), std::invalid_argument);
  EXPECT_THROW(qg::QaoaParams({std::nan("")}, {0.1}), std::invalid_argument);
  EXPECT_THROW(qg::QaoaParams({0.1}, {INFINITY}), std::invalid_argument);
  EXPECT_THROW(qg::QaoaParams(std::vector<double>(32, 0.1), std::vector<double>(32, 0.1)), std::invalid_argument);
}

TEST(QaoaParams, FlatVectorRoundTrip) {
  const qg::QaoaParams x({0.1, 0.2, 0.3}, {0.4, 0.5, 0.6}, 3);
  EXPECT_EQ(x.to_vector(), (std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5, 0.6}));
  EXPECT_EQ(qg::QaoaParams::from_vector(x.to_vector(), 3), x);
  EXPECT_EQ(x.gamma(2), 0.2);
  EXPECT_EQ(x.beta(3), 0.6);
  EXPECT_THROW(qg::QaoaParams::from_vector(std::vector<double>{1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST(GammaVec, LayoutAndAntisymmetry) {
  const qg::GammaVec g1(qg::QaoaParams({0.5}, {0.1}));
  EXPECT_EQ(g1(1), 0.5);
  EXPECT_EQ(g1(0), 0.0);
  EXPECT_EQ(g1(-1), -0.5);

  const qg::GammaVec g2(qg::QaoaParams({0.3817, 0.6655}, {0.4960, 0.2690}));
  const std::vector<double> expected{0.3817, 0.6655, 0.0, -0.6655, -0.3817};  // by position
  EXPECT_EQ(std::vector<double>(g2.by_position().begin(), g2.by_position().end()), expected);

  const qg::GammaVec z(qg::QaoaParams::zeros(2));
  for (int j = -2; j <= 2; ++j) EXPECT_EQ(z(j), 0.0);

  std::mt19937_64 rng(3);
  for (int p = 1; p <= 6; ++p) {
    const qg::GammaVec g(ref::random_params(rng, p));
    for (int j = -p; j <= p; ++j) EXPECT_EQ(g(-j), -g(j));
  }
}

TEST(SpinConfig, PackingOrder) {
  // (a_1, a_2, a_0, a_-2, a_-1)
  const auto a = spins({1, -1, 1, -1, 1});
  EXPECT_EQ(a.bits(), 0b01010u);
  EXPECT_EQ(a.spin(1), 1);
  EXPECT_EQ(a.spin(2), -1);
  EXPECT_EQ(a.spin(0), 1);
  EXPECT_EQ(a.spin(-2), -1);
  EXPECT_EQ(a.spin(-1), 1);
  for (int p = 1; p <= 5; ++p) {
    for (int j = -p; j <= p; ++j) EXPECT_EQ(qg::index_at(qg::position_of(j, p), p), j);
  }
  EXPECT_THROW(SpinConfig(0b1000, 1), std::invalid_argument);
  EXPECT_THROW(spins({1, 1}), std::invalid_argument);
  EXPECT_THROW(spins({1, 0, 1}), std::invalid_argument);
}

TEST(SpinConfig, ProductAndNegation) {
  const int p = 3;
  for (std::uint64_t x = 0; x < qg::num_configs(p); x += 5) {
    for (std::uint64_t y = 0; y < qg::num_configs(p); y += 7) {
      const SpinConfig a(x, p), b(y, p);
      const auto c = a * b;
      const auto n = -a;
      for (int j = -p; j <= p; ++j) {
        EXPECT_EQ(c.spin(j), a.spin(j) * b.spin(j));
        EXPECT_EQ(n.spin(j), -a.spin(j));
      }
    }
  }
}

TEST(TransferAmp, Values) {
  const double c = std::cos(kPi / 8), s = std::sin(kPi / 8);
  EXPECT_EQ(qg::transfer_amp(1, 1, kPi / 8, 1), cplx(c, 0));
  EXPECT_EQ(qg::transfer_amp(1, -1, kPi / 8, 1), cplx(0, s));
  EXPECT_EQ(qg::transfer_amp(-1, 1, kPi / 8, -1), cplx(0, -s));
  EXPECT_NEAR(c, 0.92388, 1e-5);
  EXPECT_NEAR(s, 0.38268, 1e-5);
}

TEST(FWeight, SmallCases) {
  const qg::QaoaParams x({0.5}, {kPi / 8});
  const cplx all_up = qg::f_weight(spins({1, 1, 1}), x);
  EXPECT_NEAR(all_up.real(), 0.5 * std::pow(std::cos(kPi / 8), 2), 1e-15);
  EXPECT_NEAR(all_up.real(), 0.42678, 1e-5);
  EXPECT_EQ(all_up.imag(), 0.0);
  const cplx last_down = qg::f_weight(spins({1, 1, -1}), x);
  EXPECT_NEAR(last_down.real(), 0.0, 1e-16);
  EXPECT_NEAR(last_down.imag(), -0.5 * std::cos(kPi / 8) * std::sin(kPi / 8), 1e-15);
  EXPECT_NEAR(last_down.imag(), -0.17678, 1e-5);
}

TEST(FWeight, MatchesReferenceAndTable) {
  std::mt19937_64 rng(11);
  for (int p = 1; p <= 5; ++p) {
    const auto x = ref::random_params(rng, p, 2, 1.0, kPi);
    const qg::FWeightTable table(x);
    for (std::uint64_t a = 0; a < qg::num_configs(p); ++a) {
      const cplx lit = qg::f_weight(SpinConfig(a, p), x);
      const cplx r = ref::f(to_ref(a, p), x);
      EXPECT_NEAR(std::abs(lit - r), 0.0, 1e-15);
      EXPECT_NEAR(std::abs(table(a) - lit), 0.0, 1e-15);
    }
  }
}

TEST(FWeight, SumsToOneOverAllAndMirrorSymmetric) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ub(-kPi, kPi);
  for (int draw = 0; draw < 200; ++draw) {
    const int p = 1 + draw % 6;
    std::vector<double> b(p);
    for (double& v : b) v = ub(rng);
    const qg::QaoaParams x(std::vector<double>(p, 0.0), b);
    const qg::FWeightTable f(x);
    cplx all = 0.0, mirror = 0.0;
    for (std::uint64_t a = 0; a < qg::num_configs(p); ++a) {
      all += f(a);
      if (qg::t_index(a, p) == 0) mirror += f(a);
    }
    EXPECT_NEAR(std::abs(all - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(mirror - 1.0), 0.0, 1e-12);
  }
}

TEST(FWeight, PrimeFlipsSign) {
  // Same factors up to sign, multiplied in a different order: equal to rounding.
  std::mt19937_64 rng(19);
  for (int p = 1; p <= 5; ++p) {
    const auto x = ref::random_params(rng, p, 2, 1.0, kPi);
    for (std::uint64_t bits = 0; bits < qg::num_configs(p); ++bits) {
      const SpinConfig a(bits, p);
      if (qg::t_index(a) == 0) continue;
      EXPECT_NEAR(std::abs(qg::f_weight(qg::prime(a), x) + qg::f_weight(a, x)), 0.0, 1e-15);
    }
  }
}

TEST(FWeight, ReversalConjugatesAndNegationPreserves) {
  std::mt19937_64 rng(23);
  for (int p = 1; p <= 5; ++p) {
    const auto x = ref::random_params(rng, p, 2, 1.0, kPi);
    for (std::uint64_t bits = 0; bits < qg::num_configs(p); ++bits) {
      const SpinConfig a(bits, p);
      EXPECT_NEAR(std::abs(qg::f_weight(qg::reverse(a), x) - std::conj(qg::f_weight(a, x))), 0.0, 1e-15);
      EXPECT_NEAR(std::abs(qg::f_weight(-a, x) - qg::f_weight(a, x)), 0.0, 1e-15);
    }
  }
}

TEST(TIndex, Examples) {
  // (a_1, a_2, a_3, a_0, a_-3, a_-2, a_-1) at p = 3.
  EXPECT_EQ(qg::t_index(spins({1, 1, 1, 1, -1, 1, 1})), 3);
  EXPECT_EQ(qg::t_index(spins({1, 1, 1, 1, 1, -1, 1})), 2);
  EXPECT_EQ(qg::t_index(spins({1, 1, 1, 1, 1, 1, -1})), 1);
  EXPECT_EQ(qg::t_index(spins({1, -1, 1, -1, 1, -1, 1})), 0);
  EXPECT_EQ(qg::t_index(spins({-1, 1, 1, 1, 1, 1, 1})), 1);
}

TEST(Prime, ExampleRows) {
  // Generic a with T(a) = 3, 2, 1: a' flips a_{+-r} for r <= T(a).
  const int a1 = 1, a2 = -1, a3 = 1, a0 = -1, am2 = 1, am1 = -1;
  EXPECT_EQ(qg::prime(spins({a1, a2, a3, a0, -a3, am2, am1})), spins({-a1, -a2, -a3, a0, a3, -am2, -am1}));
  EXPECT_EQ(qg::prime(spins({a1, a2, a3, a0, a3, -a2, am1})), spins({-a1, -a2, a3, a0, a3, a2, -am1}));
  EXPECT_EQ(qg::prime(spins({a1, a2, a3, a0, a3, a2, -a1})), spins({-a1, a2, a3, a0, a3, a2, a1}));
  EXPECT_THROW(qg::prime(spins({a1, a2, a3, a0, a3, a2, a1})), std::invalid_argument);
}

TEST(Prime, InvolutionPreservesLevel) {
  for (int p = 1; p <= 5; ++p) {
    for (std::uint64_t bits = 0; bits < qg::num_configs(p); ++bits) {
      const SpinConfig a(bits, p);
      if (qg::t_index(a) == 0) continue;
      const auto b = qg::prime(a);
      EXPECT_EQ(qg::t_index(b), qg::t_index(a));
      EXPECT_EQ(qg::prime(b), a);
      EXPECT_EQ(b.spin(0), a.spin(0));
    }
  }
}

TEST(Reverse, InvolutionAndFixedPoints) {
  for (int p = 1; p <= 5; ++p) {
    for (std::uint64_t bits = 0; bits < qg::num_configs(p); ++bits) {
      const SpinConfig a(bits, p);
      const auto r = qg::reverse(a);
      for (int j = -p; j <= p; ++j) EXPECT_EQ(r.spin(j), a.spin(-j));
      EXPECT_EQ(qg::reverse(r), a);
      if (qg::t_index(a) == 0) {
        EXPECT_EQ(r, a);
      }
    }
  }
}

TEST(GammaDot, Identities) {
  std::mt19937_64 rng(29);
  for (int p = 1; p <= 4; ++p) {
    const auto x = ref::random_params(rng, p);
    const qg::GammaVec g(x);
    const qg::GammaVec zero(qg::QaoaParams::zeros(p));
    for (std::uint64_t u = 0; u < qg::num_configs(p); u += 3) {
      for (std::uint64_t v = 0; v < qg::num_configs(p); v += 5) {
        const SpinConfig a(u, p), b(v, p);
        double lit = 0.0;
        for (int j = -p; j <= p; ++j) lit += g(j) * a.spin(j) * b.spin(j);
        EXPECT_NEAR(qg::gamma_dot(g, a, b), lit, 1e-14);
        EXPECT_NEAR(qg::gamma_dot(g, qg::reverse(a), qg::reverse(b)), -qg::gamma_dot(g, a, b), 1e-14);
        EXPECT_EQ(qg::gamma_dot(zero, a, b), 0.0);
      }
      const SpinConfig a(u, p);
      EXPECT_NEAR(qg::gamma_dot(g, a, a), 0.0, 1e-15);
    }
  }
}

TEST(LevelEnumerator, CensusAndCoverage) {
  for (int p = 1; p <= 6; ++p) {
    const qg::LevelEnumerator levels(p);
    std::vector<int> seen(qg::num_configs(p), 0);
    std::vector<std::uint64_t> census(p + 1, 0);
    for (std::uint64_t bits = 0; bits < qg::num_configs(p); ++bits) ++census[qg::t_index(bits, p)];
    EXPECT_EQ(census[0], std::uint64_t{1} << (p + 1));
    for (int l = 1; l <= p; ++l) EXPECT_EQ(census[l], std::uint64_t{1} << (p + l));
    for (int l = 0; l <= p; ++l) {
      EXPECT_EQ(levels.level_size(l), census[l]);
      for (std::uint64_t i = 0; i < levels.level_size(l); ++i) {
        const auto a = levels.at(l, i);
        ASSERT_LT(a, qg::num_configs(p));
        EXPECT_EQ(qg::t_index(a, p), l);
        ++seen[a];
      }
    }
    for (int s : seen) EXPECT_EQ(s, 1);
  }
}
