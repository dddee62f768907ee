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

#include <cmath>
#include <numbers>
#include <random>

#include "qaoa_girth/xorsat.hpp"
#include "reference.hpp"

namespace qg = qaoa_girth;
using qg::cplx;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST(HStepQ, ArityTwoIsMaxCutStep) {
  std::mt19937_64 rng(301);
  for (int draw = 0; draw < 20; ++draw) {
    const int p = 1 + draw % 4;
    const long long D = 1 + draw % 5;
    const auto x = ref::random_params(rng, p, 2, 1.2, kPi);
    const qg::GammaVec g(x);
    auto a = qg::h_init(p), b = qg::h_init(p);
    for (int m = 1; m <= p; ++m) {
      a = qg::h_step(a, D, x, g);
      b = qg::h_step_q(b, D, 2, x, g);
      for (std::size_t i = 0; i < a.entries.size(); ++i) EXPECT_NEAR(std::abs(a[i] - b[i]), 0.0, 1e-12);
    }
  }
}

TEST(HStepQ, ZeroGammaMirrorEntriesAndNormalization) {
  std::mt19937_64 rng(303);
  for (int p = 1; p <= 3; ++p) {
    const qg::QaoaParams z(std::vector<double>(p, 0.0), std::vector<double>(p, 0.4));
    auto h = qg::h_step_q(qg::h_init(p), 3, 3, z, qg::GammaVec(z));
    for (const cplx& v : h.entries) EXPECT_NEAR(std::abs(v - 1.0), 0.0, 1e-13);

    for (int draw = 0; draw < 5; ++draw) {
      const auto x = ref::random_params(rng, p, 3, 1.2, kPi);
      const qg::GammaVec g(x);
      const qg::FWeightTable f(x);
      auto t = qg::h_init(p);
      for (int m = 1; m <= p; ++m) {
        t = qg::h_step_q(t, 2, 3, x, g);
        cplx norm = 0.0;
        for (std::uint64_t a = 0; a < qg::num_configs(p); ++a) norm += f(a) * t[a];
        EXPECT_NEAR(std::abs(norm - 1.0), 0.0, 1e-12);
        for (std::uint64_t a = 0; a < qg::num_configs(p); ++a) {
          if (qg::t_index(a, p) == 0) {
            EXPECT_NEAR(std::abs(t[a] - 1.0), 0.0, 1e-12);
          }
        }
      }
    }
  }
}

TEST(NuQFinite, MatchesLiteralTupleSums) {
  std::mt19937_64 rng(307);
  for (int q : {3, 4}) {
    for (int draw = 0; draw < 4; ++draw) {
      const int p = (q == 3 && draw % 2 == 1) ? 2 : 1;
      const long long D = 1 + draw;
      const auto x = ref::random_params(rng, p, q, 1.2, kPi);
      EXPECT_NEAR(qg::nu_q_finite(D, q, x), ref::nu_finite_literal(D, q, x), 1e-12)
          << "q=" << q << " p=" << p << " D=" << D;
    }
  }
}

TEST(NuQFinite, ArityTwoIsMaxCut) {
  std::mt19937_64 rng(309);
  for (int draw = 0; draw < 50; ++draw) {
    const int p = 1 + draw % 6;
    const long long D = 1 + draw % 7;
    const auto x = ref::random_params(rng, p, 2, 1.2, kPi);
    EXPECT_NEAR(qg::nu_q_finite(D, 2, x), qg::nu_finite(D, x), 1e-12);
  }
}

TEST(NuQFinite, VanishesWithZeroGamma) {
  EXPECT_EQ(qg::nu_q_finite(2, 3, qg::QaoaParams({0.0}, {0.4})), 0.0);
  EXPECT_THROW(qg::nu_q_finite(2, 1, qg::QaoaParams({0.1}, {0.4})), std::invalid_argument);
}

TEST(GStepQ, ArityTwoIsMaxCutStep) {
  std::mt19937_64 rng(311);
  for (int draw = 0; draw < 20; ++draw) {
    const int p = 1 + draw % 6;
    const auto x = ref::random_params(rng, p, 2, 1.2, kPi);
    const qg::GammaVec g(x);
    auto a = qg::g_init(x);
    for (int m = 1; m <= p; ++m) {
      const auto b = qg::g_step_q(a, 2, x, g);
      a = qg::g_step_naive(a, x, g);
      for (int j = -p; j <= p; ++j) {
        for (int k = -p; k <= p; ++k) EXPECT_EQ(a(j, k), b(j, k));
      }
    }
  }
}

TEST(GStepQ, SymmetriesForHigherArity) {
  std::mt19937_64 rng(313);
  for (int q = 3; q <= 6; ++q) {
    for (int draw = 0; draw < 20; ++draw) {
      const int p = 1 + draw % 6;
      const auto x = ref::random_params(rng, p, q, 1.2, kPi);
      const qg::GammaVec gv(x);
      auto g = qg::g_init(x);
      for (int m = 1; m <= p; ++m) {
        g = qg::g_step_q(g, q, x, gv);
        for (int j = -p; j <= p; ++j) {
          EXPECT_EQ(g(j, j), cplx(1.0, 0.0));
          EXPECT_NEAR(std::abs(g(j, -j) - 1.0), 0.0, 1e-12);
          for (int k = -p; k <= p; ++k) EXPECT_NEAR(std::abs(g(j, k) - g(k, j)), 0.0, 1e-12);
        }
        for (int r = 1; r <= p; ++r) {
          EXPECT_NEAR(std::abs(g(0, r) - std::conj(g(0, -r))), 0.0, 1e-12);
          for (int s = r + 1; s <= p; ++s) {
            EXPECT_NEAR(std::abs(g(r, -s) - g(r, s)), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(std::conj(g(-r, -s)) - g(r, s)), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(std::conj(g(-r, s)) - g(r, s)), 0.0, 1e-12);
          }
        }
      }
    }
  }
}

TEST(GStepQ, ZeroGammaKeepsInitialMatrix) {
  const qg::QaoaParams x({0.0, 0.0}, {0.3, 0.8}, 4);
  const auto g0 = qg::g_init(x);
  const auto g2 = qg::g_step_q(qg::g_step_q(g0, 4, x, qg::GammaVec(x)), 4, x, qg::GammaVec(x));
  for (int j = -2; j <= 2; ++j) {
    for (int k = -2; k <= 2; ++k) EXPECT_NEAR(std::abs(g2(j, k) - g0(j, k)), 0.0, 1e-15);
  }
}

TEST(NuQInfinite, ArityTwoIsMaxCut) {
  std::mt19937_64 rng(317);
  for (int draw = 0; draw < 50; ++draw) {
    const int p = 1 + draw % 6;
    const auto x = ref::random_params(rng, p, 2, 1.2, kPi);
    EXPECT_NEAR(qg::nu_q_infinite(2, x, qg::Method::naive), qg::nu_infinite_fast(x), 1e-12);
    EXPECT_NEAR(qg::nu_q_infinite(2, x, qg::Method::fast), qg::nu_infinite_naive(x), 1e-12);
  }
}

TEST(NuQInfinite, DepthOneClosedFormForThreeSpin) {
  for (int i = 0; i < 20; ++i) {
    for (int k = 0; k < 20; ++k) {
      const double g = -2.0 + 4.0 * i / 19.0;
      const double b = -kPi + 2.0 * kPi * k / 19.0;
      const qg::QaoaParams x({g}, {b});
      EXPECT_NEAR(qg::nu_q_infinite(3, x, qg::Method::naive), ref::nu1_closed_q3(g, b), 1e-12);
      EXPECT_NEAR(qg::nu_q_infinite(3, x, qg::Method::fast), ref::nu1_closed_q3(g, b), 1e-12);
    }
  }
}

TEST(NuQInfinite, LiteralIterationAgrees) {
  std::mt19937_64 rng(319);
  for (int q = 3; q <= 5; ++q) {
    for (int p = 1; p <= 3; ++p) {
      const auto x = ref::random_params(rng, p, q, 1.2, kPi);
      EXPECT_NEAR(qg::nu_q_infinite(q, x, qg::Method::naive), ref::nu_infinite_literal(q, x), 1e-12);
    }
  }
}

TEST(NuQInfinite, PlacementAgreesWithNaive) {
  std::mt19937_64 rng(323);
  for (int q = 2; q <= 6; ++q) {
    for (int draw = 0; draw < 10; ++draw) {
      const int p = 1 + (draw + q) % 7;
      const auto x = ref::random_params(rng, p, q, 1.2, kPi);
      EXPECT_NEAR(qg::nu_q_infinite(q, x, qg::Method::fast), qg::nu_q_infinite(q, x, qg::Method::naive), 1e-12)
          << "q=" << q << " p=" << p;
    }
  }
}

TEST(NuQInfinite, LargeDegreeLimitOfFiniteIteration) {
  const qg::QaoaParams x({0.4, 0.7}, {0.5, 0.25});
  const double limit = qg::nu_q_infinite(3, x);
  double last = INFINITY;
  for (long long D : {10LL, 100LL, 1000LL, 10000LL}) {
    const double gap = std::abs(qg::nu_q_finite(D, 3, x) - limit);
    EXPECT_LE(gap, last);
    last = gap;
  }
  EXPECT_LT(last, 1e-3);
}

TEST(ResignCheck, TreesAlwaysNormalize) {
  const auto t = qg::build_tree(3, 2, 1);
  std::vector<int> flips;
  EXPECT_TRUE(qg::j_resign_check(t, t.couplings, &flips));
  EXPECT_TRUE(flips.empty());

  const std::vector<int> plus(t.num_edges(), 1);
  EXPECT_TRUE(qg::j_resign_check(t, plus, &flips));
  EXPECT_FALSE(flips.empty());

  std::mt19937_64 rng(331);
  for (const auto& tree : {qg::build_tree(2, 3, 2), qg::build_tree(3, 2, 2, 1000), qg::build_tree(4, 1, 3, 1000)}) {
    for (int draw = 0; draw < 20; ++draw) {
      std::vector<int> j(tree.num_edges());
      for (int& v : j) v = (rng() & 1) ? 1 : -1;
      EXPECT_TRUE(qg::j_resign_check(tree, j));
    }
  }
}

TEST(ResignCheck, RejectsCycles) {
  qg::TreeSpec t;
  t.q = 2;
  t.D = 1;
  t.p = 1;
  t.num_vertices = 3;
  t.hyperedges = {{0, 1}, {1, 2}, {2, 0}};
  t.couplings = {1, 1, 1};
  EXPECT_THROW(qg::j_resign_check(t), std::invalid_argument);

  qg::TreeSpec h;  // two 3-clauses sharing two vertices form a Berge cycle
  h.q = 3;
  h.D = 1;
  h.p = 1;
  h.num_vertices = 4;
  h.hyperedges = {{0, 1, 2}, {1, 2, 3}};
  h.couplings = {-1, -1};
  EXPECT_THROW(qg::j_resign_check(h), std::invalid_argument);
}
