// Copyright 2026 The cvqss Authors
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

#include "cvqss/steering.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "cvqss/gaussian_channel.hpp"
#include "support/random_states.hpp"

namespace cvqss {
namespace {

using D = SteeringDirection;

// Var(X_a - g X_b) evaluated as w^T V w, independent of the library's expansion.
double variance_oracle(const GaussianState& s, double g, int steered, int steering, bool p) {
  Vector w = Vector::Zero(4);
  const int q = p ? 1 : 0;
  w(2 * steered + q) = 1.0;
  w(2 * steering + q) = p ? g : -g;
  return w.dot(s.cov() * w);
}

double grid_minimum(const GaussianState& s, D d, int points) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < points; ++i) {
    const double g = kGainMargin + (std::numbers::sqrt2 - 2 * kGainMargin) * i / (points - 1);
    best = std::min(best, steering_parameter(s, g, d));
  }
  return best;
}

TEST(SteeringParameter, VacuumAndTmsv) {
  const GaussianState vac = make_vacuum(2);
  for (double g : {0.1, 0.7, 1.3}) {
    EXPECT_NEAR(steering_parameter(vac, g, D::kTwoSteersOne), 1 + g * g, 1e-15);
  }
  for (double r : {0.2, 0.9, 1.4}) {
    const GaussianState t = make_tmsv(r);
    for (double g : {0.3, 1.0, 1.2}) {
      EXPECT_NEAR(steering_parameter(t, g, D::kTwoSteersOne),
                  std::cosh(2 * r) * (1 + g * g) - 2 * g * std::sinh(2 * r), 1e-12);
    }
    EXPECT_NEAR(steering_parameter(t, 1.0, D::kTwoSteersOne), 2 * std::exp(-2 * r), 1e-12);
  }
}

TEST(SteeringParameter, ThirteenDecibelTmsvAtUnityGain) {
  const double r = db_to_zeta(13.0);
  EXPECT_NEAR(10 * std::log10(std::exp(2 * r)), 13.0, 1e-12);
  EXPECT_NEAR(steering_parameter(make_tmsv(r), 1.0, D::kTwoSteersOne), 2 * std::exp(-2 * r),
              1e-12);
}

TEST(SteeringParameter, MatchesQuadratureVarianceOracle) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 100; ++i) {
    const GaussianState s = testing::random_balanced_resource(rng);
    const double g = testing::uniform(rng, 0.01, 1.41);
    EXPECT_NEAR(steering_parameter(s, g, D::kTwoSteersOne), variance_oracle(s, g, 0, 1, false),
                1e-12);
    EXPECT_NEAR(steering_parameter(s, g, D::kTwoSteersOne), variance_oracle(s, g, 0, 1, true),
                1e-12);
    EXPECT_NEAR(steering_parameter(s, g, D::kOneSteersTwo), variance_oracle(s, g, 1, 0, false),
                1e-12);
  }
}

TEST(SteeringParameter, RejectsUnbalancedResources) {
  const GaussianState squeezed_arm =
      apply_channel(make_tmsv(0.5), squeeze_channel(0.4, 0.0, 0, 2));
  EXPECT_FALSE(is_balanced(squeezed_arm));
  EXPECT_THROW(steering_parameter(squeezed_arm, 1.0, D::kTwoSteersOne), UnsupportedState);
  EXPECT_THROW(optimal_g(squeezed_arm, D::kTwoSteersOne), UnsupportedState);
  EXPECT_THROW(steering_parameter(make_vacuum(1), 1.0, D::kTwoSteersOne), InvalidArgument);
}

TEST(OptimalG, TmsvClosedForm) {
  for (int i = 1; i <= 15; ++i) {
    const double r = 0.1 * i;
    for (D d : {D::kTwoSteersOne, D::kOneSteersTwo}) {
      const SteeringResult res = optimal_g(make_tmsv(r), d);
      EXPECT_NEAR(res.g, std::tanh(2 * r), 1e-10);
      EXPECT_NEAR(res.e, 1.0 / std::cosh(2 * r), 1e-10);
      EXPECT_TRUE(res.steerable);
      EXPECT_EQ(res.direction, d);
    }
  }
}

TEST(OptimalG, UncorrelatedStatesAreNotSteerable) {
  const SteeringResult vac = optimal_g(make_vacuum(2), D::kTwoSteersOne);
  EXPECT_NEAR(vac.g, kGainMargin, 1e-15);
  EXPECT_NEAR(vac.e, 1.0, 1e-12);
  EXPECT_FALSE(vac.steerable);

  const GaussianState thermal =
      tensor(make_squeezed_thermal(0.7, 0.0), make_squeezed_thermal(1.3, 0.0));
  EXPECT_FALSE(optimal_g(thermal, D::kTwoSteersOne).steerable);
  for (double g = 0.05; g < 1.41; g += 0.05) {
    EXPECT_GE(steering_parameter(thermal, g, D::kTwoSteersOne), 1.0);
  }
}

TEST(OptimalG, MatchesGridSearch) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i) {
    const GaussianState s = testing::random_balanced_resource(rng);
    for (D d : {D::kTwoSteersOne, D::kOneSteersTwo}) {
      const SteeringResult res = optimal_g(s, d);
      const double grid = grid_minimum(s, d, 10000);
      EXPECT_LE(res.e, grid + 1e-12);
      EXPECT_NEAR(res.e, grid, 1e-6);
      EXPECT_EQ(res.steerable, res.e < 1.0);
    }
  }
}

TEST(SwappedSteering, FormulaAndFixedPoint) {
  const auto [e1, g1] = swapped_steering(0.8, 1.0);
  EXPECT_EQ(e1, 0.8);
  EXPECT_EQ(g1, 1.0);
  const auto [e2, g2] = swapped_steering(0.5, 1.2);
  EXPECT_NEAR(e2, 0.5 / 1.44, 1e-15);
  EXPECT_NEAR(g2, 1.0 / 1.2, 1e-15);
  EXPECT_THROW(swapped_steering(0.5, 0.0), InvalidArgument);
  EXPECT_THROW(swapped_steering(0.5, -1.0), InvalidArgument);
}

TEST(SwappedSteering, IdentityOnRandomStates) {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 200; ++i) {
    const GaussianState s = testing::random_balanced_resource(rng);
    const double g = testing::uniform(rng, 0.05, 1.41);
    for (D d : {D::kTwoSteersOne, D::kOneSteersTwo}) {
      const double e = steering_parameter(s, g, d);
      const auto [e_sw, g_sw] = swapped_steering(e, g);
      EXPECT_NEAR(steering_parameter(s, g_sw, reversed(d)), e_sw, 1e-12 * std::max(1.0, e_sw));
    }
  }
}

TEST(SwapModes, ExchangesDirections) {
  std::mt19937_64 rng(41);
  const GaussianState s = testing::random_balanced_resource(rng);
  const GaussianState w = swap_modes(s);
  EXPECT_NEAR(steering_parameter(w, 0.8, D::kTwoSteersOne),
              steering_parameter(s, 0.8, D::kOneSteersTwo), 1e-14);
}

TEST(SteeringParameter, TmsvIsSymmetric) {
  for (double r : {0.3, 1.1}) {
    for (double g : {0.4, 1.3}) {
      EXPECT_NEAR(steering_parameter(make_tmsv(r), g, D::kTwoSteersOne),
                  steering_parameter(make_tmsv(r), g, D::kOneSteersTwo), 1e-14);
    }
  }
}

// [X_1 - g X_2, P_1 + g P_2] = 2i(1 - g^2) bounds E from below by |1 - g^2|.
TEST(SteeringParameter, UncertaintyFloorOnPhysicalStates) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 500; ++i) {
    const GaussianState s = testing::random_balanced_resource(rng, 3.0);
    ASSERT_TRUE(s.is_bona_fide());
    const double g = testing::uniform(rng, 0.01, 1.41);
    for (D d : {D::kTwoSteersOne, D::kOneSteersTwo}) {
      EXPECT_GE(steering_parameter(s, g, d), std::abs(1 - g * g) - 1e-12);
    }
  }
}

TEST(SteeringDirection, Names) {
  EXPECT_EQ(to_string(D::kTwoSteersOne), "1|2");
  EXPECT_EQ(to_string(D::kOneSteersTwo), "2|1");
  EXPECT_EQ(reversed(D::kOneSteersTwo), D::kTwoSteersOne);
}

}  // namespace
}  // namespace cvqss
