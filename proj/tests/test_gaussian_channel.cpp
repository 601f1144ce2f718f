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

#include "cvqss/gaussian_channel.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "cvqss/qss.hpp"
#include "support/random_states.hpp"

namespace cvqss {
namespace {

double symplectic_defect(const Matrix& t) {
  const Matrix om = symplectic_form(static_cast<int>(t.rows() / 2));
  return (t * om * t.transpose() - om).cwiseAbs().maxCoeff();
}

TEST(GaussianChannel, Validation) {
  EXPECT_THROW(GaussianChannel(Matrix::Identity(3, 3), Matrix::Zero(3, 3)), InvalidArgument);
  EXPECT_THROW(GaussianChannel(Matrix::Identity(2, 2), Matrix::Zero(4, 4)), InvalidArgument);
  Matrix n = Matrix::Zero(2, 2);
  n(0, 1) = 1.0;
  EXPECT_THROW(GaussianChannel(Matrix::Identity(2, 2), n), InvalidArgument);
  EXPECT_THROW(apply_channel(make_vacuum(1), GaussianChannel::identity(2)), InvalidArgument);
}

TEST(ApplyChannel, IdentityAttenuatorAmplifier) {
  const GaussianState s = make_coherent(2, 2);
  const GaussianState same = apply_channel(s, GaussianChannel::identity(1));
  EXPECT_EQ(same.mean(), s.mean());
  EXPECT_EQ(same.cov(), s.cov());

  const GaussianState att = apply_channel(s, attenuator_channel(0.25, 0, 1));
  EXPECT_TRUE(att.mean().isApprox(Eigen::Vector2d(1, 1)));
  EXPECT_TRUE(att.cov().isIdentity(1e-15));

  const GaussianState amp = apply_channel(make_vacuum(1), amplifier_channel(2.0, 0, 1));
  EXPECT_TRUE(amp.cov().isApprox(3.0 * Matrix::Identity(2, 2)));
  EXPECT_TRUE(amp.is_bona_fide());
  EXPECT_THROW(amplifier_channel(0.5, 0, 1), InvalidArgument);
  EXPECT_THROW(attenuator_channel(1.5, 0, 1), InvalidArgument);
}

TEST(Compose, MatchesSequentialApplication) {
  const GaussianChannel a = beamsplitter_channel(0.3, 0, 1, 2);
  const GaussianChannel b = local_channel(amplifier_channel(1.7, 0, 1), {1}, 2);
  const GaussianState s = tensor(make_coherent(1, -2), make_squeezed(0.4, 0.2));
  const GaussianState seq = apply_channel(apply_channel(s, a), b);
  const GaussianState comp = apply_channel(s, compose(b, a));
  EXPECT_TRUE(seq.cov().isApprox(comp.cov(), 1e-14));
  EXPECT_TRUE(seq.mean().isApprox(comp.mean(), 1e-14));
}

TEST(Beamsplitter, SignConventionAndSymplecticity) {
  const Matrix t = beamsplitter_channel(1.0, 0, 1, 2).t();
  // tau = 1: mode a untouched, mode b picks up the sign.
  EXPECT_EQ(t(0, 0), 1.0);
  EXPECT_EQ(t(2, 2), -1.0);
  EXPECT_EQ(t(0, 2), 0.0);

  const GaussianState s = tensor(make_coherent(2, 2), make_coherent(1, 0));
  const GaussianState out = apply_channel(s, beamsplitter_channel(0.5, 0, 1, 2));
  const double h = 1.0 / std::numbers::sqrt2;
  EXPECT_NEAR(out.mean()(0), (2 + 1) * h, 1e-15);
  EXPECT_NEAR(out.mean()(2), (2 - 1) * h, 1e-15);

  for (double tau = 0.0; tau <= 1.0; tau += 0.05) {
    EXPECT_LT(symplectic_defect(beamsplitter_channel(tau, 1, 3, 4).t()), 1e-12);
  }
  EXPECT_THROW(beamsplitter_channel(1.1, 0, 1, 2), InvalidArgument);
  EXPECT_THROW(beamsplitter_channel(0.5, 1, 1, 2), InvalidArgument);
}

TEST(Squeeze, SymplecticAndConsistentWithMakeSqueezed) {
  EXPECT_TRUE(squeeze_channel(0.0, 0.7, 0, 1).t().isIdentity(1e-15));
  std::mt19937_64 rng(13);
  for (int i = 0; i < 50; ++i) {
    const double z = testing::uniform(rng, -2, 2);
    const double th = testing::uniform(rng, 0, std::numbers::pi);
    const GaussianChannel ch = squeeze_channel(z, th, 0, 1);
    EXPECT_LT(symplectic_defect(ch.t()), 1e-12);
    EXPECT_NEAR(ch.t().determinant(), 1.0, 1e-12);
    EXPECT_TRUE(apply_channel(make_vacuum(1), ch).cov().isApprox(make_squeezed(z, th).cov(), 1e-12));
  }
  const Matrix t = squeeze_channel(0.3, 0.0, 0, 1).t();
  EXPECT_NEAR(t(0, 0), std::exp(-0.3), 1e-15);
  EXPECT_NEAR(t(1, 1), std::exp(0.3), 1e-15);
}

TEST(LocalChannel, EmbedsOnChosenModes) {
  const GaussianChannel ch = local_channel(amplifier_channel(2.0, 0, 1), {2}, 3);
  EXPECT_EQ(ch.in_modes(), 3);
  EXPECT_EQ(ch.t()(4, 4), std::sqrt(2.0));
  EXPECT_EQ(ch.t()(0, 0), 1.0);
  EXPECT_EQ(ch.n()(4, 4), 1.0);
  EXPECT_EQ(ch.n()(0, 0), 0.0);
  EXPECT_THROW(local_channel(amplifier_channel(2.0, 0, 1), {3}, 3), InvalidArgument);
  EXPECT_THROW(local_channel(beamsplitter_channel(0.5, 0, 1, 2), {0, 0}, 3), InvalidArgument);
}

TEST(HomodyneFeedforward, ZeroGainIsPartialTrace) {
  std::mt19937_64 rng(17);
  const GaussianState s =
      tensor(testing::random_balanced_resource(rng), make_coherent(0.5, -1.0));
  const GaussianState ff = homodyne_feedforward(s, 1, Quadrature::kP, 2, Quadrature::kP, 0.0);
  const GaussianState pt = partial_trace(s, {0, 2});
  EXPECT_TRUE(ff.cov().isApprox(pt.cov(), 1e-15));
  EXPECT_TRUE(ff.mean().isApprox(pt.mean(), 1e-15));
  EXPECT_THROW(homodyne_feedforward(s, 1, Quadrature::kP, 1, Quadrature::kP, 1.0),
               InvalidArgument);
}

TEST(HomodyneFeedforward, AddsMeasuredQuadratureToTarget) {
  const GaussianState s = tensor(make_coherent(1.0, 2.0), make_coherent(3.0, 4.0));
  const GaussianState out = homodyne_feedforward(s, 0, Quadrature::kP, 1, Quadrature::kX, 0.5);
  EXPECT_EQ(out.n_modes(), 1);
  EXPECT_NEAR(out.mean()(0), 3.0 + 0.5 * 2.0, 1e-15);
  EXPECT_NEAR(out.mean()(1), 4.0, 1e-15);
  EXPECT_NEAR(out.cov()(0, 0), 1.0 + 0.25, 1e-15);
}

// Tracks the operator coefficients through the optical reconstruction by
// pushing a basis of input means through each stage. Before the final
// squeeze the target mode carries
//   X_A = (sqrt2 X_1 - g X_3)/sqrt(2 + g^2)
//   P_A = sqrt(2 + g^2)/(2 - g^2) (sqrt2 P_1 + g P_3).
TEST(HomodyneFeedforward, ReproducesIntermediatePrefactors) {
  for (double g : {0.3, 0.8, 1.0, 1.25}) {
    const auto [tau, gain] = feedforward_params(g);
    // Modes: share 1, share 3.
    Matrix coeff(2, 4);
    for (int k = 0; k < 4; ++k) {
      Vector mean = Vector::Zero(4);
      mean(k) = 1.0;
      GaussianState s(mean, Matrix::Identity(4, 4));
      s = apply_channel(s, beamsplitter_channel(1.0 - tau, 0, 1, 2));
      s = homodyne_feedforward(s, 0, Quadrature::kP, 1, Quadrature::kP, gain);
      coeff.col(k) = s.mean();
    }
    const double rt2 = std::numbers::sqrt2;
    const double sx = 1.0 / std::sqrt(2 + g * g);
    const double sp = std::sqrt(2 + g * g) / (2 - g * g);
    EXPECT_NEAR(coeff(0, 0), sx * rt2, 1e-12) << g;
    EXPECT_NEAR(coeff(0, 2), -sx * g, 1e-12) << g;
    EXPECT_NEAR(coeff(1, 1), sp * rt2, 1e-12) << g;
    EXPECT_NEAR(coeff(1, 3), sp * g, 1e-12) << g;
    EXPECT_NEAR(coeff(0, 1), 0.0, 1e-12);
    EXPECT_NEAR(coeff(1, 0), 0.0, 1e-12);
  }
}

TEST(ChannelIsPhysical, IdentityHasZeroMinEigenvalue) {
  const PhysicalityCheck c = channel_is_physical(GaussianChannel::identity(2));
  EXPECT_TRUE(c.physical);
  EXPECT_NEAR(c.min_eigenvalue, 0.0, 1e-15);
}

TEST(ChannelIsPhysical, StandardChannels) {
  EXPECT_TRUE(channel_is_physical(amplifier_channel(3.0, 0, 1)).physical);
  EXPECT_TRUE(channel_is_physical(attenuator_channel(0.2, 0, 1)).physical);
  EXPECT_TRUE(channel_is_physical(beamsplitter_channel(0.3, 0, 1, 2)).physical);
  // Noiseless amplification violates the uncertainty principle.
  EXPECT_FALSE(channel_is_physical(
                   GaussianChannel(std::sqrt(2.0) * Matrix::Identity(2, 2), Matrix::Zero(2, 2)))
                   .physical);
  // Measure-and-discard map is physical with no added noise.
  Matrix t = Matrix::Zero(2, 4);
  t(0, 0) = 1;
  t(1, 1) = 1;
  EXPECT_TRUE(channel_is_physical(GaussianChannel(t, Matrix::Zero(2, 2))).physical);
}

TEST(ChannelIsPhysical, MonotoneInAddedNoise) {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 100; ++i) {
    Matrix t = Matrix::Random(4, 4);
    t *= testing::uniform(rng, 0.1, 1.5);
    const Matrix a = Matrix::Random(4, 4);
    const Matrix n = a * a.transpose() * testing::uniform(rng, 0, 2);
    const PhysicalityCheck before = channel_is_physical(GaussianChannel(t, n));
    const double extra = testing::uniform(rng, 0.01, 3);
    const PhysicalityCheck after =
        channel_is_physical(GaussianChannel(t, n + extra * Matrix::Identity(4, 4)));
    EXPECT_GE(after.min_eigenvalue, before.min_eigenvalue - 1e-12);
    if (before.physical) { EXPECT_TRUE(after.physical); }
  }
}

TEST(ApplyChannel, PhysicalChannelsPreserveBonaFideStates) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    GaussianState s = testing::random_balanced_resource(rng);
    s = apply_channel(s, phase_shift_channel(testing::uniform(rng, 0, 6), 0, 2));
    GaussianChannel ch = compose(
        local_channel(amplifier_channel(testing::uniform(rng, 1, 3), 0, 1), {1}, 2),
        compose(beamsplitter_channel(testing::uniform(rng, 0, 1), 0, 1, 2),
                squeeze_channel(testing::uniform(rng, -1, 1), testing::uniform(rng, 0, 3), 0, 2)));
    ASSERT_TRUE(channel_is_physical(ch).physical);
    EXPECT_TRUE(apply_channel(s, ch).is_bona_fide());
  }
}

}  // namespace
}  // namespace cvqss
