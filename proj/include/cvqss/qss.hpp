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

#ifndef CVQSS_QSS_HPP_
#define CVQSS_QSS_HPP_

// (2,3)-threshold continuous-variable state sharing.
//
// Mode layout of a dealt state: modes 0, 1, 2 are shares 1, 2, 3. Any modes
// after those are spectators (the purifying partner of a mixed secret) and
// are carried through every reconstruction untouched, so a reconstruction of
// a 3 + k mode state returns a 1 + k mode state with the output first.
//
// Dealer:        share1 = (X_psi + X_r1)/sqrt2, share2 = (X_psi - X_r1)/sqrt2,
//                share3 = X_r2.
// {1,3} output:  eta (sqrt2 X_1 -/+ g X_3),  eta = 1/sqrt(2 - g^2).
// {2,3} output:  eta (sqrt2 X_2 +/- g X_3),  same noise statistics.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "cvqss/errors.hpp"
#include "cvqss/gaussian_channel.hpp"
#include "cvqss/gaussian_state.hpp"
#include "cvqss/steering.hpp"

namespace cvqss {

/// Single-mode Gaussian secret: displaced, squeezed (angle theta) thermal state.
struct SecretSpec {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  double zeta = 0.0;
  double theta = 0.0;
  double nbar = 0.0;

  static SecretSpec coherent(double x, double p) { return {Eigen::Vector2d(x, p), 0.0, 0.0, 0.0}; }
  static SecretSpec squeezed(double zeta, double theta) {
    return {Eigen::Vector2d::Zero(), zeta, theta, 0.0};
  }
  static SecretSpec thermal(double nbar, double zeta) {
    return {Eigen::Vector2d::Zero(), zeta, 0.0, nbar};
  }

  bool is_pure() const { return nbar == 0.0; }

  void validate() const {
    if (!mean.allFinite() || !std::isfinite(zeta) || !std::isfinite(theta)) {
      throw InvalidArgument("SecretSpec: non-finite parameter");
    }
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
      throw InvalidArgument("SecretSpec: nbar must be finite and >= 0");
    }
  }
};

enum class ShareSet { k12, k13, k23 };
enum class Correction { kNone, kEsa, kLsatt, kAuto };
enum class Realization { kIdealChannel, kFeedforward };

inline std::string_view to_string(ShareSet s) {
  switch (s) {
    case ShareSet::k12: return "12";
    case ShareSet::k13: return "13";
    case ShareSet::k23: return "23";
  }
  return "?";
}

inline std::string_view to_string(Correction c) {
  switch (c) {
    case Correction::kNone: return "none";
    case Correction::kEsa: return "esa";
    case Correction::kLsatt: return "lsatt";
    case Correction::kAuto: return "auto";
  }
  return "?";
}

inline std::string_view to_string(Realization r) {
  return r == Realization::kIdealChannel ? "ideal_channel" : "feedforward";
}

struct ReconstructionPlan {
  ShareSet shares = ShareSet::k13;
  double g = 1.0;  // ignored for {1,2} unless paired_correction_12 is set
  Correction correction = Correction::kAuto;
  Realization realization = Realization::kIdealChannel;
  // {1,2} only: amplify the secret by 1/eta(g) before dealing and attenuate
  // by eta(g) afterwards, as the {1,2} counterpart of an esa deployment.
  bool paired_correction_12 = false;
};

/// auto -> esa below unity gain, lsatt above it, none at g == 1.
inline Correction resolve_correction(Correction c, double g) {
  if (c != Correction::kAuto) return c;
  if (g < 1.0) return Correction::kEsa;
  if (g > 1.0) return Correction::kLsatt;
  return Correction::kNone;
}

struct ProtocolRun {
  GaussianState input;   // the secret, or its two-mode purification
  GaussianState shares;  // three shares plus any spectator modes
  GaussianState output;  // reconstructed mode plus spectators
  double g;
  double eta;
  ShareSet share_set;
  Correction correction;  // as applied (auto resolved)
  Realization realization;
};

struct ProtocolResult {
  GaussianState output;
  double fidelity;
  ProtocolRun run;
};

/// 1/sqrt(2 - g^2), the gain any share-3 reconstruction imposes.
inline double eta_of_g(double g) {
  if (!(g > 0.0 && g < std::numbers::sqrt2)) {
    throw InvalidArgument("eta_of_g: g must lie in (0, sqrt 2), got " + std::to_string(g));
  }
  return 1.0 / std::sqrt(2.0 - g * g);
}

/// Mode 0 carries the secret; a mixed secret is represented by its
/// purification, with the partner in mode 1.
inline GaussianState prepare_secret(const SecretSpec& spec) {
  spec.validate();
  if (spec.is_pure()) {
    const GaussianState sq = make_squeezed(spec.zeta, spec.theta);
    return GaussianState(spec.mean, sq.cov());
  }
  const GaussianState phi = apply_channel(purify_squeezed_thermal(spec.nbar, spec.zeta),
                                          phase_shift_channel(spec.theta, 0, 2));
  Vector mean = Vector::Zero(4);
  mean.head<2>() = spec.mean;
  return GaussianState(std::move(mean), phi.cov());
}

/// Mixes mode 0 of `secret` with resource mode 1 on a balanced beamsplitter.
/// Extra secret modes become spectators after the three shares.
inline GaussianState dealer_split(const GaussianState& secret, const GaussianState& resource) {
  if (resource.n_modes() != 2) {
    throw InvalidArgument("dealer_split: resource must have two modes");
  }
  if (!secret.is_bona_fide() || !resource.is_bona_fide()) {
    throw InvalidArgument("dealer_split: inputs must be bona-fide states");
  }
  const int m = secret.n_modes();
  const GaussianState joint = tensor(secret, resource);  // psi, spectators..., r1, r2
  const GaussianState mixed =
      apply_channel(joint, beamsplitter_channel(0.5, 0, m, m + 2));
  std::vector<int> order{0, m, m + 1};
  for (int k = 1; k < m; ++k) order.push_back(k);
  return partial_trace(mixed, order);
}

namespace detail {

inline void require_shares(const GaussianState& shares, const char* op) {
  if (shares.n_modes() < 3) {
    throw InvalidArgument(std::string(op) + ": expected at least three share modes");
  }
}

inline std::vector<int> with_spectators(int first, int spectator_begin, int n_modes) {
  std::vector<int> keep{first};
  for (int k = spectator_begin; k < n_modes; ++k) keep.push_back(k);
  return keep;
}

inline int share_index(ShareSet which, const char* op) {
  switch (which) {
    case ShareSet::k13: return 0;
    case ShareSet::k23: return 1;
    case ShareSet::k12: break;
  }
  throw InvalidArgument(std::string(op) + ": share set must be 13 or 23");
}

}  // namespace detail

/// Recombines shares 1 and 2 on a balanced beamsplitter; (X_1 + X_2)/sqrt2 = X_psi.
inline GaussianState reconstruct_12(const GaussianState& shares) {
  detail::require_shares(shares, "reconstruct_12");
  const int n = shares.n_modes();
  const GaussianState mixed = apply_channel(shares, beamsplitter_channel(0.5, 0, 1, n));
  return partial_trace(mixed, detail::with_spectators(0, 3, n));
}

/// Two-mode channel (share 1 or 2, share 3) -> (output, auxiliary) with N = 0.
///
/// First output: eta (sqrt2 X -/+ s g X_3) with s = +1 for {1,3} and -1 for
/// {2,3}. The second output is the completion that keeps T symplectic,
/// fixed by a = 1:  b = g^2/(g^2 - 2),  c = -sqrt2/(s g),  d = sqrt2 s g/(g^2 - 2).
/// `eta_override` replaces 1/sqrt(2 - g^2), which in general breaks physicality.
inline GaussianChannel reconstruction_channel(double g, ShareSet which = ShareSet::k13,
                                              std::optional<double> eta_override = std::nullopt) {
  const double eta_phys = eta_of_g(g);
  detail::share_index(which, "reconstruction_channel");
  const double eta = eta_override.value_or(eta_phys);
  const double sg = which == ShareSet::k13 ? g : -g;
  const double rt2 = std::numbers::sqrt2;
  const double a = 1.0;
  const double b = g * g / (g * g - 2.0);
  const double c = -rt2 / sg * a;
  const double d = rt2 * sg / (g * g - 2.0);
  Matrix t(4, 4);
  t << eta * rt2, 0, -eta * sg, 0,
       0, eta * rt2, 0, eta * sg,
       a, 0, c, 0,
       0, b, 0, d;
  return {std::move(t), Matrix::Zero(4, 4)};
}

/// Reconstruction from share 1 (or 2) and share 3 through the ideal channel.
inline GaussianState reconstruct_with_share3_ideal(const GaussianState& shares, ShareSet which,
                                                   double g) {
  detail::require_shares(shares, "reconstruct_with_share3_ideal");
  const int idx = detail::share_index(which, "reconstruct_with_share3_ideal");
  const int n = shares.n_modes();
  const GaussianChannel ch = local_channel(reconstruction_channel(g, which), {idx, 2}, n);
  return partial_trace(apply_channel(shares, ch), detail::with_spectators(idx, 3, n));
}

struct FeedforwardParams {
  double tau;   // beamsplitter transmissivity
  double gain;  // electronic feed-forward gain
};

/// tau = 2/(2 + g^2), G = 2 sqrt2 g/(2 - g^2).
inline FeedforwardParams feedforward_params(double g) {
  eta_of_g(g);  // domain check
  return {2.0 / (2.0 + g * g), 2.0 * std::numbers::sqrt2 * g / (2.0 - g * g)};
}

/// Optical realization of the share-3 reconstruction:
///  1. beamsplitter (tau) giving A = sqrt(tau) X_s - sqrt(1-tau) X_3 and
///     B = sqrt(1-tau) X_s + sqrt(tau) X_3;
///  2. homodyne P_B, feed forward P_A -> P_A + G P_B;
///  3. squeeze A by 1/2 ln((2 - g^2)/(2 + g^2)) to equalise both quadratures.
/// For {2,3} share 3 is phase-flipped first. Agrees with the ideal channel.
inline GaussianState reconstruct_with_share3_feedforward(const GaussianState& shares,
                                                         ShareSet which, double g) {
  detail::require_shares(shares, "reconstruct_with_share3_feedforward");
  const int idx = detail::share_index(which, "reconstruct_with_share3_feedforward");
  const auto [tau, gain] = feedforward_params(g);
  const int n = shares.n_modes();

  GaussianState s = shares;
  if (which == ShareSet::k23) {
    s = apply_channel(s, phase_shift_channel(std::numbers::pi, 2, n));
  }
  // Mode idx now holds B, mode 2 holds A.
  s = apply_channel(s, beamsplitter_channel(1.0 - tau, idx, 2, n));
  s = homodyne_feedforward(s, idx, Quadrature::kP, 2, Quadrature::kP, gain);
  // idx < 2, so A moved down to mode 1 and spectators start at mode 2.
  const double zeta = 0.5 * std::log((2.0 - g * g) / (2.0 + g * g));
  s = apply_channel(s, squeeze_channel(zeta, 0.0, 1, n - 1));
  return partial_trace(s, detail::with_spectators(1, 2, n - 1));
}

/// Pre-amplifies mode 0 by 1/eta: mean / eta, cov / eta^2 + (1/eta^2 - 1) I.
inline GaussianState esa_correct_input(const GaussianState& secret, double eta) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw InvalidArgument("esa_correct_input: requires 0 < eta < 1 (use lsatt for eta > 1)");
  }
  return apply_channel(secret, amplifier_channel(1.0 / (eta * eta), 0, secret.n_modes()));
}

/// Attenuates mode 0 with transmissivity 1/eta^2: mean / eta, cov / eta^2 + (1 - 1/eta^2) I.
inline GaussianState lsatt_correct_output(const GaussianState& out, double eta) {
  if (!(eta > 1.0) || !std::isfinite(eta)) {
    throw InvalidArgument("lsatt_correct_output: requires eta > 1 (use esa for eta < 1)");
  }
  return apply_channel(out, attenuator_channel(1.0 / (eta * eta), 0, out.n_modes()));
}

/// Deal `secret` with `resource` and reconstruct according to `plan`.
///
/// Fidelity is the equal-means overlap with the (purified) secret, so the
/// output mean must match the input mean: displaced secrets at g != 1 need
/// a unity-gain correction, otherwise NumericDomainError is thrown.
inline ProtocolResult run_protocol(const SecretSpec& secret, const GaussianState& resource,
                                   const ReconstructionPlan& plan) {
  if (resource.n_modes() != 2) throw InvalidArgument("run_protocol: resource must have two modes");
  if (!is_balanced(resource)) {
    throw UnsupportedState("run_protocol: resource is not X-P balanced");
  }
  const GaussianState input = prepare_secret(secret);

  double eta = 1.0;
  Correction correction = Correction::kNone;
  if (plan.shares == ShareSet::k12) {
    if (plan.paired_correction_12) {
      eta = eta_of_g(plan.g);
      if (eta < 1.0) correction = Correction::kEsa;
    }
  } else {
    eta = eta_of_g(plan.g);
    correction = resolve_correction(plan.correction, plan.g);
    if (correction == Correction::kEsa && !(eta < 1.0)) {
      throw InvalidArgument("run_protocol: esa needs g < 1");
    }
    if (correction == Correction::kLsatt && !(eta > 1.0)) {
      throw InvalidArgument("run_protocol: lsatt needs g > 1");
    }
  }

  const GaussianState dealt_input =
      correction == Correction::kEsa ? esa_correct_input(input, eta) : input;
  const GaussianState shares = dealer_split(dealt_input, resource);

  std::optional<GaussianState> out;
  switch (plan.shares) {
    case ShareSet::k12:
      out = reconstruct_12(shares);
      if (correction == Correction::kEsa) {
        out = apply_channel(*out, attenuator_channel(eta * eta, 0, out->n_modes()));
      }
      break;
    case ShareSet::k13:
    case ShareSet::k23:
      out = plan.realization == Realization::kIdealChannel
                ? reconstruct_with_share3_ideal(shares, plan.shares, plan.g)
                : reconstruct_with_share3_feedforward(shares, plan.shares, plan.g);
      if (correction == Correction::kLsatt) out = lsatt_correct_output(*out, eta);
      break;
  }

  const double scale = std::max(1.0, input.mean().cwiseAbs().maxCoeff());
  if ((out->mean() - input.mean()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw NumericDomainError(
        "run_protocol: output mean differs from the secret mean; a unity-gain correction "
        "(esa/lsatt/auto) is required for displaced secrets at g != 1");
  }
  const double fidelity = fidelity_equal_means(input.cov(), out->cov(), input.n_modes());
  return {*out, fidelity,
          ProtocolRun{input, shares, *out, plan.g, eta, plan.shares, correction,
                      plan.realization}};
}

}  // namespace cvqss

#endif  // CVQSS_QSS_HPP_
