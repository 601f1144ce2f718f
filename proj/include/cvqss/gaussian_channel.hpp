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

#ifndef CVQSS_GAUSSIAN_CHANNEL_HPP_
#define CVQSS_GAUSSIAN_CHANNEL_HPP_

// Deterministic Gaussian channels (T, N):  mean -> T mean,  cov -> T cov T^T + N.
//
// T may be rectangular (n input modes -> m output modes). Physicality is not
// a class invariant: an unphysical (T, N) is representable so that
// channel_is_physical() can reject it.

#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cvqss/errors.hpp"
#include "cvqss/gaussian_state.hpp"

namespace cvqss {

class GaussianChannel {
 public:
  GaussianChannel(Matrix t, Matrix n) : t_(std::move(t)), n_(std::move(n)) {
    if (t_.rows() == 0 || t_.cols() == 0 || t_.rows() % 2 != 0 || t_.cols() % 2 != 0) {
      throw InvalidArgument("GaussianChannel: T must be 2m x 2n with m, n >= 1");
    }
    if (n_.rows() != t_.rows() || n_.cols() != t_.rows()) {
      throw InvalidArgument("GaussianChannel: N must be square with T's row count");
    }
    if (!t_.allFinite() || !n_.allFinite()) {
      throw InvalidArgument("GaussianChannel: non-finite entries");
    }
    const double scale = std::max(1.0, n_.cwiseAbs().maxCoeff());
    if ((n_ - n_.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
      throw InvalidArgument("GaussianChannel: N is not symmetric");
    }
    n_ = 0.5 * (n_ + n_.transpose()).eval();
  }

  static GaussianChannel identity(int n_modes) {
    if (n_modes < 1) throw InvalidArgument("GaussianChannel::identity: n_modes must be >= 1");
    return {Matrix::Identity(2 * n_modes, 2 * n_modes), Matrix::Zero(2 * n_modes, 2 * n_modes)};
  }

  const Matrix& t() const { return t_; }
  const Matrix& n() const { return n_; }
  int in_modes() const { return static_cast<int>(t_.cols() / 2); }
  int out_modes() const { return static_cast<int>(t_.rows() / 2); }

 private:
  Matrix t_;
  Matrix n_;
};

inline GaussianState apply_channel(const GaussianState& s, const GaussianChannel& ch) {
  if (ch.in_modes() != s.n_modes()) {
    throw InvalidArgument("apply_channel: channel expects " + std::to_string(ch.in_modes()) +
                          " modes, state has " + std::to_string(s.n_modes()));
  }
  return GaussianState(ch.t() * s.mean(), ch.t() * s.cov() * ch.t().transpose() + ch.n());
}

/// `second` after `first`.
inline GaussianChannel compose(const GaussianChannel& second, const GaussianChannel& first) {
  if (second.in_modes() != first.out_modes()) {
    throw InvalidArgument("compose: mode counts do not chain");
  }
  return {second.t() * first.t(),
          second.t() * first.n() * second.t().transpose() + second.n()};
}

/// Lifts a k-mode -> k-mode channel onto `modes` of an n-mode system,
/// acting as the identity on every other mode.
inline GaussianChannel local_channel(const GaussianChannel& ch, std::span<const int> modes,
                                     int n_modes) {
  if (ch.in_modes() != ch.out_modes()) {
    throw InvalidArgument("local_channel: only mode-preserving channels can be embedded");
  }
  if (static_cast<int>(modes.size()) != ch.in_modes()) {
    throw InvalidArgument("local_channel: expected " + std::to_string(ch.in_modes()) + " modes");
  }
  std::vector<bool> used(static_cast<std::size_t>(std::max(n_modes, 0)), false);
  for (int m : modes) {
    if (m < 0 || m >= n_modes) {
      throw InvalidArgument("local_channel: mode index " + std::to_string(m) + " out of range");
    }
    if (used[static_cast<std::size_t>(m)]) {
      throw InvalidArgument("local_channel: modes must be distinct");
    }
    used[static_cast<std::size_t>(m)] = true;
  }
  Matrix t = Matrix::Identity(2 * n_modes, 2 * n_modes);
  Matrix n = Matrix::Zero(2 * n_modes, 2 * n_modes);
  const auto k = modes.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const auto ri = 2 * modes[i];
      const auto cj = 2 * modes[j];
      const auto bi = static_cast<Eigen::Index>(2 * i);
      const auto bj = static_cast<Eigen::Index>(2 * j);
      t.block<2, 2>(ri, cj) = ch.t().block<2, 2>(bi, bj);
      n.block<2, 2>(ri, cj) = ch.n().block<2, 2>(bi, bj);
    }
  }
  return {std::move(t), std::move(n)};
}

inline GaussianChannel local_channel(const GaussianChannel& ch, std::initializer_list<int> modes,
                                     int n_modes) {
  return local_channel(ch, std::span<const int>(modes.begin(), modes.size()), n_modes);
}

/// Beamsplitter of transmissivity tau between modes a and b:
///   X_a -> sqrt(tau) X_a + sqrt(1-tau) X_b
///   X_b -> sqrt(1-tau) X_a - sqrt(tau) X_b
/// on both quadratures. N = 0.
inline GaussianChannel beamsplitter_channel(double tau, int mode_a, int mode_b, int n_modes) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw InvalidArgument("beamsplitter_channel: tau must lie in [0, 1]");
  }
  if (mode_a == mode_b) throw InvalidArgument("beamsplitter_channel: modes must differ");
  const double t = std::sqrt(tau);
  const double r = std::sqrt(1.0 - tau);
  Matrix local(4, 4);
  local << t, 0, r, 0,
           0, t, 0, r,
           r, 0, -t, 0,
           0, r, 0, -t;
  return local_channel(GaussianChannel(local, Matrix::Zero(4, 4)), {mode_a, mode_b}, n_modes);
}

/// Single-mode squeezer R(theta) diag(e^-zeta, e^zeta) R(theta)^T.
/// At theta = 0:  X -> e^-zeta X,  P -> e^zeta P.
inline GaussianChannel squeeze_channel(double zeta, double theta, int mode, int n_modes) {
  const Eigen::Matrix2d r = phase_rotation(theta);
  const Eigen::Matrix2d d = Eigen::Vector2d(std::exp(-zeta), std::exp(zeta)).asDiagonal();
  return local_channel(GaussianChannel(r * d * r.transpose(), Matrix::Zero(2, 2)), {mode},
                       n_modes);
}

/// Phase-space rotation by phi on one mode; phi = pi flips both quadratures.
inline GaussianChannel phase_shift_channel(double phi, int mode, int n_modes) {
  return local_channel(GaussianChannel(phase_rotation(phi), Matrix::Zero(2, 2)), {mode}, n_modes);
}

/// Phase-insensitive amplifier: mean * sqrt(G), cov * G + (G - 1) I.
inline GaussianChannel amplifier_channel(double gain, int mode, int n_modes) {
  if (!(gain >= 1.0)) throw InvalidArgument("amplifier_channel: gain must be >= 1");
  return local_channel(GaussianChannel(std::sqrt(gain) * Matrix::Identity(2, 2),
                                       (gain - 1.0) * Matrix::Identity(2, 2)),
                       {mode}, n_modes);
}

/// Pure-loss channel (beamsplitter with vacuum): mean * sqrt(tau), cov * tau + (1 - tau) I.
inline GaussianChannel attenuator_channel(double tau, int mode, int n_modes) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw InvalidArgument("attenuator_channel: tau must lie in [0, 1]");
  }
  return local_channel(GaussianChannel(std::sqrt(tau) * Matrix::Identity(2, 2),
                                       (1.0 - tau) * Matrix::Identity(2, 2)),
                       {mode}, n_modes);
}

/// Homodyne-measures one quadrature of `measured_mode`, displaces the target
/// quadrature by `gain` times the outcome and discards the measured mode.
///
/// Returned as the unconditional state: the displacement re-centres every
/// outcome, so the operation is the linear map
///   target_q -> target_q + gain * measured_q
/// followed by the partial trace. Remaining modes keep their relative order.
inline GaussianState homodyne_feedforward(const GaussianState& s, int measured_mode,
                                          Quadrature quadrature, int target_mode,
                                          Quadrature target_quadrature, double gain) {
  const int n = s.n_modes();
  if (measured_mode < 0 || measured_mode >= n || target_mode < 0 || target_mode >= n) {
    throw InvalidArgument("homodyne_feedforward: mode index out of range");
  }
  if (measured_mode == target_mode) {
    throw InvalidArgument("homodyne_feedforward: measured and target modes must differ");
  }
  if (n < 2) throw InvalidArgument("homodyne_feedforward: need at least two modes");
  Matrix t = Matrix::Zero(2 * (n - 1), 2 * n);
  int row_mode = 0;
  int target_row_mode = -1;
  for (int m = 0; m < n; ++m) {
    if (m == measured_mode) continue;
    t(2 * row_mode, 2 * m) = 1.0;
    t(2 * row_mode + 1, 2 * m + 1) = 1.0;
    if (m == target_mode) target_row_mode = row_mode;
    ++row_mode;
  }
  const int q_target = target_quadrature == Quadrature::kX ? 0 : 1;
  const int q_meas = quadrature == Quadrature::kX ? 0 : 1;
  t(2 * target_row_mode + q_target, 2 * measured_mode + q_meas) += gain;
  const GaussianChannel ch(std::move(t), Matrix::Zero(2 * (n - 1), 2 * (n - 1)));
  return apply_channel(s, ch);
}

struct PhysicalityCheck {
  bool physical;
  double min_eigenvalue;
};

/// Complete-positivity test: N + i Omega_out - i T Omega_in T^T >= 0.
inline PhysicalityCheck channel_is_physical(const GaussianChannel& ch,
                                            double tol = kPsdTolerance) {
  const Matrix omega_out = symplectic_form(ch.out_modes());
  const Matrix omega_in = symplectic_form(ch.in_modes());
  const std::complex<double> i(0.0, 1.0);
  const Eigen::MatrixXcd m =
      ch.n().cast<std::complex<double>>() +
      i * (omega_out - ch.t() * omega_in * ch.t().transpose()).cast<std::complex<double>>();
  const double min_eig = hermitian_min_eigenvalue(m);
  return {min_eig >= -tol, min_eig};
}

}  // namespace cvqss

#endif  // CVQSS_GAUSSIAN_CHANNEL_HPP_
