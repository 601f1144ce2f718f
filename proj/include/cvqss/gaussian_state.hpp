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

#ifndef CVQSS_GAUSSIAN_STATE_HPP_
#define CVQSS_GAUSSIAN_STATE_HPP_

// Mean/covariance representation of n-mode Gaussian states.
//
// Conventions used throughout the library:
//   * quadratures are interleaved per mode: (x1, p1, x2, p2, ...);
//   * the vacuum has covariance identity, so a coherent state has cov = I
//     and the bona-fide condition reads  cov + i*Omega >= 0;
//   * Omega is the direct sum of [[0, 1], [-1, 0]] blocks, one per mode.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cvqss/errors.hpp"

namespace cvqss {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Minimum eigenvalue accepted by every positive-semidefiniteness test.
inline constexpr double kPsdTolerance = 1e-9;

enum class Quadrature { kX, kP };

/// Omega for `n_modes` modes.
inline Matrix symplectic_form(int n_modes) {
  if (n_modes < 1) throw InvalidArgument("symplectic_form: n_modes must be >= 1");
  Matrix omega = Matrix::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

/// Smallest eigenvalue of a Hermitian matrix.
inline double hermitian_min_eigenvalue(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericDomainError("hermitian_min_eigenvalue: eigen-decomposition failed");
  }
  return solver.eigenvalues().minCoeff();
}

/// Phase-space rotation used for squeezing angles. R(t) diag(a, b) R(t)^T
/// has off-diagonal (b - a) cos t sin t.
inline Eigen::Matrix2d phase_rotation(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::Matrix2d r;
  r << c, s, -s, c;
  return r;
}

/// 10 log10(e^{2 zeta}), the dB figure quoted for squeezed light.
inline double zeta_to_db(double zeta) { return 20.0 * zeta / std::numbers::ln10; }
inline double db_to_zeta(double db) { return db * std::numbers::ln10 / 20.0; }

class GaussianState {
 public:
  /// Throws InvalidArgument on inconsistent sizes, non-finite entries or a
  /// covariance that is not symmetric; small asymmetries are symmetrized away.
  GaussianState(Vector mean, Matrix cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
    const auto dim = mean_.size();
    if (dim == 0 || dim % 2 != 0) {
      throw InvalidArgument("GaussianState: mean must have even, non-zero length");
    }
    if (cov_.rows() != dim || cov_.cols() != dim) {
      throw InvalidArgument("GaussianState: covariance must be " + std::to_string(dim) +
                            "x" + std::to_string(dim));
    }
    if (!mean_.allFinite() || !cov_.allFinite()) {
      throw InvalidArgument("GaussianState: non-finite entries");
    }
    const double scale = std::max(1.0, cov_.cwiseAbs().maxCoeff());
    if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
      throw InvalidArgument("GaussianState: covariance is not symmetric");
    }
    cov_ = 0.5 * (cov_ + cov_.transpose()).eval();
  }

  int n_modes() const { return static_cast<int>(mean_.size() / 2); }
  const Vector& mean() const { return mean_; }
  const Matrix& cov() const { return cov_; }

  /// min eig(cov + i Omega); zero for pure states, negative for unphysical ones.
  double bona_fide_min_eigenvalue() const {
    const Eigen::MatrixXcd m = cov_.cast<std::complex<double>>() +
                               std::complex<double>(0.0, 1.0) *
                                   symplectic_form(n_modes()).cast<std::complex<double>>();
    return hermitian_min_eigenvalue(m);
  }

  bool is_bona_fide(double tol = kPsdTolerance) const {
    return bona_fide_min_eigenvalue() >= -tol;
  }

 private:
  Vector mean_;
  Matrix cov_;
};

inline GaussianState make_vacuum(int n_modes) {
  if (n_modes < 1) throw InvalidArgument("make_vacuum: n_modes must be >= 1");
  return GaussianState(Vector::Zero(2 * n_modes), Matrix::Identity(2 * n_modes, 2 * n_modes));
}

inline GaussianState make_coherent(double mean_x, double mean_p) {
  return GaussianState(Eigen::Vector2d(mean_x, mean_p), Matrix::Identity(2, 2));
}

/// Squeezed vacuum: R(theta) diag(e^{-2 zeta}, e^{2 zeta}) R(theta)^T.
inline GaussianState make_squeezed(double zeta, double theta) {
  const Eigen::Matrix2d r = phase_rotation(theta);
  const Eigen::Matrix2d d = Eigen::Vector2d(std::exp(-2.0 * zeta), std::exp(2.0 * zeta)).asDiagonal();
  return GaussianState(Vector::Zero(2), r * d * r.transpose());
}

inline GaussianState make_squeezed_thermal(double nbar, double zeta) {
  if (!(nbar >= 0.0)) throw InvalidArgument("make_squeezed_thermal: nbar must be >= 0");
  const double nt = 2.0 * nbar + 1.0;
  Matrix cov = Matrix::Zero(2, 2);
  cov(0, 0) = nt * std::exp(-2.0 * zeta);
  cov(1, 1) = nt * std::exp(2.0 * zeta);
  return GaussianState(Vector::Zero(2), cov);
}

/// Two-mode squeezed vacuum with squeezing parameter r.
inline GaussianState make_tmsv(double r) {
  if (!(r >= 0.0)) throw InvalidArgument("make_tmsv: r must be >= 0");
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  Matrix cov(4, 4);
  cov << ch, 0, sh, 0,
         0, ch, 0, -sh,
         sh, 0, ch, 0,
         0, -sh, 0, ch;
  return GaussianState(Vector::Zero(4), cov);
}

/// Direct sum; a's modes come first.
inline GaussianState tensor(const GaussianState& a, const GaussianState& b) {
  const auto na = a.mean().size();
  const auto nb = b.mean().size();
  Vector mean(na + nb);
  mean << a.mean(), b.mean();
  Matrix cov = Matrix::Zero(na + nb, na + nb);
  cov.topLeftCorner(na, na) = a.cov();
  cov.bottomRightCorner(nb, nb) = b.cov();
  return GaussianState(std::move(mean), std::move(cov));
}

/// Reduced state on `keep`, in the order given. Also serves as a mode permutation.
inline GaussianState partial_trace(const GaussianState& s, std::span<const int> keep) {
  if (keep.empty()) throw InvalidArgument("partial_trace: keep must be non-empty");
  std::vector<bool> seen(static_cast<std::size_t>(s.n_modes()), false);
  for (int m : keep) {
    if (m < 0 || m >= s.n_modes()) {
      throw InvalidArgument("partial_trace: mode index " + std::to_string(m) + " out of range");
    }
    if (seen[static_cast<std::size_t>(m)]) {
      throw InvalidArgument("partial_trace: duplicate mode index " + std::to_string(m));
    }
    seen[static_cast<std::size_t>(m)] = true;
  }
  const auto k = static_cast<Eigen::Index>(keep.size());
  Vector mean(2 * k);
  Matrix cov(2 * k, 2 * k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const int mi = keep[static_cast<std::size_t>(i)];
    mean.segment<2>(2 * i) = s.mean().segment<2>(2 * mi);
    for (Eigen::Index j = 0; j < k; ++j) {
      const int mj = keep[static_cast<std::size_t>(j)];
      cov.block<2, 2>(2 * i, 2 * j) = s.cov().block<2, 2>(2 * mi, 2 * mj);
    }
  }
  return GaussianState(std::move(mean), std::move(cov));
}

inline GaussianState partial_trace(const GaussianState& s, std::initializer_list<int> keep) {
  return partial_trace(s, std::span<const int>(keep.begin(), keep.size()));
}

/// Two-mode pure state whose first mode is the zero-mean squeezed thermal
/// state (nbar, zeta): a TMSV with opposite local squeezing on each arm.
inline GaussianState purify_squeezed_thermal(double nbar, double zeta) {
  if (!(nbar >= 0.0)) throw InvalidArgument("purify_squeezed_thermal: nbar must be >= 0");
  const double nt = 2.0 * nbar + 1.0;
  const double corr = std::sqrt(nt * nt - 1.0);
  const double em = nt * std::exp(-2.0 * zeta);
  const double ep = nt * std::exp(2.0 * zeta);
  Matrix cov(4, 4);
  cov << em, 0, corr, 0,
         0, ep, 0, -corr,
         corr, 0, ep, 0,
         0, -corr, 0, em;
  return GaussianState(Vector::Zero(4), cov);
}

/// Overlap of two equal-mean n-mode Gaussian states, at least one of them
/// pure: 2^n / sqrt(det(v1 + v2)).
inline double fidelity_equal_means(const Matrix& v1, const Matrix& v2, int n_modes) {
  if (n_modes < 1) throw InvalidArgument("fidelity_equal_means: n_modes must be >= 1");
  const Eigen::Index dim = 2 * n_modes;
  if (v1.rows() != dim || v1.cols() != dim || v2.rows() != dim || v2.cols() != dim) {
    throw InvalidArgument("fidelity_equal_means: covariance size does not match n_modes");
  }
  const double det = (v1 + v2).determinant();
  if (!(det > 0.0)) {
    throw NumericDomainError("fidelity_equal_means: det(v1 + v2) is not positive");
  }
  return std::pow(2.0, n_modes) / std::sqrt(det);
}

}  // namespace cvqss

#endif  // CVQSS_GAUSSIAN_STATE_HPP_
