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

#ifndef CVQSS_STEERING_HPP_
#define CVQSS_STEERING_HPP_

// EPR steering of X-P balanced two-mode resources.
//
// For a balanced resource the steering parameter is the common value of
//   Var(X_a - g X_b) = Var(P_a + g P_b),
// where b is the steering mode and a the steered one. Mode b steers mode a
// whenever some g gives a value below 1.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>

#include "cvqss/errors.hpp"
#include "cvqss/gaussian_state.hpp"

namespace cvqss {

/// kTwoSteersOne is E_{1|2} (mode 2 steers mode 1); kOneSteersTwo is E_{2|1}.
enum class SteeringDirection { kOneSteersTwo, kTwoSteersOne };

inline SteeringDirection reversed(SteeringDirection d) {
  return d == SteeringDirection::kTwoSteersOne ? SteeringDirection::kOneSteersTwo
                                               : SteeringDirection::kTwoSteersOne;
}

/// "1|2" or "2|1", the subscript of the steering parameter.
inline std::string_view to_string(SteeringDirection d) {
  return d == SteeringDirection::kTwoSteersOne ? "1|2" : "2|1";
}

struct SteeringResult {
  double e;
  double g;
  SteeringDirection direction;
  bool steerable;  // e < 1
};

/// Largest admissible reconstruction gain is sqrt(2); optimal_g clamps into
/// [kGainMargin, sqrt(2) - kGainMargin].
inline constexpr double kGainMargin = 1e-9;

namespace detail {

inline void require_two_modes(const GaussianState& s, const char* op) {
  if (s.n_modes() != 2) {
    throw InvalidArgument(std::string(op) + ": resource must have exactly two modes");
  }
}

// Offsets (steered, steering) into the covariance for a direction.
inline std::pair<int, int> steering_modes(SteeringDirection d) {
  return d == SteeringDirection::kTwoSteersOne ? std::pair{0, 2} : std::pair{2, 0};
}

}  // namespace detail

/// Var(X_a) = Var(P_a), Var(X_b) = Var(P_b) and Cov(X_a, X_b) = -Cov(P_a, P_b),
/// each to within tol (scaled by the covariance magnitude).
inline bool is_balanced(const GaussianState& resource, double tol = 1e-9) {
  detail::require_two_modes(resource, "is_balanced");
  const Matrix& v = resource.cov();
  const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
  return std::abs(v(0, 0) - v(1, 1)) <= tol * scale &&
         std::abs(v(2, 2) - v(3, 3)) <= tol * scale &&
         std::abs(v(0, 2) + v(1, 3)) <= tol * scale;
}

/// Steering parameter at gain g. Throws UnsupportedState when the X and P
/// conditional variances at this g differ by more than 1e-9 (relative).
inline double steering_parameter(const GaussianState& resource, double g,
                                 SteeringDirection direction) {
  detail::require_two_modes(resource, "steering_parameter");
  const Matrix& v = resource.cov();
  const auto [a, b] = detail::steering_modes(direction);
  const double var_x = v(a, a) + g * g * v(b, b) - 2.0 * g * v(a, b);
  const double var_p = v(a + 1, a + 1) + g * g * v(b + 1, b + 1) + 2.0 * g * v(a + 1, b + 1);
  const double scale = std::max({1.0, std::abs(var_x), std::abs(var_p)});
  if (std::abs(var_x - var_p) > 1e-9 * scale) {
    throw UnsupportedState("steering_parameter: resource is not X-P balanced (Var X = " +
                           std::to_string(var_x) + ", Var P = " + std::to_string(var_p) + ")");
  }
  return 0.5 * (var_x + var_p);
}

/// Minimizes the convex quadratic E(g) = V_a + g^2 V_b - 2 g C in closed form.
inline SteeringResult optimal_g(const GaussianState& resource, SteeringDirection direction) {
  detail::require_two_modes(resource, "optimal_g");
  if (!is_balanced(resource)) {
    throw UnsupportedState("optimal_g: resource is not X-P balanced");
  }
  const Matrix& v = resource.cov();
  const auto [a, b] = detail::steering_modes(direction);
  const double g_free = v(a, b) / v(b, b);
  const double g = std::clamp(g_free, kGainMargin, std::numbers::sqrt2 - kGainMargin);
  const double e = steering_parameter(resource, g, direction);
  return {e, g, direction, e < 1.0};
}

/// E_{2|1}(1/g) = E_{1|2}(g) / g^2: the same resource read in the other
/// direction. Returns (E / g^2, 1 / g).
inline std::pair<double, double> swapped_steering(double e, double g) {
  if (!(g > 0.0)) throw InvalidArgument("swapped_steering: g must be > 0");
  return {e / (g * g), 1.0 / g};
}

/// Relabels the two modes of a resource.
inline GaussianState swap_modes(const GaussianState& resource) {
  detail::require_two_modes(resource, "swap_modes");
  return partial_trace(resource, {1, 0});
}

}  // namespace cvqss

#endif  // CVQSS_STEERING_HPP_
