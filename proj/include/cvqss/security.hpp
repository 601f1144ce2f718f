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

#ifndef CVQSS_SECURITY_HPP_
#define CVQSS_SECURITY_HPP_

// Closed-form fidelities and no-cloning thresholds for share-3 reconstructions.
//
// With a unity-gain correction the reconstructed mode is the secret plus
// c I of phase-insensitive noise, where for E = E_{1|2}(g) and
// eta = 1/sqrt(2 - g^2)
//     c = eta^2 E + 1 - eta^2      (g <= 1, esa)
//     c = E + 1 - 1/eta^2          (g >= 1, lsatt).
// Both branches coincide at g = 1 (c = E). Every closed form below is a
// function of c and of the secret's (zeta, nbar) only.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cvqss/errors.hpp"
#include "cvqss/gaussian_state.hpp"
#include "cvqss/qss.hpp"
#include "cvqss/steering.hpp"

namespace cvqss {

/// Above this only one party can hold the best copy.
inline constexpr double kNoCloningFidelity = 2.0 / 3.0;
/// Best fidelity achievable without entanglement for coherent states.
inline constexpr double kClassicalFidelity = 0.5;

struct SecurityReport {
  double fidelity;
  double e_used;
  double g;
  double eta;
  double threshold_e;  // +inf when share 3 is not involved
  bool secure;            // fidelity > 2/3
  bool classical_beaten;  // fidelity > 1/2
};

namespace detail {

inline void require_gain(double g, const char* op) {
  if (!(g > 0.0 && g < std::numbers::sqrt2)) {
    throw InvalidArgument(std::string(op) + ": g must lie in (0, sqrt 2)");
  }
}

inline void require_steering(double e, const char* op) {
  if (!(e >= 0.0) || !std::isfinite(e)) {
    throw InvalidArgument(std::string(op) + ": E must be finite and >= 0");
  }
}

inline void require_nbar(double nbar, const char* op) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw InvalidArgument(std::string(op) + ": nbar must be finite and >= 0");
  }
}

// 2 cosh(2 zeta) - sqrt(4 cosh^2(2 zeta) + 5), rewritten to avoid cancellation.
inline double squeezing_deficit(double zeta) {
  const double ch = std::cosh(2.0 * zeta);
  return -5.0 / (2.0 * ch + std::sqrt(4.0 * ch * ch + 5.0));
}

// 2 / sqrt(4 + 4 nt cosh(2 zeta) c + nt^2 c^2) with nt = 2 nbar + 1.
inline double fidelity_from_noise(double c, double zeta, double nbar) {
  const double nt = 2.0 * nbar + 1.0;
  const double arg = 4.0 + 4.0 * nt * std::cosh(2.0 * zeta) * c + nt * nt * c * c;
  if (!(arg > 0.0)) throw NumericDomainError("fidelity: non-positive determinant");
  return 2.0 / std::sqrt(arg);
}

}  // namespace detail

/// Added noise c of the unity-gain corrected output (see file comment).
inline double corrected_noise(double e, double g) {
  detail::require_gain(g, "corrected_noise");
  const double eta2 = 1.0 / (2.0 - g * g);
  return g <= 1.0 ? eta2 * e + 1.0 - eta2 : e + 1.0 - 1.0 / eta2;
}

/// Coherent-secret fidelity: 2/(3 - eta^2 + eta^2 E), 2/(2 + E) or
/// 2/(3 - 1/eta^2 + E) for g below, at or above one.
inline double fidelity_coherent(double e, double g) {
  detail::require_steering(e, "fidelity_coherent");
  detail::require_gain(g, "fidelity_coherent");
  const double eta2 = 1.0 / (2.0 - g * g);
  if (g < 1.0) return 2.0 / (3.0 - eta2 + eta2 * e);
  if (g > 1.0) return 2.0 / (3.0 - 1.0 / eta2 + e);
  return 2.0 / (2.0 + e);
}

/// Largest E for which a coherent secret is shared securely: 1 (g <= 1), 2 - g^2.
inline double threshold_coherent(double g) {
  detail::require_gain(g, "threshold_coherent");
  return g <= 1.0 ? 1.0 : 2.0 - g * g;
}

/// 1 + 2 cosh(2 zeta) - sqrt(4 cosh^2(2 zeta) + 5); 0 at zeta = 0, tends to 1.
inline double gamma_pure(double zeta) { return 1.0 + detail::squeezing_deficit(zeta); }

/// 1 + (2 cosh(2 zeta) - sqrt(4 cosh^2(2 zeta) + 5)) / (2 nbar + 1).
inline double gamma_thermal(double zeta, double nbar) {
  detail::require_nbar(nbar, "gamma_thermal");
  return 1.0 + detail::squeezing_deficit(zeta) / (2.0 * nbar + 1.0);
}

/// 1 - Gamma/eta^2 (g <= 1) or 1/eta^2 - Gamma (g >= 1), floored at 0.
inline double threshold_thermal(double g, double zeta, double nbar) {
  detail::require_gain(g, "threshold_thermal");
  const double gamma = gamma_thermal(zeta, nbar);
  const double inv_eta2 = 2.0 - g * g;
  const double t = g <= 1.0 ? 1.0 - gamma * inv_eta2 : inv_eta2 - gamma;
  return std::max(t, 0.0);
}

inline double threshold_pure(double g, double zeta) {
  detail::require_gain(g, "threshold_pure");
  const double gamma = gamma_pure(zeta);
  const double inv_eta2 = 2.0 - g * g;
  const double t = g <= 1.0 ? 1.0 - gamma * inv_eta2 : inv_eta2 - gamma;
  return std::max(t, 0.0);
}

/// 2 / sqrt((2 e^{2 zeta} + c)(2 e^{-2 zeta} + c)).
inline double fidelity_pure(double e, double g, double zeta) {
  detail::require_steering(e, "fidelity_pure");
  const double c = corrected_noise(e, g);
  const double arg = (2.0 * std::exp(2.0 * zeta) + c) * (2.0 * std::exp(-2.0 * zeta) + c);
  if (!(arg > 0.0)) throw NumericDomainError("fidelity_pure: non-positive determinant");
  return 2.0 / std::sqrt(arg);
}

inline double fidelity_thermal(double e, double g, double zeta, double nbar) {
  detail::require_steering(e, "fidelity_thermal");
  detail::require_nbar(nbar, "fidelity_thermal");
  return detail::fidelity_from_noise(corrected_noise(e, g), zeta, nbar);
}

/// Squeezing left in the output: 1/4 ln((e^{2 zeta} + k)/(e^{-2 zeta} + k)) with
/// k = E for the uncorrected (undisplaced) path and k = c when corrected.
inline double output_squeezing(double zeta, double e, double g, bool corrected) {
  detail::require_steering(e, "output_squeezing");
  detail::require_gain(g, "output_squeezing");
  const double k = corrected ? corrected_noise(e, g) : e;
  const double num = std::exp(2.0 * zeta) + k;
  const double den = std::exp(-2.0 * zeta) + k;
  if (!(num > 0.0 && den > 0.0)) {
    throw NumericDomainError("output_squeezing: noise term makes a variance non-positive");
  }
  return 0.25 * std::log(num / den);
}

struct SwapComparison {
  double fidelity_direct;   // E_{1|2}(g) at g > 1
  double fidelity_swapped;  // E_{2|1}(1/g) at 1/g < 1
};

/// Fidelities with and without relabelling the resource modes, for g > 1.
inline SwapComparison compare_mode_swap(const GaussianState& resource, double g,
                                        const SecretSpec& secret) {
  secret.validate();
  if (!(g > 1.0 && g < std::numbers::sqrt2)) {
    throw InvalidArgument("compare_mode_swap: g must lie in (1, sqrt 2)");
  }
  const double e = steering_parameter(resource, g, SteeringDirection::kTwoSteersOne);
  if (!(e < 1.0)) throw InvalidArgument("compare_mode_swap: resource is not steerable at g");
  const auto [e_swapped, g_swapped] = swapped_steering(e, g);
  return {fidelity_thermal(e, g, secret.zeta, secret.nbar),
          fidelity_thermal(e_swapped, g_swapped, secret.zeta, secret.nbar)};
}

/// Whether using the steering in the other direction at 1/g beats g > 1.
/// Always true for steerable resources; kept as a checkable statement.
inline bool swap_is_preferable(const GaussianState& resource, double g, const SecretSpec& secret) {
  const SwapComparison c = compare_mode_swap(resource, g, secret);
  return c.fidelity_swapped > c.fidelity_direct;
}

/// Closed-form security summary for one plan, cross-checked against a full
/// simulation of the protocol (std::logic_error if they disagree by > 1e-9).
inline SecurityReport security_report(const GaussianState& resource, const SecretSpec& secret,
                                      const ReconstructionPlan& plan) {
  secret.validate();
  SecurityReport report{};
  if (plan.shares == ShareSet::k12) {
    report.g = plan.paired_correction_12 ? plan.g : 1.0;
    report.eta = plan.paired_correction_12 ? eta_of_g(plan.g) : 1.0;
    report.e_used = steering_parameter(resource, report.g, SteeringDirection::kTwoSteersOne);
    const double c = report.eta < 1.0 ? 2.0 * (1.0 - report.eta * report.eta) : 0.0;
    report.fidelity = detail::fidelity_from_noise(c, secret.zeta, secret.nbar);
    report.threshold_e = std::numeric_limits<double>::infinity();
  } else {
    report.g = plan.g;
    report.eta = eta_of_g(plan.g);
    const Correction applied = resolve_correction(plan.correction, plan.g);
    if (applied == Correction::kNone && plan.g != 1.0) {
      throw InvalidArgument(
          "security_report: closed forms assume a unity-gain correction when g != 1");
    }
    report.e_used = steering_parameter(resource, plan.g, SteeringDirection::kTwoSteersOne);
    report.fidelity = fidelity_thermal(report.e_used, plan.g, secret.zeta, secret.nbar);
    report.threshold_e = threshold_thermal(plan.g, secret.zeta, secret.nbar);
  }
  const ProtocolResult sim = run_protocol(secret, resource, plan);
  if (std::abs(sim.fidelity - report.fidelity) > 1e-9) {
    throw std::logic_error("security_report: closed-form fidelity " +
                           std::to_string(report.fidelity) + " disagrees with simulation " +
                           std::to_string(sim.fidelity));
  }
  report.secure = report.fidelity > kNoCloningFidelity;
  report.classical_beaten = report.fidelity > kClassicalFidelity;
  return report;
}

}  // namespace cvqss

#endif  // CVQSS_SECURITY_HPP_
