// Copyright 2026 The qfb Authors
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

#include "qfb/design.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace qfb {

double TargetSpec::y() const {
    return R_s * std::sin(theta_s);
}

double TargetSpec::z() const {
    return R_s * std::cos(theta_s);
}

TargetSpec TargetSpec::from_yz(double y, double z) {
    return {std::atan2(y, z), std::hypot(y, z)};
}

FeedbackLaw design_ideal(double theta_s, double tau_m, std::vector<std::string> *warnings) {
    if (!(tau_m > 0.0)) {
        throw std::invalid_argument("tau_m: must be > 0");
    }
    if (warnings && std::abs(std::sin(theta_s)) < 1e-12) {
        warnings->push_back("theta_target: pole target; both feedback rates vanish");
    }
    return {-std::sin(2.0 * theta_s) / (4.0 * tau_m), std::sin(theta_s) / tau_m, 0.0, 0.0};
}

double max_radius(double theta, const ModelParams &params) {
    const double tau = params.tau_m;
    const double gamma = params.gamma_total();
    if (std::isinf(params.T1)) {
        return 1.0 / std::sqrt(2.0 * tau * gamma);
    }
    const double s = std::sin(theta);
    if (std::abs(s) < 1e-12) {
        throw std::invalid_argument("theta: max_radius is singular at the poles for finite T1");
    }
    const double c = std::cos(theta);
    const double b = (tau / params.T1) * c / (s * s);
    const double cot = c / s;
    const double a = 2.0 * tau * gamma + (2.0 * tau / params.T1) * cot * cot;
    return 1.0 / (b + std::sqrt(a + b * b));
}

namespace {

/// delta0 that makes (y, z) stationary for a given delta1.
double matching_delta0(double y, double z, double delta1, const ModelParams &params) {
    return -0.5 * params.tau_m * delta1 * delta1 * z / y - (1.0 + z) / (params.T1 * y);
}

}  // namespace

NonidealDesign design_nonideal(double theta_s, const ModelParams &params) {
    if (std::isinf(params.T1)) {
        // No decay term, so the 1/y_s pieces cancel and every angle works.
        if (!(theta_s >= 0.0 && theta_s <= kPi)) {
            throw std::invalid_argument("theta_target: must lie in [0, pi]");
        }
        const double R = max_radius(theta_s, params);
        return {{-std::sin(2.0 * theta_s) / (4.0 * params.tau_m * (R * R)), std::sin(theta_s) / (R * params.tau_m),
                 0.0, 0.0},
                R};
    }
    if (!(theta_s >= kPoleExclusion && theta_s <= kPi - kPoleExclusion)) {
        throw std::invalid_argument(
            "theta_target: within 0.02 pi of a pole; linear feedback cannot hold a pole target (use heralded "
            "collapse instead)");
    }
    const double R = max_radius(theta_s, params);
    const double y = R * std::sin(theta_s);
    const double z = R * std::cos(theta_s);
    const double delta1 = std::sin(theta_s) / (R * params.tau_m);
    return {{matching_delta0(y, z, delta1, params), delta1, 0.0, 0.0}, R};
}

RadiusDesign design_for_radius(const TargetSpec &target, const ModelParams &params) {
    const double y = target.y();
    const double z = target.z();
    if (std::abs(y) < 1e-12) {
        throw std::invalid_argument("theta_target: design_for_radius needs y_s != 0");
    }
    const double R2 = target.R_s * target.R_s;
    const double tau = params.tau_m;
    RadiusDesign out;
    out.discriminant = 1.0 - 2.0 * tau * R2 * (params.gamma_total() + (1.0 + z) * z / (params.T1 * y * y));
    out.feasible = out.discriminant > -1e-12;
    if (!out.feasible) {
        return out;
    }
    const double root = std::sqrt(std::max(0.0, out.discriminant));
    const double scale = y / (R2 * tau);
    double d_lo = scale * (1.0 - root);
    double d_hi = scale * (1.0 + root);
    if (std::abs(d_lo) > std::abs(d_hi)) {
        std::swap(d_lo, d_hi);
    }
    out.lower = {matching_delta0(y, z, d_lo, params), d_lo, 0.0, 0.0};
    out.upper = {matching_delta0(y, z, d_hi, params), d_hi, 0.0, 0.0};
    return out;
}

StationaryState stationary_state(const FeedbackLaw &law, const ModelParams &params) {
    const double d0 = law.delta0;
    const double d1 = law.delta1;
    const double a = 0.5 * params.tau_m * d1 * d1;
    const double g = params.gamma_total();
    const double inv_t1 = 1.0 / params.T1;
    const double D = d0 * d0 + (inv_t1 + a) * (g + a);
    if (!(std::abs(D) >= 1e-300)) {
        throw std::domain_error("stationary_state: degenerate denominator (no unique fixed point)");
    }
    const double y = (d1 * a + inv_t1 * (d1 - d0)) / D;
    const double z = -(d0 * d1 + inv_t1 * (g + a)) / D;
    return {{0.0, y, z}, std::atan2(y, z), std::hypot(y, z), D};
}

DisturbanceReport disturbance(const TargetSpec &target, double delta1, double tau_m) {
    const double y = target.y();
    const double z = target.z();
    const double dy = -y * z + tau_m * delta1 * z;
    const double dz = (1.0 - z * z) - tau_m * delta1 * y;
    return {dy, dz, dy * dy + dz * dz};
}

double optimal_delta1(const TargetSpec &target, double tau_m) {
    return target.y() / (target.R_s * target.R_s * tau_m);
}

}  // namespace qfb
