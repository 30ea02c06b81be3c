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

#ifndef QFB_DESIGN_HPP
#define QFB_DESIGN_HPP

#include <string>
#include <vector>

#include "qfb/bloch.hpp"
#include "qfb/feedback_chain.hpp"
#include "qfb/model_params.hpp"

namespace qfb {

inline constexpr double kPi = 3.141592653589793238463;

/// Targets within this polar distance of a pole are refused by design_nonideal:
/// the 1/y_s term in delta0 blows up there.
inline constexpr double kPoleExclusion = 0.02 * kPi;

/// A point in the yz-plane given in polar form.
struct TargetSpec {
    double theta_s = 0.5 * kPi;
    double R_s = 1.0;

    double y() const;
    double z() const;
    static TargetSpec from_yz(double y, double z);
};

/// Stochastic displacement of (y, z) per unit noise at a target point.
struct DisturbanceReport {
    double delta_y;
    double delta_z;
    double cost;  // delta_y^2 + delta_z^2
};

/// Markovian law whose mean fixed point is the pure state at theta_s:
/// delta0 = -sin(2 theta)/(4 tau_m), delta1 = sin(theta)/tau_m.
/// Appends a warning for pole targets, where both rates vanish.
FeedbackLaw design_ideal(double theta_s, double tau_m, std::vector<std::string> *warnings = nullptr);

/// Largest stationary radius reachable at polar angle theta. With T1 finite
/// the poles are singular and rejected with std::invalid_argument; with
/// T1 = inf the result is 1/sqrt(2 tau_m Gamma) for every theta.
double max_radius(double theta, const ModelParams &params);

struct NonidealDesign {
    FeedbackLaw law;
    double R_s;  // = max_radius(theta_s)
};

/// Law stabilizing the ensemble mean at (theta_s, R_max(theta_s)). With T1
/// finite, throws std::invalid_argument within kPoleExclusion of either pole;
/// with T1 = inf every angle in [0, pi] is accepted.
NonidealDesign design_nonideal(double theta_s, const ModelParams &params);

/// Both laws placing the mean fixed point at `target`.
struct RadiusDesign {
    bool feasible = false;     // false when target.R_s > R_max
    double discriminant = 0;   // under the square root; 0 at R_s = R_max
    FeedbackLaw lower;         // smaller |delta1|
    FeedbackLaw upper;
    /// The two roots straddle the disturbance optimum symmetrically and cost the
    /// same; `lower` needs less gain and is the one returned by preferred().
    const FeedbackLaw &preferred() const { return lower; }
};

RadiusDesign design_for_radius(const TargetSpec &target, const ModelParams &params);

struct StationaryState {
    BlochState state;  // x = 0
    double theta;
    double R;
    double denominator;
};

/// Fixed point of the mean dynamics under `law`. Throws std::domain_error when
/// the denominator is degenerate (|D| < 1e-300).
StationaryState stationary_state(const FeedbackLaw &law, const ModelParams &params);

DisturbanceReport disturbance(const TargetSpec &target, double delta1, double tau_m);

/// argmin over delta1 of disturbance(target, delta1).cost = y_s / (R_s^2 tau_m).
double optimal_delta1(const TargetSpec &target, double tau_m);

}  // namespace qfb

#endif
