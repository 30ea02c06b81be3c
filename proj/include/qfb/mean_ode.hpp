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

#ifndef QFB_MEAN_ODE_HPP
#define QFB_MEAN_ODE_HPP

#include <cstdint>
#include <vector>

#include "qfb/bloch.hpp"
#include "qfb/feedback_chain.hpp"
#include "qfb/model_params.hpp"
#include "qfb/record.hpp"

namespace qfb {

// Time-continuous Markovian model (no filter, no delay). The drift is the
// ensemble-average master equation in Bloch form; the noise terms, with
// dW = xi dt, drive individual trajectories:
//   dx = -G x dt                                 - x z dW/sqrt(tau_m)
//   dy = (-(G + a) y + D0 z + D1) dt             + (-y z + tau_m D1 z) dW/sqrt(tau_m)
//   dz = (-a z - D0 y - (1 + z)/T1) dt           + ((1 - z^2) - tau_m D1 y) dW/sqrt(tau_m)
// with G the total dephasing rate and a = tau_m D1^2 / 2.

BlochState mean_drift(const BlochState &state, const FeedbackLaw &law, const ModelParams &params);

/// Noise coefficients multiplying dW/sqrt(tau_m).
BlochState noise_coefficients(const BlochState &state, const FeedbackLaw &law, const ModelParams &params);

struct MeanOdeSeries {
    std::vector<double> times;
    std::vector<BlochState> states;
};

/// Classical fourth-order Runge-Kutta with fixed step dt_ode, sampled every
/// `record_stride` steps plus the final time. total_time must be a whole
/// number of dt_ode steps (1e-9 relative).
MeanOdeSeries integrate_mean_ode(const BlochState &initial, const FeedbackLaw &law, const ModelParams &params,
                                 double total_time, double dt_ode, std::uint64_t record_stride = 1);

/// Mean ODE solution at an arbitrary time, by RK4 with at most dt_ode steps.
BlochState mean_ode_at(const BlochState &initial, const FeedbackLaw &law, const ModelParams &params, double t,
                       double dt_ode);

struct SmeTrajectory {
    TrajectoryRecord record;
    bool excursion = false;  // some state reached R > 1.05
    double max_radius = 0.0;
};

inline constexpr double kSmeExcursionRadius = 1.05;

/// Euler-Maruyama integration of the Bloch SME at step params.dt, driven by
/// the same counter-based normals as the Bayesian engine (trajectory
/// `trajectory` of cfg.seed). Requires law.Ts == law.Td == 0. With
/// `freeze_noise` the stochastic terms are dropped.
SmeTrajectory integrate_sme_trajectory(const TrajectoryConfig &cfg, const FeedbackLaw &law, const ModelParams &params,
                                       std::uint64_t trajectory = 0, bool freeze_noise = false);

}  // namespace qfb

#endif
