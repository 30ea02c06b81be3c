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

#include "qfb/model.hpp"

#include <cmath>
#include <stdexcept>

namespace qfb {

double sample_readout(const BlochState &state, const ModelParams &params, double standard_normal) {
    return state.z + std::sqrt(params.tau_m / params.dt) * standard_normal;
}

BlochState measurement_backaction(const BlochState &state, double readout, const ModelParams &params) {
    const double s = readout * params.dt / params.tau_m;
    const double c = std::cosh(s);
    const double sh = std::sinh(s);
    const double p = c + state.z * sh;
    if (!(p > 0.0)) {
        throw std::domain_error("measurement_backaction: non-positive normalization (state outside the Bloch ball?)");
    }
    return {state.x / p, state.y / p, (state.z * c + sh) / p};
}

BlochState feedback_rotation(const BlochState &state, double delta, const ModelParams &params) {
    const double angle = params.dt * delta;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {state.x, state.y * c + state.z * s, state.z * c - state.y * s};
}

BlochState dissipation_step(const BlochState &state, const ModelParams &params) {
    const double dt = params.dt;
    const double transverse = std::exp(-0.5 * dt / params.T1 - dt / params.T2 - dt * params.gamma_inefficiency());
    const double decay = std::exp(-dt / params.T1);
    return {state.x * transverse, state.y * transverse, state.z * decay - (1.0 - decay)};
}

BlochState composite_step(const BlochState &state, double readout, double fed_readout, const FeedbackLaw &law,
                          const ModelParams &params) {
    const BlochState measured = measurement_backaction(state, readout, params);
    const BlochState rotated = feedback_rotation(measured, law.delta0 + law.delta1 * fed_readout, params);
    return dissipation_step(rotated, params);
}

bool renormalize_if_outside(BlochState &state) {
    const double r2 = state.norm_squared();
    if (r2 <= 1.0) {
        return false;
    }
    const double scale = 1.0 / std::sqrt(r2);
    state.x *= scale;
    state.y *= scale;
    state.z *= scale;
    return r2 > 1.0 + kBlochSlack;
}

}  // namespace qfb
