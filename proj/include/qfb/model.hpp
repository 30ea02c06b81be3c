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

#ifndef QFB_MODEL_HPP
#define QFB_MODEL_HPP

#include "qfb/bloch.hpp"
#include "qfb/feedback_chain.hpp"
#include "qfb/model_params.hpp"

namespace qfb {

// Reference single-step physics of the monitored qubit. These are written for
// clarity against the Bloch-coordinate update and use libm throughout; the
// batched kernels in kernels.hpp are checked against them.

/// Coarse-grained readout over one step: mean z, variance tau_m/dt.
/// `standard_normal` is the N(0,1) draw that realizes the sample.
double sample_readout(const BlochState &state, const ModelParams &params, double standard_normal);

/// Bayesian update for the readout `readout`. Throws std::domain_error if the
/// normalization is non-positive, which only happens for a corrupted state.
BlochState measurement_backaction(const BlochState &state, double readout, const ModelParams &params);

/// Rotation about x by dt * delta (rad/us); the sense is y += z sin, z -= y sin.
BlochState feedback_rotation(const BlochState &state, double delta, const ModelParams &params);

/// Energy decay, environmental dephasing and detector-inefficiency dephasing over one step.
BlochState dissipation_step(const BlochState &state, const ModelParams &params);

/// dissipation o rotation(delta0 + delta1 * fed_readout) o backaction(readout).
BlochState composite_step(const BlochState &state, double readout, double fed_readout, const FeedbackLaw &law,
                          const ModelParams &params);

/// Scales a state with |r| > 1 back onto the sphere. Returns true when the
/// excess was larger than round-off (|r|^2 > 1 + kBlochSlack).
bool renormalize_if_outside(BlochState &state);

}  // namespace qfb

#endif
