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

#ifndef QFB_SWEEP_HPP
#define QFB_SWEEP_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qfb/feedback_chain.hpp"
#include "qfb/model_params.hpp"
#include "qfb/stats.hpp"
#include "qfb/trajectory.hpp"

namespace qfb {

/// Steady-state sampling protocol: discard a burn-in, then take
/// samples_per_trajectory states spaced sample_interval apart.
struct SteadyStateOptions {
    std::uint64_t n_traj = 100000;
    double burn_in_taus = 10.0;          // in units of tau_m
    double sample_interval_taus = 1.0;   // in units of tau_m
    std::uint64_t samples_per_trajectory = 1;
    std::size_t bins = 100;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    Backend backend = Backend::automatic;
    PeakOptions peak;
};

struct SteadyStateResult {
    FeedbackLaw law;
    BlochState initial;
    HistogramGrid histogram;
    PeakReport peak;
    double y_E;  // mean over all steady samples
    double z_E;
    double R_E;
    double theta_E;
    std::uint64_t renormalizations;
};

/// Histogram of steady-state samples under `law`. Trajectories start at
/// `initial`, or at the Markovian stationary state of `law` when omitted.
SteadyStateResult run_steady_state(const FeedbackLaw &law, const ModelParams &params,
                                   const SteadyStateOptions &options,
                                   std::optional<BlochState> initial = std::nullopt);

struct SweepRow {
    double theta_s;    // target angle
    double value;      // swept quantity: theta_s, Ts or Td
    double R_design;   // radius the law was designed for
    SteadyStateResult result;
};

using LawGenerator = std::function<FeedbackLaw(double theta_s)>;

/// One steady-state run per target angle.
std::vector<SweepRow> sweep_targets(std::span<const double> thetas, const ModelParams &params,
                                    const LawGenerator &make_law, const SteadyStateOptions &options);

enum class ChainKnob { filter, delay };

/// Fixed nonideal design at theta_target with Ts (filter) or Td (delay) set
/// to each of `values` (us). Every run starts from the Markovian stationary state.
std::vector<SweepRow> sweep_chain(double theta_target, ChainKnob knob, std::span<const double> values,
                                  const ModelParams &params, const SteadyStateOptions &options);

}  // namespace qfb

#endif
