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

#include "qfb/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qfb/design.hpp"

namespace qfb {

SteadyStateResult run_steady_state(const FeedbackLaw &law, const ModelParams &params,
                                   const SteadyStateOptions &options, std::optional<BlochState> initial) {
    if (options.samples_per_trajectory < 1) {
        throw std::invalid_argument("samples_per_trajectory: must be >= 1");
    }
    const double dt = params.dt;
    const auto burn = static_cast<std::uint64_t>(std::llround(options.burn_in_taus * params.tau_m / dt));
    const auto interval =
        std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(options.sample_interval_taus * params.tau_m / dt)));
    const std::uint64_t total = std::max<std::uint64_t>(1, burn + (options.samples_per_trajectory - 1) * interval);

    FeedbackLaw markovian = law;
    markovian.Ts = 0.0;
    markovian.Td = 0.0;
    TrajectoryConfig cfg;
    cfg.initial = initial ? *initial : stationary_state(markovian, params).state;
    cfg.total_time = static_cast<double>(total) * dt;
    cfg.record_from = std::min(burn, total);
    cfg.record_stride = interval;
    cfg.seed = options.seed;

    EnsembleOptions eo;
    eo.n_traj = options.n_traj;
    eo.threads = options.threads;
    eo.backend = options.backend;
    eo.histogram_bins = options.bins;
    eo.histogram_from_step = cfg.record_from;
    EnsembleResult ensemble = run_ensemble(cfg, params, law, eo);

    SteadyStateResult out{law, cfg.initial, std::move(*ensemble.histogram), {}, 0, 0, 0, 0, ensemble.renormalizations};
    out.peak = find_peak(out.histogram, options.peak);
    out.y_E = out.histogram.mean_y();
    out.z_E = out.histogram.mean_z();
    out.R_E = std::hypot(out.y_E, out.z_E);
    out.theta_E = std::atan2(out.y_E, out.z_E);
    return out;
}

std::vector<SweepRow> sweep_targets(std::span<const double> thetas, const ModelParams &params,
                                    const LawGenerator &make_law, const SteadyStateOptions &options) {
    std::vector<SweepRow> rows;
    for (double theta : thetas) {
        const FeedbackLaw law = make_law(theta);
        const StationaryState target = stationary_state(law, params);
        rows.push_back({theta, theta, target.R, run_steady_state(law, params, options)});
    }
    return rows;
}

std::vector<SweepRow> sweep_chain(double theta_target, ChainKnob knob, std::span<const double> values,
                                  const ModelParams &params, const SteadyStateOptions &options) {
    const NonidealDesign design = design_nonideal(theta_target, params);
    std::vector<SweepRow> rows;
    for (double v : values) {
        FeedbackLaw law = design.law;
        (knob == ChainKnob::filter ? law.Ts : law.Td) = v;
        rows.push_back({theta_target, v, design.R_s, run_steady_state(law, params, options)});
    }
    return rows;
}

}  // namespace qfb
