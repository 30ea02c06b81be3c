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

#ifndef QFB_TRAJECTORY_HPP
#define QFB_TRAJECTORY_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qfb/feedback_chain.hpp"
#include "qfb/kernels.hpp"
#include "qfb/model_params.hpp"
#include "qfb/record.hpp"
#include "qfb/stats.hpp"

namespace qfb {

/// How trajectories are stepped. `reference` runs the scalar libm model one
/// trajectory at a time; the others run the batched kernel of that ISA, and
/// `automatic` picks active_isa().
enum class Backend { automatic, reference, portable, avx2, neon };

const char *backend_name(Backend backend);
std::optional<Backend> parse_backend(std::string_view name);
/// Maps `automatic` to a concrete backend.
Backend resolve_backend(Backend backend);

/// Trajectory number `trajectory` of the ensemble seeded by cfg.seed.
TrajectoryRecord run_trajectory(const TrajectoryConfig &cfg, const ModelParams &params, const FeedbackLaw &law,
                                Backend backend = Backend::automatic, std::uint64_t trajectory = 0);

struct EnsembleOptions {
    std::uint64_t n_traj = 1;
    unsigned threads = 0;  // 0: hardware concurrency
    Backend backend = Backend::automatic;
    bool keep_records = false;
    std::size_t histogram_bins = 0;         // 0: no histogram
    std::uint64_t histogram_from_step = 0;  // recorded steps from here on feed the histogram
};

struct EnsembleResult {
    MeanSeries mean;
    std::optional<HistogramGrid> histogram;
    std::vector<TrajectoryRecord> records;  // only with keep_records
    std::uint64_t renormalizations = 0;
    Backend backend = Backend::reference;
};

/// Trajectories are processed in fixed chunks and reduced exactly, so the
/// result depends only on (cfg, params, law, n_traj, backend), never on the
/// thread count or schedule.
EnsembleResult run_ensemble(const TrajectoryConfig &cfg, const ModelParams &params, const FeedbackLaw &law,
                            const EnsembleOptions &options);

/// Resolves a thread request: 0 means QFB_THREADS if set, else hardware concurrency.
unsigned resolve_threads(unsigned requested);

}  // namespace qfb

#endif
