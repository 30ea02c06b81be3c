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

#ifndef QFB_KERNELS_HPP
#define QFB_KERNELS_HPP

// Batched trajectory kernels. A kernel advances one group of trajectories in
// lockstep, one trajectory per SIMD lane. Every instruction set runs the same
// template, so all kernels agree bit for bit; the libm-based functions in
// model.hpp are the reference they are checked against.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qfb/bloch.hpp"
#include "qfb/feedback_chain.hpp"
#include "qfb/model_params.hpp"

namespace qfb {

enum class Isa { portable, avx2, neon };

const char *isa_name(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

/// Compiled in and supported by the running CPU.
bool isa_available(Isa isa);
std::vector<Isa> available_isas();

/// Widest available ISA, unless the QFB_SIMD environment variable names
/// another available one. Resolved once per process.
Isa active_isa();

/// Per-step constants shared by every lane.
struct StepConstants {
    double readout_sigma;     // sqrt(tau_m / dt)
    double backaction_scale;  // dt / tau_m
    double dt;
    double delta0;
    double delta1;
    double transverse_decay;
    double z_decay;
    double filter_gain;
    bool filter_passthrough;
    std::size_t delay_steps;

    static StepConstants make(const ModelParams &params, const FeedbackLaw &law);
};

/// Receives recorded states (and optionally raw readouts) from a lane group.
class LaneSink {
   public:
    virtual ~LaneSink() = default;
    virtual void on_record(std::size_t record_index, unsigned lane, const BlochState &state) = 0;
    virtual void on_readout(unsigned /*lane*/, std::uint64_t /*step*/, double /*readout*/) {}
};

struct GroupJob {
    const StepConstants *constants = nullptr;
    BlochState initial;
    std::uint64_t seed = 0;
    std::uint64_t first_trajectory = 0;
    unsigned active_lanes = 0;  // trajectories first_trajectory .. + active_lanes - 1
    std::uint64_t total_steps = 0;
    std::span<const std::uint64_t> record_steps;  // increasing, each <= total_steps
    LaneSink *sink = nullptr;
    bool emit_readouts = false;
};

inline constexpr std::size_t kMaxLanes = 8;

struct GroupResult {
    std::uint64_t renormalizations[kMaxLanes] = {};  // per lane
};

struct KernelTable {
    Isa isa;
    std::size_t width;

    void (*fill_normals)(std::uint64_t seed, std::uint64_t trajectory, std::uint64_t first_step, double *out,
                         std::size_t n);
    void (*exp)(const double *in, double *out, std::size_t n);
    void (*log)(const double *in, double *out, std::size_t n);
    void (*sincos)(const double *in, double *sin_out, double *cos_out, std::size_t n);
    /// One composite step per element, without renormalization.
    void (*step)(const StepConstants &k, BlochState *states, const double *readouts, const double *fed,
                 std::size_t n);
    /// Runs at most `width` trajectories. Throws std::domain_error on a
    /// non-positive backaction normalization.
    GroupResult (*run_group)(const GroupJob &job);
};

/// Throws std::invalid_argument if `isa` is not available.
const KernelTable &kernel_table(Isa isa);

}  // namespace qfb

#endif
