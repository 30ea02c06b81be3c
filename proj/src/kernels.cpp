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

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels/tables.hpp"
#include "qfb/kernels.hpp"

namespace qfb {

const char *isa_name(Isa isa) {
    switch (isa) {
        case Isa::portable:
            return "portable";
        case Isa::avx2:
            return "avx2";
        case Isa::neon:
            return "neon";
    }
    return "unknown";
}

std::optional<Isa> parse_isa(std::string_view name) {
    for (Isa isa : {Isa::portable, Isa::avx2, Isa::neon}) {
        if (name == isa_name(isa)) {
            return isa;
        }
    }
    return std::nullopt;
}

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::portable:
            return true;
        case Isa::avx2:
#ifdef QFB_HAVE_AVX2_KERNEL
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Isa::neon:
#ifdef QFB_HAVE_NEON_KERNEL
            return true;
#else
            return false;
#endif
    }
    return false;
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out;
    for (Isa isa : {Isa::portable, Isa::avx2, Isa::neon}) {
        if (isa_available(isa)) {
            out.push_back(isa);
        }
    }
    return out;
}

Isa active_isa() {
    static const Isa chosen = [] {
        if (const char *env = std::getenv("QFB_SIMD")) {
            const auto requested = parse_isa(env);
            if (requested && isa_available(*requested)) {
                return *requested;
            }
        }
        return available_isas().back();
    }();
    return chosen;
}

StepConstants StepConstants::make(const ModelParams &params, const FeedbackLaw &law) {
    const double dt = params.dt;
    StepConstants k;
    k.readout_sigma = std::sqrt(params.tau_m / dt);
    k.backaction_scale = dt / params.tau_m;
    k.dt = dt;
    k.delta0 = law.delta0;
    k.delta1 = law.delta1;
    k.transverse_decay = std::exp(-0.5 * dt / params.T1 - dt / params.T2 - dt * params.gamma_inefficiency());
    k.z_decay = std::exp(-dt / params.T1);
    k.filter_gain = law.filter_gain(dt);
    k.filter_passthrough = law.Ts == 0.0;
    k.delay_steps = law.delay_steps(dt);
    return k;
}

const KernelTable &kernel_table(Isa isa) {
    if (!isa_available(isa)) {
        throw std::invalid_argument(std::string("kernel ISA not available: ") + isa_name(isa));
    }
    switch (isa) {
#ifdef QFB_HAVE_AVX2_KERNEL
        case Isa::avx2:
            return kernels::avx2_table();
#endif
#ifdef QFB_HAVE_NEON_KERNEL
        case Isa::neon:
            return kernels::neon_table();
#endif
        default:
            return kernels::portable_table();
    }
}

}  // namespace qfb
