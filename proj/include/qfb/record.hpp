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

#ifndef QFB_RECORD_HPP
#define QFB_RECORD_HPP

#include <cstdint>
#include <vector>

#include "qfb/bloch.hpp"
#include "qfb/model_params.hpp"

namespace qfb {

/// What to simulate for one trajectory and which steps to keep.
struct TrajectoryConfig {
    BlochState initial{0.0, 0.0, 1.0};
    double total_time = 1.0;          // us; must be a whole number of steps
    std::uint64_t record_stride = 1;  // steps between recorded samples
    std::uint64_t record_from = 0;    // first recorded step (burn-in)
    std::uint64_t seed = 0;
    bool keep_readouts = false;

    /// total_time / dt; throws std::invalid_argument unless it is a positive
    /// integer to within 1e-9 relative.
    std::uint64_t total_steps(double dt) const;

    /// record_from, record_from + stride, ... below the final step, then the
    /// final step itself. Throws std::invalid_argument on a bad stride, start
    /// or initial state.
    std::vector<std::uint64_t> record_steps(double dt) const;
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<BlochState> states;
    std::vector<double> readouts;  // one per step when requested
    std::uint64_t renormalizations = 0;
};

}  // namespace qfb

#endif
