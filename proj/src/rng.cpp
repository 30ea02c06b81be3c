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

#include "qfb/rng.hpp"

#include "qfb/kernels.hpp"

namespace qfb {

void fill_normals(std::uint64_t seed, std::uint64_t trajectory, std::uint64_t first_step, std::span<double> out) {
    kernel_table(active_isa()).fill_normals(seed, trajectory, first_step, out.data(), out.size());
}

double NormalStream::next() {
    if (!filled_ || step_ >= block_start_ + kBlock) {
        block_start_ = step_;
        fill_normals(seed_, trajectory_, block_start_, buffer_);
        filled_ = true;
    }
    return buffer_[step_++ - block_start_];
}

}  // namespace qfb
