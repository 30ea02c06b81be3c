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

#include "qfb/feedback_chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qfb {

std::size_t FeedbackLaw::delay_steps(double dt) const {
    return static_cast<std::size_t>(std::llround(Td / dt));
}

double FeedbackLaw::filter_gain(double dt) const {
    if (Ts == 0.0) {
        return 1.0;
    }
    return -std::expm1(-dt / Ts);
}

std::vector<std::string> FeedbackLaw::validate(const ModelParams &params) const {
    if (!std::isfinite(delta0)) {
        throw std::invalid_argument("delta0: must be finite");
    }
    if (!std::isfinite(delta1)) {
        throw std::invalid_argument("delta1: must be finite");
    }
    if (!(std::isfinite(Ts) && Ts >= 0.0)) {
        throw std::invalid_argument("Ts: must be finite and >= 0");
    }
    if (!(std::isfinite(Td) && Td >= 0.0)) {
        throw std::invalid_argument("Td: must be finite and >= 0");
    }

    std::vector<std::string> warnings;
    const double bound = 1.0 / (5.0 * std::sqrt(params.dt * params.tau_m));
    if (std::abs(delta1) >= bound) {
        warnings.push_back("delta1: |delta1| >= 1/(5 sqrt(dt tau_m)); reduce dt");
    }
    const double steps = Td / params.dt;
    if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps)) {
        warnings.push_back("Td: not a whole number of steps; rounded to nearest");
    }
    return warnings;
}

FeedbackChain::FeedbackChain(const FeedbackLaw &law, const ModelParams &params)
    : gain_(law.filter_gain(params.dt)), passthrough_(law.Ts == 0.0), ring_(law.delay_steps(params.dt), 0.0) {
}

double FeedbackChain::filter_push(double readout) {
    if (passthrough_) {
        filter_acc_ = readout;
    } else {
        filter_acc_ += gain_ * (readout - filter_acc_);
    }
    return filter_acc_;
}

double FeedbackChain::delay_pop_push(double filtered) {
    if (ring_.empty()) {
        ++fill_count_;
        return filtered;
    }
    const double out = fill_count_ >= ring_.size() ? ring_[head_] : 0.0;
    ring_[head_] = filtered;
    head_ = head_ + 1 == ring_.size() ? 0 : head_ + 1;
    ++fill_count_;
    return out;
}

void FeedbackChain::reset() {
    filter_acc_ = 0.0;
    std::fill(ring_.begin(), ring_.end(), 0.0);
    head_ = 0;
    fill_count_ = 0;
}

}  // namespace qfb
