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

#ifndef QFB_FEEDBACK_CHAIN_HPP
#define QFB_FEEDBACK_CHAIN_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "qfb/model_params.hpp"

namespace qfb {

/// Linear feedback controller: the Rabi rate applied during a step is
/// delta0 + delta1 * r, where r is the readout after low-pass filtering
/// (time constant Ts) and delay (Td). Rates in rad/us, times in us.
struct FeedbackLaw {
    double delta0 = 0.0;
    double delta1 = 0.0;
    double Ts = 0.0;  // 0 means infinite bandwidth
    double Td = 0.0;

    /// round(Td / dt).
    std::size_t delay_steps(double dt) const;

    /// 1 - exp(-dt/Ts), or 1 for a passthrough filter.
    double filter_gain(double dt) const;

    /// Throws std::invalid_argument on negative or non-finite fields; warns
    /// when delta1 approaches 1/(5 sqrt(dt tau_m)), where a 5-sigma readout
    /// rotates by a sizeable angle within one step.
    std::vector<std::string> validate(const ModelParams &params) const;

    bool operator==(const FeedbackLaw &) const = default;
};

/// Signal path between detector and controller: a single-pole low-pass
/// filter followed by a fixed-length delay line. One instance per trajectory.
class FeedbackChain {
   public:
    FeedbackChain(const FeedbackLaw &law, const ModelParams &params);

    /// Pushes a raw readout through the filter and returns the filtered value.
    double filter_push(double readout);

    /// Pushes a filtered value into the delay line and returns the value pushed
    /// delay_steps() calls ago, or 0 while the line is still filling.
    double delay_pop_push(double filtered);

    /// filter_push followed by delay_pop_push.
    double push(double readout) { return delay_pop_push(filter_push(readout)); }

    void reset();

    double filtered() const { return filter_acc_; }
    std::size_t delay_steps() const { return ring_.size(); }
    std::size_t fill_count() const { return fill_count_; }

   private:
    double gain_;
    bool passthrough_;
    double filter_acc_ = 0.0;
    std::vector<double> ring_;
    std::size_t head_ = 0;
    std::size_t fill_count_ = 0;
};

}  // namespace qfb

#endif
