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

#ifndef QFB_EXECUTE_HPP
#define QFB_EXECUTE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qfb/config.hpp"
#include "qfb/feedback_chain.hpp"

namespace qfb {

struct ExecuteResult {
    std::vector<std::string> files;  // names written under cfg.out, in write order
    std::vector<std::string> warnings;
    std::uint64_t renormalizations = 0;
};

/// Runs one configuration and writes its output files under cfg.out.
///
/// Files are staged as `<name>.tmp` and renamed once every file is ready; on
/// failure nothing new is left behind. Output bytes depend only on the
/// configuration, never on the thread count or the SIMD kernel in use.
ExecuteResult execute(const RunConfig &cfg);

/// The feedback law a configuration describes: the explicit delta0/delta1, or
/// the design for theta_target under cfg.design. Ts and Td are copied in.
FeedbackLaw resolve_law(const RunConfig &cfg, std::vector<std::string> *warnings = nullptr);

/// cfg.sweep_values, or the mode's default grid when empty: 0.1pi..0.9pi for
/// sweep-angle (rad), 0..1 in steps of 0.1 for sweep-filter/-delay (tau_m).
std::vector<double> sweep_grid(const RunConfig &cfg);

/// %.9g; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double value);

}  // namespace qfb

#endif
