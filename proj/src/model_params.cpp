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

#include "qfb/model_params.hpp"

#include <cmath>
#include <stdexcept>

namespace qfb {

namespace {

void require(bool ok, const std::string &field, const std::string &what) {
    if (!ok) {
        throw std::invalid_argument(field + ": " + what);
    }
}

bool positive_time(double t) { return t > 0.0 && !std::isnan(t); }

}  // namespace

std::vector<std::string> ModelParams::validate() const {
    require(std::isfinite(tau_m) && tau_m > 0.0, "tau_m", "must be finite and > 0");
    require(std::isfinite(dt) && dt > 0.0, "dt", "must be finite and > 0");
    require(positive_time(T1), "T1", "must be > 0 (inf allowed)");
    require(positive_time(T2), "T2", "must be > 0 (inf allowed)");
    require(eta > 0.0 && eta <= 1.0, "eta", "must lie in (0, 1]");
    require(dt <= 0.5 * tau_m, "dt", "must not exceed tau_m/2");

    std::vector<std::string> warnings;
    if (dt > 0.1 * tau_m) {
        warnings.push_back("dt: exceeds tau_m/10; step-splitting error is no longer small");
    }
    return warnings;
}

}  // namespace qfb
