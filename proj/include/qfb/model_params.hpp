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

#ifndef QFB_MODEL_PARAMS_HPP
#define QFB_MODEL_PARAMS_HPP

#include <limits>
#include <string>
#include <vector>

namespace qfb {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Physical and discretization constants. Times in microseconds.
///
/// T1 and T2 may be +infinity (no decay / no extra dephasing). The defaults are
/// the transmon parameter set used for the nonideal examples.
struct ModelParams {
    double tau_m = 0.2;   // measurement collapse time
    double dt = 0.0005;   // simulation step
    double T1 = 60.0;
    double T2 = 40.0;
    double eta = 0.41;    // quantum efficiency, (0, 1]

    /// No decay, no dephasing, perfect detection.
    static ModelParams ideal(double tau_m, double dt) { return {tau_m, dt, kInfinity, kInfinity, 1.0}; }

    /// Residual measurement dephasing from lost signal, (1 - eta) / (2 tau_m eta).
    double gamma_inefficiency() const { return (1.0 - eta) / (2.0 * tau_m * eta); }
    /// Total ensemble z-dephasing rate without feedback, 1/2T1 + 1/T2 + 1/(2 tau_m eta).
    double gamma_total() const { return 0.5 / T1 + 1.0 / T2 + 1.0 / (2.0 * tau_m * eta); }
    /// Dephasing rate of the density-operator form, 1/T2 + 1/(2 tau_m eta).
    double gamma_prime() const { return 1.0 / T2 + 1.0 / (2.0 * tau_m * eta); }

    bool is_ideal() const { return eta == 1.0 && T1 == kInfinity && T2 == kInfinity; }

    /// Throws std::invalid_argument naming the offending field; returns warnings.
    ///
    /// dt above tau_m/2 is rejected; dt above tau_m/10 only warns, since the
    /// splitting error of the step is then no longer negligible.
    std::vector<std::string> validate() const;

    bool operator==(const ModelParams &) const = default;
};

}  // namespace qfb

#endif
