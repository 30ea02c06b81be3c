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

#ifndef QFB_CONFIG_HPP
#define QFB_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qfb/model_params.hpp"
#include "qfb/trajectory.hpp"

namespace qfb {

inline constexpr const char *kVersion = "1.0.0";

enum class Mode { trajectory, ensemble, design_table, sweep_angle, sweep_filter, sweep_delay, histogram };

const char *mode_name(Mode mode);
std::optional<Mode> parse_mode(std::string_view name);

/// How theta_target is turned into (delta0, delta1).
enum class DesignRule { automatic, ideal, nonideal };

/// Everything one run needs. Times in us, rates in rad/us, angles in rad.
///
/// The feedback law is given either explicitly (delta0 and delta1) or through
/// theta_target, never both.
struct RunConfig {
    Mode mode = Mode::ensemble;
    ModelParams params;

    std::optional<double> theta_target;
    std::optional<double> delta0;
    std::optional<double> delta1;
    DesignRule design = DesignRule::automatic;
    double Ts = 0.0;
    double Td = 0.0;

    std::optional<double> theta_initial;  // unset: start at the law's stationary state
    double R_initial = 1.0;

    double total_time = 2.0;
    std::uint64_t record_stride = 10;
    std::uint64_t n_traj = 1000;
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0: QFB_THREADS, else hardware concurrency; never affects results
    std::string out = "out";
    Backend backend = Backend::automatic;

    double burn_in = 10.0;          // tau_m units
    double sample_interval = 1.0;   // tau_m units
    std::uint64_t samples_per_trajectory = 1;
    std::size_t bins = 100;
    double lobe_threshold = 0.10;
    std::vector<double> sweep_values;  // rad for sweep-angle, tau_m units for sweep-filter/-delay
    std::size_t design_points = 181;

    bool operator==(const RunConfig &) const = default;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Every recognized key, in serialization order.
const std::vector<std::string> &config_keys();

/// Parses flat `key = value` text ('#' starts a comment), then applies
/// `overrides` in order, then validates. Angles accept `0.3pi`, `pi/10`
/// style values; T1 and T2 accept `inf`. Errors throw std::invalid_argument
/// with a message that starts with the offending key.
RunConfig parse_config(const std::string &text, const KeyValues &overrides = {});

/// Reads a file and calls parse_config.
RunConfig load_config(const std::string &path, const KeyValues &overrides = {});

/// Range and consistency checks; returns warnings.
std::vector<std::string> validate(const RunConfig &cfg);

/// Canonical text form; parse_config(serialize(c)) == c.
std::string serialize(const RunConfig &cfg);

/// Canonical key/value pairs behind serialize().
KeyValues to_key_values(const RunConfig &cfg);

/// Parses an angle: plain radians, `<x>pi`, `pi`, `pi/<x>` or `<x>pi/<y>`.
double parse_angle(const std::string &text);

}  // namespace qfb

#endif
