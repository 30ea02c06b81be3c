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

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qfb/config.hpp"
#include "qfb/execute.hpp"

namespace {

struct Flag {
    const char *name;  // long flag without dashes
    const char *key;   // config key
    const char *help;
};

// Everything is taken as text and handed to the config parser, so flags and
// file keys accept the same syntax (0.3pi, 1e5, inf) and fail the same way.
constexpr Flag kFlags[] = {
    {"mode", "mode", "trajectory, ensemble, design-table, sweep-angle, sweep-filter, sweep-delay, histogram"},
    {"theta-target", "theta_target", "target polar angle, radians or 0.3pi syntax"},
    {"n-traj", "n_traj", "number of trajectories"},
    {"seed", "seed", "random seed"},
    {"out", "out", "output directory"},
    {"threads", "threads", "worker cap; results do not depend on it (env QFB_THREADS)"},
    {"tau-m", "tau_m", "measurement collapse time (us)"},
    {"dt", "dt", "time step (us)"},
    {"T1", "T1", "energy relaxation time (us), inf allowed"},
    {"T2", "T2", "environmental dephasing time (us), inf allowed"},
    {"eta", "eta", "quantum efficiency"},
    {"delta0", "delta0", "constant Rabi rate (rad/us)"},
    {"delta1", "delta1", "feedback gain (rad/us per unit readout)"},
    {"Ts", "Ts", "filter time constant (us)"},
    {"Td", "Td", "feedback delay (us)"},
    {"design", "design", "auto, ideal or nonideal"},
    {"theta-initial", "theta_initial", "initial polar angle; default is the stationary state"},
    {"total-time", "total_time", "simulated time (us)"},
    {"backend", "backend", "auto, reference, portable, avx2 or neon"},
};

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Continuous-measurement feedback simulator for a single qubit."};
    app.set_version_flag("--version", std::string(qfb::kVersion));

    std::string config_path;
    app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);

    std::vector<std::string> values(std::size(kFlags));
    for (std::size_t k = 0; k < std::size(kFlags); ++k) {
        app.add_option(std::string("--") + kFlags[k].name, values[k], kFlags[k].help);
    }
    std::vector<std::string> sets;
    app.add_option("--set", sets, "any config key as key=value; repeatable");
    bool print_config = false;
    app.add_flag("--print-config", print_config, "print the resolved configuration and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    qfb::KeyValues overrides;
    for (std::size_t k = 0; k < std::size(kFlags); ++k) {
        if (app.count(std::string("--") + kFlags[k].name) != 0) {
            overrides.emplace_back(kFlags[k].key, values[k]);
        }
    }
    for (const std::string &s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            std::cerr << "error: --set expects key=value, got '" << s << "'\n";
            return 2;
        }
        overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }

    qfb::RunConfig cfg;
    try {
        cfg = config_path.empty() ? qfb::parse_config("", overrides) : qfb::load_config(config_path, overrides);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (print_config) {
        std::cout << qfb::serialize(cfg);
        return 0;
    }

    try {
        const qfb::ExecuteResult r = qfb::execute(cfg);
        for (const auto &w : r.warnings) {
            std::cerr << "warning: " << w << "\n";
        }
        for (const auto &f : r.files) {
            std::cout << cfg.out << "/" << f << "\n";
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
