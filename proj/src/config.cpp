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

#include "qfb/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qfb/design.hpp"

namespace qfb {

const char *mode_name(Mode mode) {
    switch (mode) {
        case Mode::trajectory:
            return "trajectory";
        case Mode::ensemble:
            return "ensemble";
        case Mode::design_table:
            return "design-table";
        case Mode::sweep_angle:
            return "sweep-angle";
        case Mode::sweep_filter:
            return "sweep-filter";
        case Mode::sweep_delay:
            return "sweep-delay";
        case Mode::histogram:
            return "histogram";
    }
    return "unknown";
}

std::optional<Mode> parse_mode(std::string_view name) {
    for (Mode m : {Mode::trajectory, Mode::ensemble, Mode::design_table, Mode::sweep_angle, Mode::sweep_filter,
                   Mode::sweep_delay, Mode::histogram}) {
        if (name == mode_name(m)) {
            return m;
        }
    }
    return std::nullopt;
}

namespace {

const char *design_name(DesignRule rule) {
    switch (rule) {
        case DesignRule::automatic:
            return "auto";
        case DesignRule::ideal:
            return "ideal";
        case DesignRule::nonideal:
            return "nonideal";
    }
    return "unknown";
}

[[noreturn]] void fail(const std::string &key, const std::string &message) {
    throw std::invalid_argument(key + ": " + message);
}

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string normalize_key(std::string key) {
    for (char &c : key) {
        if (c == '-') {
            c = '_';
        }
    }
    return key;
}

bool strict_double(const std::string &text, double &out) {
    const std::string t = trim(text);
    if (t.empty()) {
        return false;
    }
    if (t == "inf" || t == "+inf" || t == "infinity") {
        out = kInfinity;
        return true;
    }
    char *end = nullptr;
    errno = 0;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size() && errno == 0 && !std::isnan(out);
}

double parse_number(const std::string &key, const std::string &text) {
    double v;
    if (!strict_double(text, v)) {
        fail(key, "expected a number, got '" + text + "'");
    }
    return v;
}

std::uint64_t parse_count(const std::string &key, const std::string &text) {
    const std::string t = trim(text);
    if (!t.empty() && t.find_first_not_of("0123456789") == std::string::npos) {
        errno = 0;
        const unsigned long long v = std::strtoull(t.c_str(), nullptr, 10);
        if (errno == 0) {
            return v;
        }
    }
    double v;
    if (!strict_double(t, v) || v < 0 || v != std::floor(v) || v > 9007199254740992.0) {
        fail(key, "expected a non-negative integer, got '" + text + "'");
    }
    return static_cast<std::uint64_t>(v);
}

std::string format_double(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void apply(RunConfig &cfg, const std::string &raw_key, const std::string &value) {
    const std::string key = normalize_key(trim(raw_key));
    const std::string v = trim(value);
    auto angle = [&]() {
        try {
            return parse_angle(v);
        } catch (const std::invalid_argument &) {
            fail(key, "expected an angle (radians or e.g. 0.3pi), got '" + v + "'");
        }
    };
    if (key == "mode") {
        const auto m = parse_mode(v);
        if (!m) {
            fail(key, "unknown mode '" + v + "'");
        }
        cfg.mode = *m;
    } else if (key == "tau_m") {
        cfg.params.tau_m = parse_number(key, v);
    } else if (key == "dt") {
        cfg.params.dt = parse_number(key, v);
    } else if (key == "T1") {
        cfg.params.T1 = parse_number(key, v);
    } else if (key == "T2") {
        cfg.params.T2 = parse_number(key, v);
    } else if (key == "eta") {
        cfg.params.eta = parse_number(key, v);
    } else if (key == "theta_target") {
        cfg.theta_target = angle();
    } else if (key == "delta0") {
        cfg.delta0 = parse_number(key, v);
    } else if (key == "delta1") {
        cfg.delta1 = parse_number(key, v);
    } else if (key == "design") {
        if (v == "auto") {
            cfg.design = DesignRule::automatic;
        } else if (v == "ideal") {
            cfg.design = DesignRule::ideal;
        } else if (v == "nonideal") {
            cfg.design = DesignRule::nonideal;
        } else {
            fail(key, "expected auto, ideal or nonideal, got '" + v + "'");
        }
    } else if (key == "Ts") {
        cfg.Ts = parse_number(key, v);
    } else if (key == "Td") {
        cfg.Td = parse_number(key, v);
    } else if (key == "theta_initial") {
        cfg.theta_initial = angle();
    } else if (key == "R_initial") {
        cfg.R_initial = parse_number(key, v);
    } else if (key == "total_time") {
        cfg.total_time = parse_number(key, v);
    } else if (key == "record_stride") {
        cfg.record_stride = parse_count(key, v);
    } else if (key == "n_traj") {
        cfg.n_traj = parse_count(key, v);
    } else if (key == "seed") {
        cfg.seed = parse_count(key, v);
    } else if (key == "threads") {
        cfg.threads = static_cast<unsigned>(parse_count(key, v));
    } else if (key == "out") {
        if (v.empty()) {
            fail(key, "must not be empty");
        }
        cfg.out = v;
    } else if (key == "backend") {
        const auto b = parse_backend(v);
        if (!b) {
            fail(key, "expected auto, reference, portable, avx2 or neon, got '" + v + "'");
        }
        cfg.backend = *b;
    } else if (key == "burn_in") {
        cfg.burn_in = parse_number(key, v);
    } else if (key == "sample_interval") {
        cfg.sample_interval = parse_number(key, v);
    } else if (key == "samples_per_trajectory") {
        cfg.samples_per_trajectory = parse_count(key, v);
    } else if (key == "bins") {
        cfg.bins = parse_count(key, v);
    } else if (key == "lobe_threshold") {
        cfg.lobe_threshold = parse_number(key, v);
    } else if (key == "sweep_values") {
        cfg.sweep_values.clear();
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ',')) {
            cfg.sweep_values.push_back([&] {
                try {
                    return parse_angle(trim(item));
                } catch (const std::invalid_argument &) {
                    fail(key, "bad list entry '" + trim(item) + "'");
                }
            }());
        }
        if (cfg.sweep_values.empty()) {
            fail(key, "empty list");
        }
    } else if (key == "design_points") {
        cfg.design_points = parse_count(key, v);
    } else {
        fail(key.empty() ? std::string("<empty>") : key, "unknown key");
    }
}

}  // namespace

const std::vector<std::string> &config_keys() {
    static const std::vector<std::string> keys = {
        "mode",          "tau_m",     "dt",          "T1",      "T2",      "eta",
        "theta_target",  "delta0",    "delta1",      "design",  "Ts",      "Td",
        "theta_initial", "R_initial", "total_time",  "record_stride",      "n_traj",
        "seed",          "threads",   "out",         "backend", "burn_in", "sample_interval",
        "samples_per_trajectory",     "bins",        "lobe_threshold",     "sweep_values",
        "design_points"};
    return keys;
}

double parse_angle(const std::string &text) {
    std::string t = trim(text);
    auto bad = [&]() -> double { throw std::invalid_argument("bad angle '" + text + "'"); };
    double divisor = 1.0;
    const auto slash = t.find('/');
    if (slash != std::string::npos) {
        if (!strict_double(t.substr(slash + 1), divisor) || divisor == 0.0 || std::isinf(divisor)) {
            return bad();
        }
        t = trim(t.substr(0, slash));
    }
    double scale = 1.0;
    if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
        scale = kPi;
        t = trim(t.substr(0, t.size() - 2));
        if (!t.empty() && t.back() == '*') {
            t.pop_back();
        }
        if (t.empty() || t == "+") {
            t = "1";
        } else if (t == "-") {
            t = "-1";
        }
    } else if (slash != std::string::npos) {
        return bad();
    }
    double v;
    if (!strict_double(t, v) || std::isinf(v)) {
        return bad();
    }
    return v * scale / divisor;
}

std::vector<std::string> validate(const RunConfig &cfg) {
    std::vector<std::string> warnings = cfg.params.validate();
    if (!(cfg.total_time > 0.0) || std::isinf(cfg.total_time)) {
        fail("total_time", "must be finite and > 0");
    }
    if (cfg.record_stride < 1) {
        fail("record_stride", "must be >= 1");
    }
    if (cfg.n_traj < 1) {
        fail("n_traj", "must be >= 1");
    }
    if (!(cfg.burn_in >= 0.0) || std::isinf(cfg.burn_in)) {
        fail("burn_in", "must be finite and >= 0");
    }
    if (!(cfg.sample_interval > 0.0) || std::isinf(cfg.sample_interval)) {
        fail("sample_interval", "must be finite and > 0");
    }
    if (cfg.samples_per_trajectory < 1) {
        fail("samples_per_trajectory", "must be >= 1");
    }
    if (cfg.bins < 1 || cfg.bins > 10000) {
        fail("bins", "must be in [1, 10000]");
    }
    if (!(cfg.lobe_threshold > 0.0 && cfg.lobe_threshold <= 1.0)) {
        fail("lobe_threshold", "must be in (0, 1]");
    }
    if (cfg.design_points < 2) {
        fail("design_points", "must be >= 2");
    }
    if (!(cfg.R_initial >= 0.0 && cfg.R_initial <= 1.0)) {
        fail("R_initial", "must be in [0, 1]");
    }
    if (cfg.delta0.has_value() != cfg.delta1.has_value()) {
        fail(cfg.delta0 ? "delta1" : "delta0", "delta0 and delta1 must be given together");
    }
    FeedbackLaw chain{cfg.delta0.value_or(0.0), cfg.delta1.value_or(0.0), cfg.Ts, cfg.Td};
    for (auto &w : chain.validate(cfg.params)) {
        warnings.push_back(std::move(w));
    }
    const bool explicit_law = cfg.delta0.has_value();
    if (explicit_law && cfg.theta_target) {
        fail("theta_target", "give either theta_target or delta0/delta1, not both");
    }
    switch (cfg.mode) {
        case Mode::trajectory:
        case Mode::ensemble:
        case Mode::histogram:
            if (!explicit_law && !cfg.theta_target) {
                fail("theta_target", std::string("required by mode ") + mode_name(cfg.mode) +
                                         " (or give delta0 and delta1)");
            }
            break;
        case Mode::sweep_filter:
        case Mode::sweep_delay:
            if (!cfg.theta_target) {
                fail("theta_target", std::string("required by mode ") + mode_name(cfg.mode));
            }
            break;
        case Mode::sweep_angle:
            if (explicit_law) {
                fail("delta0", "sweep-angle designs its own law; remove delta0/delta1");
            }
            break;
        case Mode::design_table:
            break;
    }
    if ((cfg.mode == Mode::sweep_filter || cfg.mode == Mode::sweep_delay)) {
        for (double v : cfg.sweep_values) {
            if (!(v >= 0.0) || std::isinf(v)) {
                fail("sweep_values", "filter/delay values must be finite and >= 0");
            }
        }
    }
    return warnings;
}

KeyValues to_key_values(const RunConfig &cfg) {
    KeyValues kv;
    kv.emplace_back("mode", mode_name(cfg.mode));
    kv.emplace_back("tau_m", format_double(cfg.params.tau_m));
    kv.emplace_back("dt", format_double(cfg.params.dt));
    kv.emplace_back("T1", format_double(cfg.params.T1));
    kv.emplace_back("T2", format_double(cfg.params.T2));
    kv.emplace_back("eta", format_double(cfg.params.eta));
    if (cfg.theta_target) {
        kv.emplace_back("theta_target", format_double(*cfg.theta_target));
    }
    if (cfg.delta0) {
        kv.emplace_back("delta0", format_double(*cfg.delta0));
    }
    if (cfg.delta1) {
        kv.emplace_back("delta1", format_double(*cfg.delta1));
    }
    kv.emplace_back("design", design_name(cfg.design));
    kv.emplace_back("Ts", format_double(cfg.Ts));
    kv.emplace_back("Td", format_double(cfg.Td));
    if (cfg.theta_initial) {
        kv.emplace_back("theta_initial", format_double(*cfg.theta_initial));
    }
    kv.emplace_back("R_initial", format_double(cfg.R_initial));
    kv.emplace_back("total_time", format_double(cfg.total_time));
    kv.emplace_back("record_stride", std::to_string(cfg.record_stride));
    kv.emplace_back("n_traj", std::to_string(cfg.n_traj));
    kv.emplace_back("seed", std::to_string(cfg.seed));
    kv.emplace_back("threads", std::to_string(cfg.threads));
    kv.emplace_back("out", cfg.out);
    kv.emplace_back("backend", backend_name(cfg.backend));
    kv.emplace_back("burn_in", format_double(cfg.burn_in));
    kv.emplace_back("sample_interval", format_double(cfg.sample_interval));
    kv.emplace_back("samples_per_trajectory", std::to_string(cfg.samples_per_trajectory));
    kv.emplace_back("bins", std::to_string(cfg.bins));
    kv.emplace_back("lobe_threshold", format_double(cfg.lobe_threshold));
    if (!cfg.sweep_values.empty()) {
        std::string list;
        for (double v : cfg.sweep_values) {
            list += (list.empty() ? "" : ",") + format_double(v);
        }
        kv.emplace_back("sweep_values", list);
    }
    kv.emplace_back("design_points", std::to_string(cfg.design_points));
    return kv;
}

std::string serialize(const RunConfig &cfg) {
    std::string out;
    for (const auto &[k, v] : to_key_values(cfg)) {
        out += k + " = " + v + "\n";
    }
    return out;
}

RunConfig parse_config(const std::string &text, const KeyValues &overrides) {
    RunConfig cfg;
    std::map<std::string, int> seen;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            fail(trim(line), "line " + std::to_string(line_no) + " is not key = value");
        }
        const std::string key = normalize_key(trim(line.substr(0, eq)));
        if (seen.count(key)) {
            fail(key, "duplicate key on line " + std::to_string(line_no));
        }
        seen[key] = line_no;
        apply(cfg, key, line.substr(eq + 1));
    }
    for (const auto &[k, v] : overrides) {
        apply(cfg, k, v);
    }
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::string &path, const KeyValues &overrides) {
    std::ifstream f(path);
    if (!f) {
        throw std::invalid_argument("config: cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), overrides);
}

}  // namespace qfb
