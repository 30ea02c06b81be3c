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

#include "qfb/execute.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "qfb/design.hpp"
#include "qfb/mean_ode.hpp"
#include "qfb/sweep.hpp"
#include "qfb/trajectory.hpp"

namespace qfb {

using Json = nlohmann::ordered_json;

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", value + 0.0);  // no "-0"
    return buf;
}

namespace {

// JSON has no inf/nan; those become null. Finite values are rounded to 9
// significant digits so the emitter's shortest round-trip form never prints more.
Json num(double value) {
    if (!std::isfinite(value)) {
        return nullptr;
    }
    return std::strtod(format_number(value).c_str(), nullptr);
}

Json state_json(const BlochState &s) {
    return Json{{"x", num(s.x)}, {"y", num(s.y)}, {"z", num(s.z)}};
}

Json law_json(const FeedbackLaw &law) {
    return Json{{"delta0", num(law.delta0)}, {"delta1", num(law.delta1)}, {"Ts", num(law.Ts)}, {"Td", num(law.Td)}};
}

std::string csv_row(std::initializer_list<double> values) {
    std::string line;
    for (double v : values) {
        if (!line.empty()) {
            line += ',';
        }
        line += format_number(v);
    }
    line += '\n';
    return line;
}

bool use_ideal_rule(const RunConfig &cfg) {
    switch (cfg.design) {
        case DesignRule::ideal:
            return true;
        case DesignRule::nonideal:
            return false;
        case DesignRule::automatic:
            break;
    }
    return cfg.params.is_ideal();
}

FeedbackLaw design_law(double theta, const RunConfig &cfg, std::vector<std::string> *warnings) {
    FeedbackLaw law = use_ideal_rule(cfg) ? design_ideal(theta, cfg.params.tau_m, warnings)
                                          : design_nonideal(theta, cfg.params).law;
    law.Ts = cfg.Ts;
    law.Td = cfg.Td;
    return law;
}

SteadyStateOptions steady_options(const RunConfig &cfg) {
    SteadyStateOptions o;
    o.n_traj = cfg.n_traj;
    o.burn_in_taus = cfg.burn_in;
    o.sample_interval_taus = cfg.sample_interval;
    o.samples_per_trajectory = cfg.samples_per_trajectory;
    o.bins = cfg.bins;
    o.seed = cfg.seed;
    o.threads = cfg.threads;
    o.backend = cfg.backend;
    o.peak.lobe_threshold = cfg.lobe_threshold;
    return o;
}

BlochState initial_state(const RunConfig &cfg, const FeedbackLaw &law) {
    if (cfg.theta_initial) {
        return BlochState::from_polar(*cfg.theta_initial, cfg.R_initial);
    }
    FeedbackLaw markovian = law;
    markovian.Ts = 0.0;
    markovian.Td = 0.0;
    return stationary_state(markovian, cfg.params).state;
}

Json peak_json(const SteadyStateResult &r) {
    const PeakReport &p = r.peak;
    Json lobes = Json::array();
    for (const Lobe &l : p.lobes) {
        lobes.push_back(Json{{"y", num(l.y)},
                             {"z", num(l.z)},
                             {"theta", num(l.theta)},
                             {"theta_over_pi", num(l.theta / kPi)},
                             {"R", num(l.radius)},
                             {"mass", num(l.mass)},
                             {"n_bins", l.n_bins},
                             {"peak_bin", Json::array({l.peak.iy, l.peak.iz})}});
    }
    Json ties = Json::array();
    for (const Bin &b : p.ties) {
        ties.push_back(Json::array({b.iy, b.iz}));
    }
    return Json{{"theta_P", num(p.theta_P)},
                {"theta_P_over_pi", num(p.theta_P / kPi)},
                {"R_P", num(p.R_P)},
                {"y_P", num(p.y_P)},
                {"z_P", num(p.z_P)},
                {"sigma", num(p.sigma)},
                {"rms_distance", num(p.rms_distance)},
                {"peak_bin", Json::array({p.peak.iy, p.peak.iz})},
                {"peak_count", p.peak_count},
                {"tied", p.tied()},
                {"ties", ties},
                {"n_lobes", p.lobes.size()},
                {"lobes", lobes},
                {"theta_E", num(r.theta_E)},
                {"theta_E_over_pi", num(r.theta_E / kPi)},
                {"R_E", num(r.R_E)},
                {"y_E", num(r.y_E)},
                {"z_E", num(r.z_E)},
                {"n_samples", r.histogram.n_samples()},
                {"renormalizations", r.renormalizations}};
}

std::string hist_csv(const HistogramGrid &g) {
    std::string out = "y_bin,z_bin,count\n";
    for (std::size_t iy = 0; iy < g.bins(); ++iy) {
        for (std::size_t iz = 0; iz < g.bins(); ++iz) {
            const std::uint64_t c = g.count(iy, iz);
            if (c != 0) {
                out += format_number(g.center(iy)) + ',' + format_number(g.center(iz)) + ',' + std::to_string(c) + '\n';
            }
        }
    }
    return out;
}

std::string series_csv(const std::vector<double> &times, const std::vector<BlochState> &states) {
    std::string out = "t,x,y,z\n";
    for (std::size_t k = 0; k < times.size(); ++k) {
        out += csv_row({times[k], states[k].x, states[k].y, states[k].z});
    }
    return out;
}

using Staged = std::vector<std::pair<std::string, std::string>>;

struct Run {
    Staged files;
    Json extra = Json::object();  // merged into run_meta.json
    std::uint64_t renormalizations = 0;
};

TrajectoryConfig trajectory_config(const RunConfig &cfg, const BlochState &initial) {
    TrajectoryConfig t;
    t.initial = initial;
    t.total_time = cfg.total_time;
    t.record_stride = cfg.record_stride;
    t.seed = cfg.seed;
    return t;
}

Run run_single(const RunConfig &cfg, std::vector<std::string> &warnings) {
    Run run;
    const FeedbackLaw law = resolve_law(cfg, &warnings);
    const BlochState initial = initial_state(cfg, law);
    run.extra["law"] = law_json(law);
    run.extra["initial"] = state_json(initial);
    const TrajectoryConfig tc = trajectory_config(cfg, initial);

    if (cfg.mode == Mode::trajectory) {
        const TrajectoryRecord rec = run_trajectory(tc, cfg.params, law, cfg.backend, 0);
        run.files.emplace_back("mean.csv", series_csv(rec.times, rec.states));
        run.renormalizations = rec.renormalizations;
        return run;
    }

    EnsembleOptions eo;
    eo.n_traj = cfg.n_traj;
    eo.threads = cfg.threads;
    eo.backend = cfg.backend;
    const EnsembleResult ens = run_ensemble(tc, cfg.params, law, eo);
    run.files.emplace_back("mean.csv", series_csv(ens.mean.times(), ens.mean.means()));
    run.renormalizations = ens.renormalizations;
    if (law.Ts == 0.0 && law.Td == 0.0) {
        const MeanOdeSeries ode = integrate_mean_ode(initial, law, cfg.params, cfg.total_time, cfg.params.dt,
                                                     cfg.record_stride);
        run.files.emplace_back("ode.csv", series_csv(ode.times, ode.states));
    }
    return run;
}

Run run_histogram(const RunConfig &cfg, std::vector<std::string> &warnings) {
    Run run;
    const FeedbackLaw law = resolve_law(cfg, &warnings);
    std::optional<BlochState> initial;
    if (cfg.theta_initial) {
        initial = initial_state(cfg, law);
    }
    const SteadyStateResult r = run_steady_state(law, cfg.params, steady_options(cfg), initial);
    if (r.peak.tied()) {
        warnings.push_back("histogram: " + std::to_string(r.peak.ties.size()) + " bins share the maximal count");
    }
    run.extra["law"] = law_json(law);
    run.extra["initial"] = state_json(r.initial);
    Json peaks = Json::object();
    if (cfg.theta_target) {
        peaks["theta_target"] = num(*cfg.theta_target);
    }
    peaks.update(peak_json(r));
    run.files.emplace_back("hist.csv", hist_csv(r.histogram));
    run.files.emplace_back("peaks.json", peaks.dump(2) + "\n");
    run.renormalizations = r.renormalizations;
    return run;
}

Run run_sweep(const RunConfig &cfg, std::vector<std::string> &warnings) {
    const std::vector<double> grid = sweep_grid(cfg);
    const SteadyStateOptions opts = steady_options(cfg);
    std::vector<SweepRow> rows;
    const char *value_name = "theta_s";
    if (cfg.mode == Mode::sweep_angle) {
        rows = sweep_targets(grid, cfg.params, [&](double theta) { return design_law(theta, cfg, &warnings); }, opts);
    } else {
        std::vector<double> us;
        for (double v : grid) {
            us.push_back(v * cfg.params.tau_m);
        }
        const ChainKnob knob = cfg.mode == Mode::sweep_filter ? ChainKnob::filter : ChainKnob::delay;
        value_name = knob == ChainKnob::filter ? "Ts" : "Td";
        rows = sweep_chain(*cfg.theta_target, knob, us, cfg.params, opts);
    }

    Run run;
    const bool chain = cfg.mode != Mode::sweep_angle;
    std::string csv = std::string("theta_s,") + (chain ? value_name + std::string(",") : "") +
                      "R_design,theta_P,R_P,sigma,rms_distance,n_lobes,theta_E,R_E,y_E,z_E,renormalizations\n";
    Json table = Json::array();
    for (const SweepRow &row : rows) {
        const SteadyStateResult &r = row.result;
        csv += format_number(row.theta_s) + ',' + (chain ? format_number(row.value) + ',' : "") +
               format_number(row.R_design) + ',' +
               format_number(r.peak.theta_P) + ',' + format_number(r.peak.R_P) + ',' + format_number(r.peak.sigma) +
               ',' + format_number(r.peak.rms_distance) + ',' + std::to_string(r.peak.lobes.size()) + ',' +
               format_number(r.theta_E) + ',' + format_number(r.R_E) + ',' + format_number(r.y_E) + ',' +
               format_number(r.z_E) + ',' + std::to_string(r.renormalizations) + '\n';
        Json entry{{"theta_s", num(row.theta_s)}};
        if (chain) {
            entry[value_name] = num(row.value);
        }
        entry["R_design"] = num(row.R_design);
        entry["law"] = law_json(r.law);
        entry.update(peak_json(r));
        table.push_back(std::move(entry));
        run.renormalizations += r.renormalizations;
        if (r.peak.tied()) {
            warnings.push_back("histogram: ties at " + std::string(value_name) + " = " + format_number(row.value));
        }
    }
    run.files.emplace_back("sweep.csv", csv);
    run.files.emplace_back("peaks.json", Json{{"rows", table}}.dump(2) + "\n");
    return run;
}

Run run_design_table(const RunConfig &cfg, std::vector<std::string> &warnings) {
    Run run;
    const bool ideal = use_ideal_rule(cfg);
    std::string csv = "theta,delta0,delta1,R_max\n";
    std::size_t rejected = 0;
    const std::size_t n = cfg.design_points;
    for (std::size_t k = 0; k < n; ++k) {
        const double theta = kPi * static_cast<double>(k) / static_cast<double>(n - 1);
        double d0 = std::nan(""), d1 = std::nan(""), r = std::nan("");
        try {
            if (ideal) {
                const FeedbackLaw law = design_ideal(theta, cfg.params.tau_m);
                d0 = law.delta0;
                d1 = law.delta1;
                r = 1.0;
            } else {
                const NonidealDesign d = design_nonideal(theta, cfg.params);
                d0 = d.law.delta0;
                d1 = d.law.delta1;
                r = d.R_s;
            }
        } catch (const std::invalid_argument &) {
            ++rejected;
            if (!ideal) {
                try {
                    r = max_radius(theta, cfg.params);
                } catch (const std::invalid_argument &) {
                }
            }
        }
        csv += csv_row({theta, d0, d1, r});
    }
    if (rejected != 0) {
        warnings.push_back("design: " + std::to_string(rejected) + " angles near the poles have no design (nan rows)");
    }
    run.extra["design"] = ideal ? "ideal" : "nonideal";
    run.files.emplace_back("design.csv", csv);
    return run;
}

void remove_quietly(const std::filesystem::path &p) {
    std::error_code ec;
    std::filesystem::remove(p, ec);
}

void write_all(const std::filesystem::path &dir, const Staged &files) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("out: cannot create " + dir.string() + ": " + ec.message());
    }
    std::vector<std::filesystem::path> temps;
    std::vector<std::filesystem::path> done;
    try {
        for (const auto &[name, content] : files) {
            const auto tmp = dir / (name + ".tmp");
            temps.push_back(tmp);
            std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
            f.write(content.data(), static_cast<std::streamsize>(content.size()));
            f.close();
            if (!f) {
                throw std::runtime_error("out: cannot write " + tmp.string());
            }
        }
        for (std::size_t k = 0; k < files.size(); ++k) {
            const auto final_path = dir / files[k].first;
            std::filesystem::rename(temps[k], final_path);
            done.push_back(final_path);
        }
    } catch (...) {
        for (const auto &p : temps) {
            remove_quietly(p);
        }
        for (const auto &p : done) {
            remove_quietly(p);
        }
        throw;
    }
}

}  // namespace

std::vector<double> sweep_grid(const RunConfig &cfg) {
    if (!cfg.sweep_values.empty()) {
        return cfg.sweep_values;
    }
    std::vector<double> grid;
    if (cfg.mode == Mode::sweep_angle) {
        for (int k = 1; k <= 9; ++k) {
            grid.push_back(kPi * k / 10.0);
        }
    } else {
        for (int k = 0; k <= 10; ++k) {
            grid.push_back(k / 10.0);
        }
    }
    return grid;
}

FeedbackLaw resolve_law(const RunConfig &cfg, std::vector<std::string> *warnings) {
    if (cfg.delta0 && cfg.delta1) {
        return FeedbackLaw{*cfg.delta0, *cfg.delta1, cfg.Ts, cfg.Td};
    }
    if (!cfg.theta_target) {
        throw std::invalid_argument("theta_target: required to design a feedback law");
    }
    return design_law(*cfg.theta_target, cfg, warnings);
}

ExecuteResult execute(const RunConfig &cfg) {
    ExecuteResult result;
    result.warnings = validate(cfg);

    Run run;
    switch (cfg.mode) {
        case Mode::trajectory:
        case Mode::ensemble:
            run = run_single(cfg, result.warnings);
            break;
        case Mode::histogram:
            run = run_histogram(cfg, result.warnings);
            break;
        case Mode::sweep_angle:
        case Mode::sweep_filter:
        case Mode::sweep_delay:
            run = run_sweep(cfg, result.warnings);
            break;
        case Mode::design_table:
            run = run_design_table(cfg, result.warnings);
            break;
    }
    result.renormalizations = run.renormalizations;

    // The thread count never changes results, so it stays out of the metadata
    // to keep the bytes identical across machines.
    Json config = Json::object();
    for (const auto &[key, value] : to_key_values(cfg)) {
        if (key != "threads") {
            config[key] = value;
        }
    }
    Json meta{{"version", kVersion},
              {"mode", mode_name(cfg.mode)},
              {"seed", cfg.seed},
              {"renormalizations", run.renormalizations},
              {"config", config}};
    meta.update(run.extra);
    meta["warnings"] = result.warnings;
    Json names = Json::array();
    for (const auto &f : run.files) {
        names.push_back(f.first);
    }
    meta["files"] = names;
    run.files.emplace_back("run_meta.json", meta.dump(2) + "\n");

    write_all(cfg.out, run.files);
    for (const auto &f : run.files) {
        result.files.push_back(f.first);
    }
    return result;
}

}  // namespace qfb
