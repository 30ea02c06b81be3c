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

// Acceptance checks for the reference scenarios. Prints one PASS/FAIL line
// per criterion (with indented detail lines before it) and exits nonzero if
// any criterion fails. Scenarios are read from the shipped configs/figN.cfg.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "qfb/config.hpp"
#include "qfb/design.hpp"
#include "qfb/execute.hpp"
#include "qfb/mean_ode.hpp"
#include "qfb/model.hpp"
#include "qfb/sweep.hpp"
#include "qfb/trajectory.hpp"

namespace {

using namespace qfb;

struct Report {
    bool pass = true;
    std::vector<std::string> lines;

    void check(bool ok, const char *fmt, ...) __attribute__((format(printf, 3, 4))) {
        char buf[512];
        va_list args;
        va_start(args, fmt);
        std::vsnprintf(buf, sizeof buf, fmt, args);
        va_end(args);
        lines.push_back(std::string(ok ? "  ok   " : "  MISS ") + buf);
        pass = pass && ok;
    }
    void note(const char *fmt, ...) __attribute__((format(printf, 2, 3))) {
        char buf[512];
        va_list args;
        va_start(args, fmt);
        std::vsnprintf(buf, sizeof buf, fmt, args);
        va_end(args);
        lines.push_back(std::string("       ") + buf);
    }
};

bool within(double value, double target, double tol) { return std::abs(value - target) <= tol; }

RunConfig fig(int n, const KeyValues &overrides = {}) {
    return load_config(std::string(QFB_CONFIG_DIR) + "/fig" + std::to_string(n) + ".cfg", overrides);
}

SteadyStateOptions steady(const RunConfig &c) {
    SteadyStateOptions o;
    o.n_traj = c.n_traj;
    o.burn_in_taus = c.burn_in;
    o.sample_interval_taus = c.sample_interval;
    o.samples_per_trajectory = c.samples_per_trajectory;
    o.bins = c.bins;
    o.seed = c.seed;
    o.backend = c.backend;
    o.peak.lobe_threshold = c.lobe_threshold;
    return o;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Stabilization {
    EnsembleResult ensemble;
    MeanOdeSeries ode;
    FeedbackLaw law;
    double seconds;
};

Stabilization stabilize(const RunConfig &c) {
    Stabilization s;
    s.law = resolve_law(c);
    TrajectoryConfig tc;
    tc.initial = BlochState::from_polar(*c.theta_initial, c.R_initial);
    tc.total_time = c.total_time;
    tc.record_stride = c.record_stride;
    tc.seed = c.seed;
    EnsembleOptions eo;
    eo.n_traj = c.n_traj;
    eo.backend = c.backend;
    const auto t0 = std::chrono::steady_clock::now();
    s.ensemble = run_ensemble(tc, c.params, s.law, eo);
    s.seconds = seconds_since(t0);
    // ODE oracle at a tenth of the Monte Carlo step, sampled on the same grid.
    s.ode = integrate_mean_ode(tc.initial, s.law, c.params, c.total_time, c.params.dt / 10, c.record_stride * 10);
    return s;
}

// Largest |MC - ODE| per coordinate over all recorded times.
double ode_gap(const Stabilization &s) {
    double gap = 0;
    for (std::size_t i = 0; i < s.ensemble.mean.size(); ++i) {
        const BlochState m = s.ensemble.mean.mean(i);
        gap = std::max({gap, std::abs(m.x - s.ode.states[i].x), std::abs(m.y - s.ode.states[i].y),
                        std::abs(m.z - s.ode.states[i].z)});
    }
    return gap;
}

Report criterion1() {
    Report r;
    const RunConfig c = fig(3);
    const Stabilization s = stabilize(c);
    const double settle = 5 * c.params.tau_m;
    double worst = 0, worst_t = 0, worst_ode = 0;
    for (std::size_t i = 0; i < s.ensemble.mean.size(); ++i) {
        if (s.ensemble.mean.times()[i] >= settle - 1e-12) {
            const BlochState m = s.ensemble.mean.mean(i);
            const double dev = std::max(std::abs(m.y - 0.81), std::abs(m.z - 0.59));
            if (dev > worst) {
                worst = dev;
                worst_t = s.ensemble.mean.times()[i];
                worst_ode = std::max(std::abs(s.ode.states[i].y - 0.81), std::abs(s.ode.states[i].z - 0.59));
            }
        }
    }
    const BlochState end = s.ensemble.mean.mean(s.ensemble.mean.size() - 1);
    r.note("n_traj %llu, dt %g us, final mean (y, z) = (%.4f, %.4f)", static_cast<unsigned long long>(c.n_traj),
           c.params.dt, end.y, end.z);
    r.check(worst <= 0.02, "mean within 0.02 of (0.81, 0.59) for t >= 5 tau_m: worst %.4f at t = %.3f us (ODE %.4f)",
            worst, worst_t, worst_ode);
    const double gap = ode_gap(s);
    r.check(gap <= 0.02, "mean within 0.02 of the ODE oracle at every recorded time: worst %.4f", gap);
    r.check(s.seconds < 120, "ensemble runtime %.2f s (target < 120 s)", s.seconds);
    return r;
}

Report criterion2() {
    Report r;
    const RunConfig c = fig(4);
    const Stabilization s = stabilize(c);
    double y = 0, z = 0;
    int n = 0;
    for (std::size_t i = 0; i < s.ensemble.mean.size(); ++i) {
        if (s.ensemble.mean.times()[i] >= 5 * c.params.tau_m - 1e-12) {
            y += s.ensemble.mean.mean(i).y;
            z += s.ensemble.mean.mean(i).z;
            ++n;
        }
    }
    y /= n;
    z /= n;
    r.check(within(y, 0.52, 0.02) && within(z, 0.37, 0.02),
            "asymptotic mean (t >= 5 tau_m) (y, z) = (%.4f, %.4f), target (0.52, 0.37) +- 0.02", y, z);
    r.note("ODE oracle gap %.4f", ode_gap(s));
    ModelParams no_decay = c.params;
    no_decay.T1 = kInfinity;
    const double r_inf = max_radius(0.3 * kPi, no_decay);
    const double r_60 = max_radius(0.3 * kPi, c.params);
    r.check(within(r_inf, 0.64, 0.005), "R_max without T1 = %.5f (0.64 +- 0.005)", r_inf);
    r.check(within(r_60, 0.64, 0.005), "R_max at 0.3pi with T1 = 60 us = %.5f (0.64 +- 0.005)", r_60);
    return r;
}

void describe(Report &r, const char *label, const SteadyStateResult &s) {
    r.note("%s: theta_P %.4fpi, R_P %.4f, sigma %.4f (rms distance %.4f), %zu lobe(s), theta_E %.4fpi, R_E %.4f",
           label, s.peak.theta_P / kPi, s.peak.R_P, s.peak.sigma, s.peak.rms_distance, s.peak.lobes.size(),
           s.theta_E / kPi, s.R_E);
}

Report criterion3() {
    Report r;
    const RunConfig top = fig(6);
    const RunConfig bottom = fig(6, {{"theta_target", "0.1pi"}});
    const SteadyStateResult a = run_steady_state(resolve_law(top), top.params, steady(top));
    const SteadyStateResult b = run_steady_state(resolve_law(bottom), bottom.params, steady(bottom));
    describe(r, "0.3pi", a);
    describe(r, "0.1pi", b);
    r.check(a.peak.lobes.size() == 1, "0.3pi: single lobe (%zu)", a.peak.lobes.size());
    r.check(within(a.peak.theta_P, 0.3 * kPi, 0.05), "0.3pi: theta_P %.4f rad vs %.4f +- 0.05", a.peak.theta_P,
            0.3 * kPi);
    r.check(within(a.peak.R_P, 0.78, 0.05), "0.3pi: R_P %.4f vs 0.78 +- 0.05", a.peak.R_P);
    r.check(within(a.peak.sigma, 0.23, 0.05), "0.3pi: sigma %.4f vs 0.23 +- 0.05", a.peak.sigma);
    r.check(b.peak.lobes.size() == 2, "0.1pi: two lobes (%zu)", b.peak.lobes.size());
    r.check(within(b.peak.theta_P, 0.11 * kPi, 0.02 * kPi), "0.1pi: theta_P %.4fpi vs 0.11pi +- 0.02pi",
            b.peak.theta_P / kPi);
    r.check(within(b.peak.R_P, 0.96, 0.03), "0.1pi: R_P %.4f vs 0.96 +- 0.03", b.peak.R_P);
    r.check(within(b.peak.sigma, 0.54, 0.08), "0.1pi: sigma %.4f vs 0.54 +- 0.08", b.peak.sigma);
    return r;
}

Report criterion4() {
    Report r;
    const RunConfig filt = fig(7);
    const RunConfig del = fig(7, {{"Ts", "0"}, {"Td", "0.04"}});
    const SteadyStateResult a = run_steady_state(resolve_law(filt), filt.params, steady(filt));
    const SteadyStateResult b = run_steady_state(resolve_law(del), del.params, steady(del));
    describe(r, "Ts = 0.2 tau_m", a);
    describe(r, "Td = 0.2 tau_m", b);
    r.check(within(a.peak.R_P, 0.85, 0.05), "Ts: R_P %.4f vs 0.85 +- 0.05", a.peak.R_P);
    r.check(within(a.peak.theta_P, 0.23 * kPi, 0.02 * kPi), "Ts: theta_P %.4fpi vs 0.23pi +- 0.02pi",
            a.peak.theta_P / kPi);
    r.check(within(b.peak.R_P, 0.83, 0.05), "Td: R_P %.4f vs 0.83 +- 0.05", b.peak.R_P);
    r.check(within(b.peak.theta_P, 0.2 * kPi, 0.02 * kPi), "Td: theta_P %.4fpi vs 0.2pi +- 0.02pi",
            b.peak.theta_P / kPi);

    const RunConfig sweep = fig(2);
    const std::vector<double> filter_taus{0.0, 0.1, 0.2};
    std::vector<double> filter_us;
    for (double v : filter_taus) {
        filter_us.push_back(v * sweep.params.tau_m);
    }
    const auto frows = sweep_chain(*sweep.theta_target, ChainKnob::filter, filter_us, sweep.params, steady(sweep));
    double worst = 0;
    for (const auto &row : frows) {
        worst = std::max(worst, std::abs(row.result.R_E - frows[0].result.R_E));
        r.note("Ts = %.2f tau_m: R_E %.4f, theta_E %.4fpi", row.value / sweep.params.tau_m, row.result.R_E,
               row.result.theta_E / kPi);
    }
    r.check(worst <= 0.02, "R_E(Ts <= 0.2 tau_m) within 0.02 of R_E(0): worst %.4f", worst);

    const std::vector<double> grid = sweep_grid(sweep);
    std::vector<double> delay_us;
    for (double v : grid) {
        delay_us.push_back(v * sweep.params.tau_m);
    }
    const auto drows = sweep_chain(*sweep.theta_target, ChainKnob::delay, delay_us, sweep.params, steady(sweep));
    bool monotone = true;
    std::string trace;
    for (std::size_t i = 0; i < drows.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%s%.3f", i ? " " : "", drows[i].result.R_E);
        trace += buf;
        if (i > 0 && drows[i].result.R_E > drows[i - 1].result.R_E) {
            monotone = false;
        }
    }
    r.note("R_E over Td/tau_m = 0, 0.1, ..., 1: %s", trace.c_str());
    const double last = drows.back().result.R_E;
    r.check(within(last, 0.15, 0.05), "R_E(Td = tau_m) %.4f vs 0.15 +- 0.05", last);
    r.check(monotone, "R_E non-increasing in Td");
    const double drift = drows.front().result.theta_E - drows.back().result.theta_E;
    r.note("angular drift over Td in [0, tau_m]: %.4fpi toward the pole", drift / kPi);
    return r;
}

Report criterion5() {
    Report r;
    const RunConfig c = fig(5);
    const auto rows = sweep_targets(sweep_grid(c), c.params, [&](double t) { return resolve_law([&] {
        RunConfig d = c;
        d.theta_target = t;
        return d;
    }()); }, steady(c));
    for (const auto &row : rows) {
        const auto &s = row.result;
        const double t = row.theta_s / kPi;
        r.note("theta_s %.1fpi: theta_P %.4fpi, R_P %.4f, R_E %.4f, lobes %zu", t, s.peak.theta_P / kPi, s.peak.R_P,
               s.R_E, s.peak.lobes.size());
        if (t > 0.15 && t < 0.85) {
            r.check(within(s.R_E, 0.64, 0.02), "theta_s %.1fpi: R_E %.4f vs 0.64 +- 0.02", t, s.R_E);
        }
        if (std::abs(t - 0.5) < 1e-9) {
            r.check(within(s.peak.theta_P, 0.5 * kPi, 0.02 * kPi), "equator: theta_P %.4fpi vs 0.5pi +- 0.02pi",
                    s.peak.theta_P / kPi);
            r.check(within(s.peak.R_P, s.R_E, 0.05), "equator: R_P %.4f vs R_E %.4f within 0.05", s.peak.R_P, s.R_E);
        }
        if (t <= 0.2 + 1e-9) {
            r.check(s.peak.R_P - s.R_E > 0.1, "theta_s %.1fpi: R_P - R_E = %.4f > 0.1", t, s.peak.R_P - s.R_E);
        }
    }
    return r;
}

Report criterion6() {
    Report r;
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-1, 1);
    std::normal_distribution<double> g;

    // Backaction against the density-matrix Kraus update.
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        BlochState s;
        do {
            s = {u(rng), u(rng), u(rng)};
        } while (s.norm_squared() > 1);
        ModelParams p = ModelParams::ideal(0.2, 0.0005);
        p.dt = (0.5 + 0.5 * u(rng)) * 0.1 * p.tau_m + 1e-6;
        const double rd = s.z + std::sqrt(p.tau_m / p.dt) * g(rng);
        const BlochState a = measurement_backaction(s, rd, p);
        const double m0 = std::exp(-(rd - 1) * (rd - 1) * p.dt / (4 * p.tau_m));
        const double m1 = std::exp(-(rd + 1) * (rd + 1) * p.dt / (4 * p.tau_m));
        const double p00 = m0 * m0 * (1 + s.z) / 2, p11 = m1 * m1 * (1 - s.z) / 2;
        const double tr = p00 + p11;
        const BlochState b{m0 * m1 * s.x / tr, m0 * m1 * s.y / tr, (p00 - p11) / tr};
        worst = std::max({worst, std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
    }
    r.check(worst <= 1e-10, "backaction vs density matrix, 1000 cases: %.2e (<= 1e-10)", worst);

    // Pure target: noise disturbance vanishes under the ideal law.
    worst = 0;
    for (double t = 0.05; t < 1.0; t += 0.05) {
        const TargetSpec target{t * kPi, 1.0};
        const DisturbanceReport d = disturbance(target, design_ideal(t * kPi, 0.2).delta1, 0.2);
        worst = std::max({worst, std::abs(d.delta_y), std::abs(d.delta_z)});
    }
    r.check(worst <= 1e-12, "pure-state fixed point dy = dz = 0: %.2e", worst);

    // Design / stationary round trip.
    worst = 0;
    const ModelParams nonideal;
    for (int k = 0; k < 100; ++k) {
        const double theta = 0.02 * kPi + 0.96 * kPi * (k + 0.5) / 100;
        const NonidealDesign d = design_nonideal(theta, nonideal);
        const StationaryState s = stationary_state(d.law, nonideal);
        worst = std::max({worst, std::abs(s.theta - theta), std::abs(s.R - d.R_s)});
    }
    r.check(worst <= 1e-10, "design/stationary round trip, 100 angles: %.2e (<= 1e-10)", worst);

    // Disturbance optimum against golden-section search.
    worst = 0;
    for (int i = 0; i < 100; ++i) {
        const TargetSpec t{(0.5 + 0.45 * u(rng)) * kPi, 0.6 + 0.4 * std::abs(u(rng))};
        const double closed = optimal_delta1(t, 0.2);
        const auto cost = [&](double d1) { return disturbance(t, d1, 0.2).cost; };
        const double phi = (std::sqrt(5.0) - 1) / 2;
        double a = -5 * closed, b = 5 * closed;
        for (int it = 0; it < 200 && b - a > 1e-14 * std::abs(a + b); ++it) {
            const double c = b - phi * (b - a), d = a + phi * (b - a);
            (cost(c) < cost(d) ? b : a) = cost(c) < cost(d) ? d : c;
        }
        // Comparisons stall near sqrt(eps) on a flat minimum; one parabolic step.
        const double x = 0.5 * (a + b), h = 0.01 * std::abs(x);
        const double numeric = x - 0.5 * h * (cost(x + h) - cost(x - h)) / (cost(x + h) - 2 * cost(x) + cost(x - h));
        worst = std::max(worst, std::abs(numeric - closed) / std::abs(closed));
    }
    r.check(worst <= 1e-8, "disturbance optimum vs golden section: %.2e relative (<= 1e-8)", worst);

    // Filter DC gain and linearity; delay shift.
    const ModelParams fast = ModelParams::ideal(0.2, 0.005);
    FeedbackChain dc({0, 0, 0.05, 0}, fast);
    double out = 0;
    for (int k = 0; k < 5000; ++k) {
        out = dc.filter_push(1.75);
    }
    FeedbackChain f1({0, 0, 0.05, 0}, fast), f2({0, 0, 0.05, 0}, fast), f3({0, 0, 0.05, 0}, fast);
    double lin = 0;
    for (int k = 0; k < 1000; ++k) {
        const double a = g(rng), b = g(rng);
        lin = std::max(lin, std::abs(f3.filter_push(2 * a - 3 * b) - (2 * f1.filter_push(a) - 3 * f2.filter_push(b))));
    }
    r.check(std::abs(out - 1.75) <= 1e-12 && lin <= 1e-12, "filter DC gain error %.1e, linearity error %.1e",
            std::abs(out - 1.75), lin);
    FeedbackChain delay({0, 0, 0, 0.2}, fast);
    std::vector<double> in(400);
    bool shifted = delay.delay_steps() == 40;
    for (std::size_t k = 0; k < in.size(); ++k) {
        in[k] = g(rng);
        shifted = shifted && delay.delay_pop_push(in[k]) == (k < 40 ? 0.0 : in[k - 40]);
    }
    r.check(shifted, "delay line shifts by exactly 40 steps");

    // Thread-count invariance.
    TrajectoryConfig tc;
    tc.initial = BlochState::from_polar(0.1 * kPi, 1.0);
    tc.total_time = 0.5;
    tc.record_stride = 50;
    tc.seed = 9;
    FeedbackLaw law = design_nonideal(0.3 * kPi, nonideal).law;
    law.Ts = 0.01;
    law.Td = 0.005;
    EnsembleOptions eo;
    eo.n_traj = 500;
    eo.histogram_bins = 100;
    eo.threads = 1;
    const EnsembleResult e1 = run_ensemble(tc, nonideal, law, eo);
    eo.threads = 8;
    const EnsembleResult e8 = run_ensemble(tc, nonideal, law, eo);
    r.check(e1.mean == e8.mean && *e1.histogram == *e8.histogram, "ensemble 1 vs 8 threads bit-identical");

    // RK4 order.
    const BlochState start = BlochState::from_polar(0.1 * kPi, 1.0);
    const FeedbackLaw dlaw = design_nonideal(0.3 * kPi, nonideal).law;
    const BlochState a = mean_ode_at(start, dlaw, nonideal, 0.4, 0.004);
    const BlochState b = mean_ode_at(start, dlaw, nonideal, 0.4, 0.002);
    const BlochState c = mean_ode_at(start, dlaw, nonideal, 0.4, 0.001);
    const double ratio = distance(a, b) / distance(b, c);
    r.check(distance(b, c) < 1e-9 && within(ratio, 16, 1.5), "RK4 halving change %.1e, error ratio %.2f (16)",
            distance(b, c), ratio);
    return r;
}

Report criterion7() {
    Report r;
    const double tau = 0.2;
    const ModelParams p = ModelParams::ideal(tau, tau / 400);
    const FeedbackLaw law = design_ideal(0.3 * kPi, tau);
    const BlochState start = BlochState::from_polar(0.1 * kPi, 1.0);
    SteadyStateOptions o;
    o.n_traj = 10000;
    o.burn_in_taus = 10;
    o.sample_interval_taus = 1;
    o.samples_per_trajectory = 10;
    o.seed = 71;
    const SteadyStateResult bayes = run_steady_state(law, p, o, start);

    TrajectoryConfig tc;
    tc.initial = start;
    const auto burn = static_cast<std::uint64_t>(std::llround(o.burn_in_taus * tau / p.dt));
    const auto interval = static_cast<std::uint64_t>(std::llround(o.sample_interval_taus * tau / p.dt));
    tc.total_time = static_cast<double>(burn + (o.samples_per_trajectory - 1) * interval) * p.dt;
    tc.record_from = burn;
    tc.record_stride = interval;
    tc.seed = o.seed + 1;  // independent noise
    const unsigned workers = resolve_threads(0);
    std::vector<HistogramGrid> parts(workers, HistogramGrid(o.bins));
    std::vector<int> excursions(workers, 0);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::uint64_t i = w; i < o.n_traj; i += workers) {
                const SmeTrajectory t = integrate_sme_trajectory(tc, law, p, i);
                excursions[w] += t.excursion;
                for (const auto &s : t.record.states) {
                    parts[w].add(s);
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    HistogramGrid sme(o.bins);
    int n_excursions = 0;
    for (unsigned w = 0; w < workers; ++w) {
        sme.merge(parts[w]);
        n_excursions += excursions[w];
    }
    const PeakReport sp = find_peak(sme);
    r.note("Bayesian: mean (%.4f, %.4f), peak bin (%zu, %zu); SME: mean (%.4f, %.4f), peak bin (%zu, %zu)",
           bayes.y_E, bayes.z_E, bayes.peak.peak.iy, bayes.peak.peak.iz, sme.mean_y(), sme.mean_z(), sp.peak.iy,
           sp.peak.iz);
    r.note("SME trajectories with R > 1.05 excursions: %d of %llu", n_excursions,
           static_cast<unsigned long long>(o.n_traj));
    r.check(within(sme.mean_y(), bayes.y_E, 0.03) && within(sme.mean_z(), bayes.z_E, 0.03),
            "steady-state means within 0.03: |dy| %.4f, |dz| %.4f", std::abs(sme.mean_y() - bayes.y_E),
            std::abs(sme.mean_z() - bayes.z_E));
    const auto diff = [](std::size_t a, std::size_t b) { return a > b ? a - b : b - a; };
    r.check(diff(sp.peak.iy, bayes.peak.peak.iy) <= 1 && diff(sp.peak.iz, bayes.peak.peak.iz) <= 1,
            "histogram peaks within one bin");
    return r;
}

}  // namespace

int main() {
    const std::pair<const char *, std::function<Report()>> criteria[] = {
        {"ideal stabilization", criterion1},       {"nonideal stabilization", criterion2},
        {"histogram peaks", criterion3},           {"filter and delay degradation", criterion4},
        {"angle sweep", criterion5},               {"property suites", criterion6},
        {"SME vs Bayesian cross-check", criterion7},
    };
    int failures = 0;
    for (std::size_t i = 0; i < std::size(criteria); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Report r;
        try {
            r = criteria[i].second();
        } catch (const std::exception &e) {
            r.pass = false;
            r.note("error: %s", e.what());
        }
        for (const auto &line : r.lines) {
            std::printf("%s\n", line.c_str());
        }
        std::printf("criterion %zu: %s  %s (%.1f s)\n", i + 1, r.pass ? "PASS" : "FAIL", criteria[i].first,
                    seconds_since(t0));
        std::fflush(stdout);
        failures += !r.pass;
    }
    return failures == 0 ? 0 : 1;
}
