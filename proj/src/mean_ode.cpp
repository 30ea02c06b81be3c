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

#include "qfb/mean_ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qfb/rng.hpp"

namespace qfb {

BlochState mean_drift(const BlochState &s, const FeedbackLaw &law, const ModelParams &params) {
    const double g = params.gamma_total();
    const double a = 0.5 * params.tau_m * law.delta1 * law.delta1;
    return {-g * s.x, -(g + a) * s.y + law.delta0 * s.z + law.delta1,
            -a * s.z - law.delta0 * s.y - (1.0 + s.z) / params.T1};
}

BlochState noise_coefficients(const BlochState &s, const FeedbackLaw &law, const ModelParams &params) {
    const double td = params.tau_m * law.delta1;
    return {-s.x * s.z, -s.y * s.z + td * s.z, (1.0 - s.z * s.z) - td * s.y};
}

namespace {

BlochState axpy(double a, const BlochState &x, const BlochState &y) {
    return {y.x + a * x.x, y.y + a * x.y, y.z + a * x.z};
}

BlochState rk4_step(const BlochState &s, double h, const FeedbackLaw &law, const ModelParams &params) {
    const BlochState k1 = mean_drift(s, law, params);
    const BlochState k2 = mean_drift(axpy(0.5 * h, k1, s), law, params);
    const BlochState k3 = mean_drift(axpy(0.5 * h, k2, s), law, params);
    const BlochState k4 = mean_drift(axpy(h, k3, s), law, params);
    const double w = h / 6.0;
    return {s.x + w * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x), s.y + w * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
            s.z + w * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z)};
}

std::uint64_t whole_steps(double total_time, double h, const char *what) {
    const double steps = total_time / h;
    const double rounded = std::round(steps);
    if (!(std::isfinite(steps) && rounded >= 1.0 && std::abs(steps - rounded) <= 1e-9 * rounded)) {
        throw std::invalid_argument(std::string(what) + ": total_time must be a positive whole number of steps");
    }
    return static_cast<std::uint64_t>(rounded);
}

}  // namespace

MeanOdeSeries integrate_mean_ode(const BlochState &initial, const FeedbackLaw &law, const ModelParams &params,
                                 double total_time, double dt_ode, std::uint64_t record_stride) {
    if (!(dt_ode > 0.0) || record_stride < 1) {
        throw std::invalid_argument("integrate_mean_ode: dt_ode must be > 0 and record_stride >= 1");
    }
    const std::uint64_t n = whole_steps(total_time, dt_ode, "integrate_mean_ode");
    MeanOdeSeries out;
    BlochState s = initial;
    for (std::uint64_t k = 0; k < n; ++k) {
        if (k % record_stride == 0) {
            out.times.push_back(static_cast<double>(k) * dt_ode);
            out.states.push_back(s);
        }
        s = rk4_step(s, dt_ode, law, params);
    }
    out.times.push_back(static_cast<double>(n) * dt_ode);
    out.states.push_back(s);
    return out;
}

BlochState mean_ode_at(const BlochState &initial, const FeedbackLaw &law, const ModelParams &params, double t,
                       double dt_ode) {
    if (t <= 0.0) {
        return initial;
    }
    const std::uint64_t n = static_cast<std::uint64_t>(std::ceil(t / dt_ode));
    const double h = t / static_cast<double>(n);
    BlochState s = initial;
    for (std::uint64_t k = 0; k < n; ++k) {
        s = rk4_step(s, h, law, params);
    }
    return s;
}

SmeTrajectory integrate_sme_trajectory(const TrajectoryConfig &cfg, const FeedbackLaw &law, const ModelParams &params,
                                       std::uint64_t trajectory, bool freeze_noise) {
    if (law.Ts != 0.0 || law.Td != 0.0) {
        throw std::invalid_argument("integrate_sme_trajectory: Markovian laws only (Ts = Td = 0)");
    }
    params.validate();
    const std::uint64_t total = cfg.total_steps(params.dt);
    const std::vector<std::uint64_t> record_steps = cfg.record_steps(params.dt);
    const double dt = params.dt;
    const double noise_scale = std::sqrt(dt / params.tau_m);  // dW / sqrt(tau_m) per unit normal

    SmeTrajectory out;
    out.record.times.reserve(record_steps.size());
    out.record.states.reserve(record_steps.size());
    NormalStream normals(cfg.seed, trajectory);
    BlochState s = cfg.initial;
    out.max_radius = s.radius();
    std::size_t next = 0;
    for (std::uint64_t step = 0; step <= total; ++step) {
        while (next < record_steps.size() && record_steps[next] == step) {
            out.record.times.push_back(static_cast<double>(step) * dt);
            out.record.states.push_back(s);
            ++next;
        }
        if (step == total) {
            break;
        }
        const BlochState drift = mean_drift(s, law, params);
        BlochState next_state = axpy(dt, drift, s);
        const double n = normals.next();
        if (!freeze_noise) {
            next_state = axpy(noise_scale * n, noise_coefficients(s, law, params), next_state);
        }
        s = next_state;
        out.max_radius = std::max(out.max_radius, s.radius());
    }
    out.excursion = out.max_radius > kSmeExcursionRadius;
    return out;
}

}  // namespace qfb
