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

#include "qfb/trajectory.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "qfb/model.hpp"
#include "qfb/rng.hpp"

namespace qfb {

std::uint64_t TrajectoryConfig::total_steps(double dt) const {
    const double steps = total_time / dt;
    const double rounded = std::round(steps);
    if (!(std::isfinite(steps) && rounded >= 1.0 && std::abs(steps - rounded) <= 1e-9 * rounded)) {
        throw std::invalid_argument("total_time: must be a positive whole number of steps dt");
    }
    return static_cast<std::uint64_t>(rounded);
}

std::vector<std::uint64_t> TrajectoryConfig::record_steps(double dt) const {
    if (record_stride < 1) {
        throw std::invalid_argument("record_stride: must be >= 1");
    }
    if (!initial.is_physical() || !std::isfinite(initial.x) || !std::isfinite(initial.y) ||
        !std::isfinite(initial.z)) {
        throw std::invalid_argument("initial: state lies outside the Bloch ball");
    }
    const std::uint64_t total = total_steps(dt);
    if (record_from > total) {
        throw std::invalid_argument("record_from: beyond the final step");
    }
    std::vector<std::uint64_t> steps;
    for (std::uint64_t s = record_from; s < total; s += record_stride) {
        steps.push_back(s);
    }
    steps.push_back(total);
    return steps;
}

const char *backend_name(Backend backend) {
    switch (backend) {
        case Backend::automatic:
            return "auto";
        case Backend::reference:
            return "reference";
        case Backend::portable:
            return "portable";
        case Backend::avx2:
            return "avx2";
        case Backend::neon:
            return "neon";
    }
    return "unknown";
}

std::optional<Backend> parse_backend(std::string_view name) {
    for (Backend b : {Backend::automatic, Backend::reference, Backend::portable, Backend::avx2, Backend::neon}) {
        if (name == backend_name(b)) {
            return b;
        }
    }
    return std::nullopt;
}

namespace {

Isa backend_isa(Backend backend) {
    switch (backend) {
        case Backend::avx2:
            return Isa::avx2;
        case Backend::neon:
            return Isa::neon;
        default:
            return Isa::portable;
    }
}

}  // namespace

Backend resolve_backend(Backend backend) {
    if (backend != Backend::automatic) {
        return backend;
    }
    switch (active_isa()) {
        case Isa::avx2:
            return Backend::avx2;
        case Isa::neon:
            return Backend::neon;
        default:
            return Backend::portable;
    }
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char *env = std::getenv("QFB_THREADS")) {
        char *end = nullptr;
        const unsigned long value = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && value > 0) {
            return static_cast<unsigned>(value);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

constexpr std::uint64_t kChunk = 64;

/// Fans recorded states out to the reducers and optional per-trajectory storage.
class Collector : public LaneSink {
   public:
    /// Trajectory t is stored at records[t - record_offset].
    Collector(const std::vector<double> &times, std::size_t histogram_bins, std::size_t histogram_first_record,
              std::vector<TrajectoryRecord> *records, std::uint64_t record_offset = 0)
        : mean(times), histogram_first_record_(histogram_first_record), records_(records), offset_(record_offset) {
        if (histogram_bins > 0) {
            histogram.emplace(histogram_bins);
        }
    }

    void set_base(std::uint64_t first_trajectory) { base_ = first_trajectory - offset_; }

    void finish(std::uint64_t trajectory, std::uint64_t renormalized) {
        renormalizations += renormalized;
        if (records_) {
            (*records_)[trajectory - offset_].renormalizations = renormalized;
        }
    }

    void on_record(std::size_t record_index, unsigned lane, const BlochState &state) override {
        mean.add(record_index, state);
        if (histogram && record_index >= histogram_first_record_) {
            histogram->add(state);
        }
        if (records_) {
            (*records_)[base_ + lane].states[record_index] = state;
        }
    }

    void on_readout(unsigned lane, std::uint64_t step, double readout) override {
        if (records_) {
            (*records_)[base_ + lane].readouts[step] = readout;
        }
    }

    MeanSeries mean;
    std::optional<HistogramGrid> histogram;
    std::uint64_t renormalizations = 0;

   private:
    std::size_t histogram_first_record_;
    std::vector<TrajectoryRecord> *records_;
    std::uint64_t offset_;
    std::uint64_t base_ = 0;
};

struct RunContext {
    const TrajectoryConfig *cfg;
    const ModelParams *params;
    const FeedbackLaw *law;
    Backend backend;
    std::uint64_t total_steps;
    std::vector<std::uint64_t> record_steps;
    StepConstants constants;
    bool emit_readouts;
};

RunContext make_context(const TrajectoryConfig &cfg, const ModelParams &params, const FeedbackLaw &law,
                        Backend backend, bool emit_readouts) {
    params.validate();
    law.validate(params);
    RunContext ctx{&cfg, &params, &law, resolve_backend(backend), cfg.total_steps(params.dt),
                   cfg.record_steps(params.dt), StepConstants::make(params, law), emit_readouts};
    if (ctx.backend != Backend::reference) {
        kernel_table(backend_isa(ctx.backend));  // throws if unavailable
    }
    return ctx;
}

std::uint64_t run_reference(const RunContext &ctx, std::uint64_t trajectory, LaneSink &sink) {
    NormalStream normals(ctx.cfg->seed, trajectory);
    FeedbackChain chain(*ctx.law, *ctx.params);
    BlochState state = ctx.cfg->initial;
    std::size_t next = 0;
    std::uint64_t renormalizations = 0;
    for (std::uint64_t step = 0; step < ctx.total_steps; ++step) {
        while (next < ctx.record_steps.size() && ctx.record_steps[next] == step) {
            sink.on_record(next++, 0, state);
        }
        const double readout = sample_readout(state, *ctx.params, normals.next());
        if (ctx.emit_readouts) {
            sink.on_readout(0, step, readout);
        }
        const double fed = chain.push(readout);
        state = composite_step(state, readout, fed, *ctx.law, *ctx.params);
        if (renormalize_if_outside(state)) {
            ++renormalizations;
        }
    }
    while (next < ctx.record_steps.size()) {
        sink.on_record(next++, 0, state);
    }
    return renormalizations;
}

/// Trajectories [first, first + count) in increasing order.
void simulate_range(const RunContext &ctx, std::uint64_t first, std::uint64_t count, Collector &collector) {
    if (ctx.backend == Backend::reference) {
        for (std::uint64_t t = first; t < first + count; ++t) {
            collector.set_base(t);
            collector.finish(t, run_reference(ctx, t, collector));
        }
        return;
    }
    const KernelTable &table = kernel_table(backend_isa(ctx.backend));
    GroupJob job;
    job.constants = &ctx.constants;
    job.initial = ctx.cfg->initial;
    job.seed = ctx.cfg->seed;
    job.total_steps = ctx.total_steps;
    job.record_steps = ctx.record_steps;
    job.sink = &collector;
    job.emit_readouts = ctx.emit_readouts;
    for (std::uint64_t t = first; t < first + count; t += table.width) {
        job.first_trajectory = t;
        job.active_lanes = static_cast<unsigned>(std::min<std::uint64_t>(table.width, first + count - t));
        collector.set_base(t);
        const GroupResult group = table.run_group(job);
        for (unsigned l = 0; l < job.active_lanes; ++l) {
            collector.finish(t + l, group.renormalizations[l]);
        }
    }
}

std::vector<double> record_times(const RunContext &ctx) {
    std::vector<double> times;
    times.reserve(ctx.record_steps.size());
    for (std::uint64_t s : ctx.record_steps) {
        times.push_back(static_cast<double>(s) * ctx.params->dt);
    }
    return times;
}

TrajectoryRecord empty_record(const RunContext &ctx, const std::vector<double> &times) {
    TrajectoryRecord record;
    record.times = times;
    record.states.resize(times.size());
    if (ctx.emit_readouts) {
        record.readouts.resize(ctx.total_steps);
    }
    return record;
}

}  // namespace

TrajectoryRecord run_trajectory(const TrajectoryConfig &cfg, const ModelParams &params, const FeedbackLaw &law,
                                Backend backend, std::uint64_t trajectory) {
    const RunContext ctx = make_context(cfg, params, law, backend, cfg.keep_readouts);
    const std::vector<double> times = record_times(ctx);
    std::vector<TrajectoryRecord> records;
    records.push_back(empty_record(ctx, times));
    Collector collector(times, 0, 0, &records, trajectory);
    simulate_range(ctx, trajectory, 1, collector);
    return std::move(records[0]);
}

EnsembleResult run_ensemble(const TrajectoryConfig &cfg, const ModelParams &params, const FeedbackLaw &law,
                            const EnsembleOptions &options) {
    if (options.n_traj < 1) {
        throw std::invalid_argument("n_traj: must be >= 1");
    }
    const RunContext ctx = make_context(cfg, params, law, options.backend, options.keep_records && cfg.keep_readouts);
    const std::vector<double> times = record_times(ctx);
    const std::size_t histogram_first = static_cast<std::size_t>(
        std::lower_bound(ctx.record_steps.begin(), ctx.record_steps.end(), options.histogram_from_step) -
        ctx.record_steps.begin());

    EnsembleResult result;
    result.backend = ctx.backend;
    if (options.keep_records) {
        result.records.reserve(options.n_traj);
        for (std::uint64_t t = 0; t < options.n_traj; ++t) {
            result.records.push_back(empty_record(ctx, times));
        }
    }
    std::vector<TrajectoryRecord> *records = options.keep_records ? &result.records : nullptr;

    const std::uint64_t n_chunks = (options.n_traj + kChunk - 1) / kChunk;
    const unsigned threads =
        static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(options.threads), n_chunks));

    std::atomic<std::uint64_t> next_chunk{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex mutex;
    std::vector<Collector> collectors;
    collectors.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        collectors.emplace_back(times, options.histogram_bins, histogram_first, records);
    }

    auto worker = [&](unsigned w) {
        try {
            for (;;) {
                const std::uint64_t c = next_chunk.fetch_add(1);
                if (c >= n_chunks || failed.load()) {
                    break;
                }
                const std::uint64_t first = c * kChunk;
                simulate_range(ctx, first, std::min(kChunk, options.n_traj - first), collectors[w]);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(mutex);
            if (!error) {
                error = std::current_exception();
            }
            failed.store(true);
        }
    };

    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back(worker, w);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }

    result.mean = MeanSeries(times);
    if (options.histogram_bins > 0) {
        result.histogram.emplace(options.histogram_bins);
    }
    for (const auto &c : collectors) {
        result.mean.merge(c.mean);
        if (result.histogram) {
            result.histogram->merge(*c.histogram);
        }
        result.renormalizations += c.renormalizations;
    }
    return result;
}

}  // namespace qfb
