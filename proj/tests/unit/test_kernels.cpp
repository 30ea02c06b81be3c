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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "qfb/design.hpp"
#include "qfb/kernels.hpp"
#include "qfb/model.hpp"

namespace qfb {
namespace {

std::vector<double> spread(double lo, double hi, std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (auto &x : v) {
        x = u(rng);
    }
    return v;
}

TEST(VectorMath, exp_accuracy) {
    auto in = spread(-700, 700, 20000, 1);
    auto small = spread(-1, 1, 20000, 2);
    in.insert(in.end(), small.begin(), small.end());
    in.push_back(0.0);
    std::vector<double> out(in.size());
    kernel_table(Isa::portable).exp(in.data(), out.data(), in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        const double want = std::exp(in[i]);
        ASSERT_LE(std::abs(out[i] - want), 1e-15 * want) << in[i];
    }
}

TEST(VectorMath, log_accuracy) {
    auto in = spread(1e-300, 1.0, 20000, 3);
    auto tiny = spread(0, 1, 2000, 4);
    for (double &t : tiny) {
        t = std::ldexp(t + 0.5, -1000 + static_cast<int>(t * 1000));
    }
    in.insert(in.end(), tiny.begin(), tiny.end());
    in.push_back(1.0);
    in.push_back(std::ldexp(1.0, -53));
    std::vector<double> out(in.size());
    kernel_table(Isa::portable).log(in.data(), out.data(), in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        const double want = std::log(in[i]);
        ASSERT_LE(std::abs(out[i] - want), 1e-15 * std::max(1.0, std::abs(want))) << in[i];
    }
}

TEST(VectorMath, sincos_accuracy) {
    auto in = spread(0, 2 * kPi, 20000, 5);
    auto wide = spread(-50, 50, 5000, 6);
    in.insert(in.end(), wide.begin(), wide.end());
    std::vector<double> s(in.size()), c(in.size());
    kernel_table(Isa::portable).sincos(in.data(), s.data(), c.data(), in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        ASSERT_NEAR(s[i], std::sin(in[i]), 1e-15) << in[i];
        ASSERT_NEAR(c[i], std::cos(in[i]), 1e-15) << in[i];
    }
}

TEST(VectorMath, all_isas_bit_identical) {
    const auto in = spread(-30, 30, 4099, 7);
    const auto pos = spread(1e-9, 100, 4099, 8);
    const KernelTable &ref = kernel_table(Isa::portable);
    std::vector<double> e0(in.size()), l0(in.size()), s0(in.size()), c0(in.size());
    ref.exp(in.data(), e0.data(), in.size());
    ref.log(pos.data(), l0.data(), pos.size());
    ref.sincos(in.data(), s0.data(), c0.data(), in.size());
    for (Isa isa : available_isas()) {
        const KernelTable &k = kernel_table(isa);
        std::vector<double> e(in.size()), l(in.size()), s(in.size()), c(in.size());
        k.exp(in.data(), e.data(), in.size());
        k.log(pos.data(), l.data(), pos.size());
        k.sincos(in.data(), s.data(), c.data(), in.size());
        EXPECT_EQ(e, e0) << isa_name(isa);
        EXPECT_EQ(l, l0) << isa_name(isa);
        EXPECT_EQ(s, s0) << isa_name(isa);
        EXPECT_EQ(c, c0) << isa_name(isa);
    }
}

struct StepCase {
    std::vector<BlochState> states;
    std::vector<double> readouts;
    std::vector<double> fed;
};

StepCase random_steps(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1, 1);
    std::normal_distribution<double> g(0, 20);
    StepCase c;
    for (std::size_t i = 0; i < n; ++i) {
        BlochState s{u(rng), u(rng), u(rng)};
        const double r = s.radius();
        if (r > 1) {
            s = {s.x / r, s.y / r, s.z / r};
        }
        c.states.push_back(s);
        c.readouts.push_back(s.z + g(rng));
        c.fed.push_back(c.readouts.back() * u(rng));
    }
    return c;
}

TEST(Step, kernel_matches_reference_model) {
    const ModelParams p;  // nonideal
    const FeedbackLaw law = design_nonideal(0.3 * kPi, p).law;
    const StepConstants k = StepConstants::make(p, law);
    StepCase c = random_steps(1003, 9);
    std::vector<BlochState> out = c.states;
    kernel_table(Isa::portable).step(k, out.data(), c.readouts.data(), c.fed.data(), out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const BlochState want = composite_step(c.states[i], c.readouts[i], c.fed[i], law, p);
        ASSERT_LE(distance(out[i], want), 1e-14) << i;
    }
}

TEST(Step, all_isas_bit_identical) {
    const ModelParams p;
    const FeedbackLaw law = design_nonideal(0.4 * kPi, p).law;
    const StepConstants k = StepConstants::make(p, law);
    StepCase c = random_steps(517, 10);
    std::vector<BlochState> ref = c.states;
    kernel_table(Isa::portable).step(k, ref.data(), c.readouts.data(), c.fed.data(), ref.size());
    for (Isa isa : available_isas()) {
        std::vector<BlochState> out = c.states;
        kernel_table(isa).step(k, out.data(), c.readouts.data(), c.fed.data(), out.size());
        EXPECT_EQ(out, ref) << isa_name(isa);
    }
}

struct Capture : LaneSink {
    std::map<std::pair<std::size_t, unsigned>, BlochState> records;
    std::map<std::pair<unsigned, std::uint64_t>, double> readouts;
    void on_record(std::size_t index, unsigned lane, const BlochState &s) override { records[{index, lane}] = s; }
    void on_readout(unsigned lane, std::uint64_t step, double r) override { readouts[{lane, step}] = r; }
};

Capture run_group_with(Isa isa, unsigned lanes, const FeedbackLaw &law, const ModelParams &p) {
    const StepConstants k = StepConstants::make(p, law);
    const std::vector<std::uint64_t> steps{0, 10, 333, 600};
    Capture cap;
    GroupJob job;
    job.constants = &k;
    job.initial = BlochState::from_polar(0.1 * kPi, 1.0);
    job.seed = 77;
    job.first_trajectory = 5;
    job.active_lanes = lanes;
    job.total_steps = 600;
    job.record_steps = steps;
    job.sink = &cap;
    job.emit_readouts = true;
    kernel_table(isa).run_group(job);
    return cap;
}

TEST(Group, all_isas_bit_identical_with_filter_and_delay) {
    const ModelParams p;
    FeedbackLaw law = design_nonideal(0.3 * kPi, p).law;
    law.Ts = 0.01;
    law.Td = 0.02;
    for (Isa isa : available_isas()) {
        const std::size_t w = kernel_table(isa).width;
        for (unsigned lanes = 1; lanes <= w; ++lanes) {
            const Capture ref = run_group_with(Isa::portable, std::min<unsigned>(lanes, 4), law, p);
            const Capture got = run_group_with(isa, lanes, law, p);
            for (const auto &[key, state] : ref.records) {
                if (key.second < lanes) {
                    ASSERT_EQ(got.records.at(key), state) << isa_name(isa) << " lanes " << lanes;
                }
            }
            for (const auto &[key, r] : ref.readouts) {
                if (key.first < lanes) {
                    ASSERT_EQ(got.readouts.at(key), r);
                }
            }
        }
    }
}

TEST(Group, lanes_are_independent_trajectories) {
    const ModelParams p;
    const FeedbackLaw law = design_nonideal(0.3 * kPi, p).law;
    const Capture four = run_group_with(Isa::portable, 4, law, p);
    const Capture one = run_group_with(Isa::portable, 1, law, p);
    EXPECT_EQ(four.records.at({3, 0}), one.records.at({3, 0}));
    EXPECT_NE(four.records.at({3, 0}), four.records.at({3, 1}));
}

TEST(Dispatch, names_round_trip) {
    for (Isa isa : {Isa::portable, Isa::avx2, Isa::neon}) {
        EXPECT_EQ(parse_isa(isa_name(isa)), isa);
    }
    EXPECT_FALSE(parse_isa("sse9"));
    EXPECT_TRUE(isa_available(Isa::portable));
    EXPECT_TRUE(isa_available(active_isa()));
}

}  // namespace
}  // namespace qfb
