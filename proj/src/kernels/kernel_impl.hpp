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

#ifndef QFB_KERNELS_KERNEL_IMPL_HPP
#define QFB_KERNELS_KERNEL_IMPL_HPP

// Kernel bodies, templated on the batch type. Each kernel_<isa>.cpp
// instantiates them once. Everything here is a template so that copies built
// for different targets never share a symbol.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qfb/kernels.hpp"
#include "qfb/rng.hpp"
#include "vmath.hpp"

namespace qfb::kernels {

inline constexpr double kTwoPi = 6.283185307179586476925;

template <class V>
struct Impl {
    static constexpr std::size_t W = V::width;
    static_assert(W <= kMaxLanes);
    static constexpr std::size_t kBlockPairs = 128;
    static constexpr std::size_t kBlockSteps = 2 * kBlockPairs;

    static void box_muller(V u1, V u2, V &even, V &odd) {
        const V radius = sqrt(V::broadcast(-2.0) * simd::vlog(u1));
        V s, c;
        simd::vsincos(V::broadcast(kTwoPi) * u2, s, c);
        even = radius * c;
        odd = radius * s;
    }

    static void fill_normals(std::uint64_t seed, std::uint64_t trajectory, std::uint64_t first_step, double *out,
                             std::size_t n) {
        if (n == 0) {
            return;
        }
        const std::uint64_t end_step = first_step + n;
        alignas(64) double u1[W], u2[W], even[W], odd[W];
        for (std::uint64_t pair = first_step / 2; 2 * pair < end_step; pair += W) {
            for (std::size_t l = 0; l < W; ++l) {
                const UniformPair u = uniform_pair(seed, trajectory, pair + l);
                u1[l] = u.u1;
                u2[l] = u.u2;
            }
            V e, o;
            box_muller(V::load(u1), V::load(u2), e, o);
            store(even, e);
            store(odd, o);
            for (std::size_t l = 0; l < W; ++l) {
                const std::uint64_t step = 2 * (pair + l);
                if (step >= first_step && step < end_step) {
                    out[step - first_step] = even[l];
                }
                if (step + 1 >= first_step && step + 1 < end_step) {
                    out[step + 1 - first_step] = odd[l];
                }
            }
        }
    }

    template <class F>
    static void map_padded(const double *in, std::size_t n, double pad, F &&f) {
        alignas(64) double buf[W];
        for (std::size_t i = 0; i < n; i += W) {
            const std::size_t m = std::min(W, n - i);
            std::fill(buf, buf + W, pad);
            std::copy(in + i, in + i + m, buf);
            f(V::load(buf), i, m);
        }
    }

    static void exp(const double *in, double *out, std::size_t n) {
        alignas(64) double r[W];
        map_padded(in, n, 0.0, [&](V v, std::size_t i, std::size_t m) {
            store(r, simd::vexp(v));
            std::copy(r, r + m, out + i);
        });
    }

    static void log(const double *in, double *out, std::size_t n) {
        alignas(64) double r[W];
        map_padded(in, n, 1.0, [&](V v, std::size_t i, std::size_t m) {
            store(r, simd::vlog(v));
            std::copy(r, r + m, out + i);
        });
    }

    static void sincos(const double *in, double *sin_out, double *cos_out, std::size_t n) {
        alignas(64) double rs[W], rc[W];
        map_padded(in, n, 0.0, [&](V v, std::size_t i, std::size_t m) {
            V s, c;
            simd::vsincos(v, s, c);
            store(rs, s);
            store(rc, c);
            std::copy(rs, rs + m, sin_out + i);
            std::copy(rc, rc + m, cos_out + i);
        });
    }

    struct Lanes {
        V x, y, z;
    };

    /// Backaction, rotation and dissipation. Returns the lanes whose
    /// normalization was positive.
    static unsigned advance(const StepConstants &k, Lanes &s, V readout, V fed) {
        const V one = V::broadcast(1.0);
        const V half = V::broadcast(0.5);

        const V e = simd::vexp(readout * V::broadcast(k.backaction_scale));
        const V ei = one / e;
        const V ch = half * (e + ei);
        const V sh = half * (e - ei);
        const V p = ch + s.z * sh;
        const unsigned ok = movemask(cmp_gt(p, V::broadcast(0.0)));
        V x = s.x / p;
        V y = s.y / p;
        V z = (s.z * ch + sh) / p;

        V sn, cs;
        simd::vsincos(V::broadcast(k.dt) * (V::broadcast(k.delta0) + V::broadcast(k.delta1) * fed), sn, cs);
        const V y2 = y * cs + z * sn;
        const V z2 = z * cs - y * sn;

        const V transverse = V::broadcast(k.transverse_decay);
        s.x = x * transverse;
        s.y = y2 * transverse;
        s.z = z2 * V::broadcast(k.z_decay) - V::broadcast(1.0 - k.z_decay);
        return ok;
    }

    /// Pulls lanes with |r|^2 > 1 back to the sphere; returns the lanes that
    /// were outside by more than round-off.
    static unsigned renormalize(Lanes &s) {
        const V one = V::broadcast(1.0);
        const V r2 = s.x * s.x + s.y * s.y + s.z * s.z;
        const auto outside = cmp_gt(r2, one);
        if (movemask(outside) == 0) {
            return 0;
        }
        const V scale = select(outside, one / sqrt(r2), one);
        s.x = s.x * scale;
        s.y = s.y * scale;
        s.z = s.z * scale;
        return movemask(cmp_gt(r2, V::broadcast(1.0 + kBlochSlack)));
    }

    static void step(const StepConstants &k, BlochState *states, const double *readouts, const double *fed,
                     std::size_t n) {
        alignas(64) double bx[W], by[W], bz[W], br[W], bf[W];
        for (std::size_t i = 0; i < n; i += W) {
            const std::size_t m = std::min(W, n - i);
            for (std::size_t l = 0; l < W; ++l) {
                const std::size_t j = i + std::min(l, m - 1);
                bx[l] = states[j].x;
                by[l] = states[j].y;
                bz[l] = states[j].z;
                br[l] = readouts[j];
                bf[l] = fed[j];
            }
            Lanes s{V::load(bx), V::load(by), V::load(bz)};
            const unsigned ok = advance(k, s, V::load(br), V::load(bf));
            if ((ok & ((1u << m) - 1)) != (1u << m) - 1) {
                throw std::domain_error("kernel step: non-positive normalization");
            }
            store(bx, s.x);
            store(by, s.y);
            store(bz, s.z);
            for (std::size_t l = 0; l < m; ++l) {
                states[i + l] = {bx[l], by[l], bz[l]};
            }
        }
    }

    static GroupResult run_group(const GroupJob &job) {
        if (job.constants == nullptr || job.active_lanes == 0 || job.active_lanes > W) {
            throw std::invalid_argument("run_group: bad lane count or missing constants");
        }
        const StepConstants &k = *job.constants;
        const unsigned active = (1u << job.active_lanes) - 1;

        // Idle lanes shadow the last active trajectory; their output is dropped.
        std::uint64_t trajectory[W];
        for (std::size_t l = 0; l < W; ++l) {
            trajectory[l] = job.first_trajectory + std::min<std::size_t>(l, job.active_lanes - 1);
        }

        Lanes s{V::broadcast(job.initial.x), V::broadcast(job.initial.y), V::broadcast(job.initial.z)};
        const V sigma = V::broadcast(k.readout_sigma);
        const V gain = V::broadcast(k.filter_gain);
        V filtered = V::broadcast(0.0);
        std::vector<double> ring(k.delay_steps * W, 0.0);
        std::size_t slot = 0;

        std::vector<double> normals(kBlockSteps * W);
        alignas(64) double u1[kBlockPairs * W], u2[kBlockPairs * W];
        alignas(64) double out[3][W];

        GroupResult result;
        std::size_t next_record = 0;
        auto emit_records = [&](std::uint64_t step) {
            while (next_record < job.record_steps.size() && job.record_steps[next_record] == step) {
                store(out[0], s.x);
                store(out[1], s.y);
                store(out[2], s.z);
                for (unsigned l = 0; l < job.active_lanes; ++l) {
                    job.sink->on_record(next_record, l, {out[0][l], out[1][l], out[2][l]});
                }
                ++next_record;
            }
        };

        for (std::uint64_t step = 0; step < job.total_steps; ++step) {
            emit_records(step);

            const std::size_t in_block = static_cast<std::size_t>(step % kBlockSteps);
            if (in_block == 0) {
                const std::uint64_t first_pair = step / 2;
                for (std::size_t p = 0; p < kBlockPairs; ++p) {
                    for (std::size_t l = 0; l < W; ++l) {
                        const UniformPair u = uniform_pair(job.seed, trajectory[l], first_pair + p);
                        u1[p * W + l] = u.u1;
                        u2[p * W + l] = u.u2;
                    }
                }
                for (std::size_t p = 0; p < kBlockPairs; ++p) {
                    V even, odd;
                    box_muller(V::load(u1 + p * W), V::load(u2 + p * W), even, odd);
                    store(normals.data() + (2 * p) * W, even);
                    store(normals.data() + (2 * p + 1) * W, odd);
                }
            }

            const V readout = s.z + sigma * V::load(normals.data() + in_block * W);
            if (job.emit_readouts) {
                store(out[0], readout);
                for (unsigned l = 0; l < job.active_lanes; ++l) {
                    job.sink->on_readout(l, step, out[0][l]);
                }
            }

            filtered = k.filter_passthrough ? readout : filtered + gain * (readout - filtered);
            V fed = filtered;
            if (k.delay_steps > 0) {
                double *cell = ring.data() + slot * W;
                fed = V::load(cell);
                store(cell, filtered);
                slot = slot + 1 == k.delay_steps ? 0 : slot + 1;
            }

            if ((advance(k, s, readout, fed) & active) != active) {
                throw std::domain_error("trajectory kernel: non-positive normalization");
            }
            const unsigned outside = renormalize(s) & active;
            if (outside != 0) {
                for (unsigned l = 0; l < job.active_lanes; ++l) {
                    result.renormalizations[l] += (outside >> l) & 1u;
                }
            }
        }
        emit_records(job.total_steps);
        return result;
    }

    static KernelTable table(Isa isa) {
        return {isa, W, &fill_normals, &exp, &log, &sincos, &step, &run_group};
    }
};

}  // namespace qfb::kernels

#endif
