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

#ifndef QFB_KERNELS_BATCH_NEON_HPP
#define QFB_KERNELS_BATCH_NEON_HPP

// Two-lane AArch64 NEON batch.

#include <arm_neon.h>

#include <cstddef>
#include <cstdint>

namespace qfb::simd {

struct NeonMask {
    uint64x2_t m;

    friend NeonMask operator&(NeonMask a, NeonMask b) { return {vandq_u64(a.m, b.m)}; }
    friend NeonMask operator|(NeonMask a, NeonMask b) { return {vorrq_u64(a.m, b.m)}; }
    friend unsigned movemask(NeonMask a) {
        return static_cast<unsigned>(vgetq_lane_u64(a.m, 0) & 1u) | static_cast<unsigned>((vgetq_lane_u64(a.m, 1) & 1u) << 1);
    }
};

struct NeonBits {
    uint64x2_t u;

    static NeonBits broadcast(std::uint64_t value) { return {vdupq_n_u64(value)}; }
    friend NeonBits operator&(NeonBits a, NeonBits b) { return {vandq_u64(a.u, b.u)}; }
    friend NeonBits operator|(NeonBits a, NeonBits b) { return {vorrq_u64(a.u, b.u)}; }
    template <int k>
    friend NeonBits shift_left(NeonBits a) {
        return {vshlq_n_u64(a.u, k)};
    }
    template <int k>
    friend NeonBits shift_right(NeonBits a) {
        return {vshrq_n_u64(a.u, k)};
    }
};

struct Neon {
    static constexpr std::size_t width = 2;
    using Mask = NeonMask;
    using Bits = NeonBits;

    float64x2_t v;

    static Neon broadcast(double value) { return {vdupq_n_f64(value)}; }
    static Neon load(const double *p) { return {vld1q_f64(p)}; }
    friend void store(double *p, Neon a) { vst1q_f64(p, a.v); }

    friend Neon operator+(Neon a, Neon b) { return {vaddq_f64(a.v, b.v)}; }
    friend Neon operator-(Neon a, Neon b) { return {vsubq_f64(a.v, b.v)}; }
    friend Neon operator*(Neon a, Neon b) { return {vmulq_f64(a.v, b.v)}; }
    friend Neon operator/(Neon a, Neon b) { return {vdivq_f64(a.v, b.v)}; }

    friend Mask cmp_lt(Neon a, Neon b) { return {vcltq_f64(a.v, b.v)}; }
    friend Mask cmp_le(Neon a, Neon b) { return {vcleq_f64(a.v, b.v)}; }
    friend Mask cmp_gt(Neon a, Neon b) { return {vcgtq_f64(a.v, b.v)}; }
    friend Mask cmp_eq(Neon a, Neon b) { return {vceqq_f64(a.v, b.v)}; }

    friend Neon sqrt(Neon a) { return {vsqrtq_f64(a.v)}; }
    friend Neon floor(Neon a) { return {vrndmq_f64(a.v)}; }
    friend Neon round_even(Neon a) { return {vrndnq_f64(a.v)}; }
    friend Neon select(Mask m, Neon a, Neon b) { return {vbslq_f64(m.m, a.v, b.v)}; }
    friend Neon min(Neon a, Neon b) { return select(cmp_lt(b, a), b, a); }
    friend Neon max(Neon a, Neon b) { return select(cmp_lt(a, b), b, a); }
    friend Bits to_bits(Neon a) { return {vreinterpretq_u64_f64(a.v)}; }
    static Neon from_bits(Bits a) { return {vreinterpretq_f64_u64(a.u)}; }
};

}  // namespace qfb::simd

#endif
