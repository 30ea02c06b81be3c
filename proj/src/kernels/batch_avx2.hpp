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

#ifndef QFB_KERNELS_BATCH_AVX2_HPP
#define QFB_KERNELS_BATCH_AVX2_HPP

// Four-lane AVX2 batch. Include only from a translation unit that has enabled
// the avx2 target (see kernel_avx2.cpp).

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

namespace qfb::simd {

struct Avx2Mask {
    __m256d m;

    friend Avx2Mask operator&(Avx2Mask a, Avx2Mask b) { return {_mm256_and_pd(a.m, b.m)}; }
    friend Avx2Mask operator|(Avx2Mask a, Avx2Mask b) { return {_mm256_or_pd(a.m, b.m)}; }
    friend unsigned movemask(Avx2Mask a) { return static_cast<unsigned>(_mm256_movemask_pd(a.m)); }
};

struct Avx2Bits {
    __m256i u;

    static Avx2Bits broadcast(std::uint64_t value) { return {_mm256_set1_epi64x(static_cast<long long>(value))}; }
    friend Avx2Bits operator&(Avx2Bits a, Avx2Bits b) { return {_mm256_and_si256(a.u, b.u)}; }
    friend Avx2Bits operator|(Avx2Bits a, Avx2Bits b) { return {_mm256_or_si256(a.u, b.u)}; }
    template <int k>
    friend Avx2Bits shift_left(Avx2Bits a) {
        return {_mm256_slli_epi64(a.u, k)};
    }
    template <int k>
    friend Avx2Bits shift_right(Avx2Bits a) {
        return {_mm256_srli_epi64(a.u, k)};
    }
};

struct Avx2 {
    static constexpr std::size_t width = 4;
    using Mask = Avx2Mask;
    using Bits = Avx2Bits;

    __m256d v;

    static Avx2 broadcast(double value) { return {_mm256_set1_pd(value)}; }
    static Avx2 load(const double *p) { return {_mm256_loadu_pd(p)}; }
    friend void store(double *p, Avx2 a) { _mm256_storeu_pd(p, a.v); }

    friend Avx2 operator+(Avx2 a, Avx2 b) { return {_mm256_add_pd(a.v, b.v)}; }
    friend Avx2 operator-(Avx2 a, Avx2 b) { return {_mm256_sub_pd(a.v, b.v)}; }
    friend Avx2 operator*(Avx2 a, Avx2 b) { return {_mm256_mul_pd(a.v, b.v)}; }
    friend Avx2 operator/(Avx2 a, Avx2 b) { return {_mm256_div_pd(a.v, b.v)}; }

    friend Mask cmp_lt(Avx2 a, Avx2 b) { return {_mm256_cmp_pd(a.v, b.v, _CMP_LT_OQ)}; }
    friend Mask cmp_le(Avx2 a, Avx2 b) { return {_mm256_cmp_pd(a.v, b.v, _CMP_LE_OQ)}; }
    friend Mask cmp_gt(Avx2 a, Avx2 b) { return {_mm256_cmp_pd(a.v, b.v, _CMP_GT_OQ)}; }
    friend Mask cmp_eq(Avx2 a, Avx2 b) { return {_mm256_cmp_pd(a.v, b.v, _CMP_EQ_OQ)}; }

    friend Avx2 sqrt(Avx2 a) { return {_mm256_sqrt_pd(a.v)}; }
    friend Avx2 floor(Avx2 a) { return {_mm256_floor_pd(a.v)}; }
    friend Avx2 round_even(Avx2 a) { return {_mm256_round_pd(a.v, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC)}; }
    // Operand order matches the portable `b < a ? b : a` on NaN.
    friend Avx2 min(Avx2 a, Avx2 b) { return {_mm256_min_pd(b.v, a.v)}; }
    friend Avx2 max(Avx2 a, Avx2 b) { return {_mm256_max_pd(b.v, a.v)}; }
    friend Avx2 select(Mask m, Avx2 a, Avx2 b) { return {_mm256_blendv_pd(b.v, a.v, m.m)}; }
    friend Bits to_bits(Avx2 a) { return {_mm256_castpd_si256(a.v)}; }
    static Avx2 from_bits(Bits a) { return {_mm256_castsi256_pd(a.u)}; }
};

}  // namespace qfb::simd

#endif
