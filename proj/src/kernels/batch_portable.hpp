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

#ifndef QFB_KERNELS_BATCH_PORTABLE_HPP
#define QFB_KERNELS_BATCH_PORTABLE_HPP

// Plain-array batch of N doubles. Every operation is one correctly rounded
// IEEE operation per lane, so a lane computes exactly what the intrinsic
// versions compute.

#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>

namespace qfb::simd {

template <std::size_t N>
struct PortableMask {
    std::array<bool, N> m;

    friend PortableMask operator&(const PortableMask &a, const PortableMask &b) {
        PortableMask r;
        for (std::size_t i = 0; i < N; ++i) r.m[i] = a.m[i] && b.m[i];
        return r;
    }
    friend PortableMask operator|(const PortableMask &a, const PortableMask &b) {
        PortableMask r;
        for (std::size_t i = 0; i < N; ++i) r.m[i] = a.m[i] || b.m[i];
        return r;
    }
    friend unsigned movemask(const PortableMask &a) {
        unsigned bits = 0;
        for (std::size_t i = 0; i < N; ++i) bits |= static_cast<unsigned>(a.m[i]) << i;
        return bits;
    }
};

template <std::size_t N>
struct PortableBits {
    std::array<std::uint64_t, N> u;

    static PortableBits broadcast(std::uint64_t value) {
        PortableBits r;
        r.u.fill(value);
        return r;
    }
    friend PortableBits operator&(const PortableBits &a, const PortableBits &b) {
        PortableBits r;
        for (std::size_t i = 0; i < N; ++i) r.u[i] = a.u[i] & b.u[i];
        return r;
    }
    friend PortableBits operator|(const PortableBits &a, const PortableBits &b) {
        PortableBits r;
        for (std::size_t i = 0; i < N; ++i) r.u[i] = a.u[i] | b.u[i];
        return r;
    }
    template <int k>
    friend PortableBits shift_left(const PortableBits &a) {
        PortableBits r;
        for (std::size_t i = 0; i < N; ++i) r.u[i] = a.u[i] << k;
        return r;
    }
    template <int k>
    friend PortableBits shift_right(const PortableBits &a) {
        PortableBits r;
        for (std::size_t i = 0; i < N; ++i) r.u[i] = a.u[i] >> k;
        return r;
    }
};

template <std::size_t N>
struct Portable {
    static constexpr std::size_t width = N;
    using Mask = PortableMask<N>;
    using Bits = PortableBits<N>;

    std::array<double, N> v;

    static Portable broadcast(double value) {
        Portable r;
        r.v.fill(value);
        return r;
    }
    static Portable load(const double *p) {
        Portable r;
        for (std::size_t i = 0; i < N; ++i) r.v[i] = p[i];
        return r;
    }
    friend void store(double *p, const Portable &a) {
        for (std::size_t i = 0; i < N; ++i) p[i] = a.v[i];
    }

#define QFB_PORTABLE_BINARY(op)                                      \
    friend Portable operator op(const Portable &a, const Portable &b) { \
        Portable r;                                                  \
        for (std::size_t i = 0; i < N; ++i) r.v[i] = a.v[i] op b.v[i]; \
        return r;                                                    \
    }
    QFB_PORTABLE_BINARY(+)
    QFB_PORTABLE_BINARY(-)
    QFB_PORTABLE_BINARY(*)
    QFB_PORTABLE_BINARY(/)
#undef QFB_PORTABLE_BINARY

#define QFB_PORTABLE_COMPARE(name, op)                            \
    friend Mask name(const Portable &a, const Portable &b) {      \
        Mask r;                                                   \
        for (std::size_t i = 0; i < N; ++i) r.m[i] = a.v[i] op b.v[i]; \
        return r;                                                 \
    }
    QFB_PORTABLE_COMPARE(cmp_lt, <)
    QFB_PORTABLE_COMPARE(cmp_le, <=)
    QFB_PORTABLE_COMPARE(cmp_gt, >)
    QFB_PORTABLE_COMPARE(cmp_eq, ==)
#undef QFB_PORTABLE_COMPARE

    friend Portable sqrt(const Portable &a) {
        Portable r;
        for (std::size_t i = 0; i < N; ++i) r.v[i] = std::sqrt(a.v[i]);
        return r;
    }
    friend Portable floor(const Portable &a) {
        Portable r;
        for (std::size_t i = 0; i < N; ++i) r.v[i] = std::floor(a.v[i]);
        return r;
    }
    /// Round half to even (the default floating-point environment).
    friend Portable round_even(const Portable &a) {
        Portable r;
        for (std::size_t i = 0; i < N; ++i) r.v[i] = std::nearbyint(a.v[i]);
        return r;
    }
    friend Portable min(const Portable &a, const Portable &b) {
        Portable r;
        for (std::size_t i = 0; i < N; ++i) r.v[i] = b.v[i] < a.v[i] ? b.v[i] : a.v[i];
        return r;
    }
    friend Portable max(const Portable &a, const Portable &b) {
        Portable r;
        for (std::size_t i = 0; i < N; ++i) r.v[i] = a.v[i] < b.v[i] ? b.v[i] : a.v[i];
        return r;
    }
    friend Portable select(const Mask &m, const Portable &a, const Portable &b) {
        Portable r;
        for (std::size_t i = 0; i < N; ++i) r.v[i] = m.m[i] ? a.v[i] : b.v[i];
        return r;
    }
    friend Bits to_bits(const Portable &a) {
        Bits r;
        for (std::size_t i = 0; i < N; ++i) r.u[i] = std::bit_cast<std::uint64_t>(a.v[i]);
        return r;
    }
    static Portable from_bits(const Bits &a) {
        Portable r;
        for (std::size_t i = 0; i < N; ++i) r.v[i] = std::bit_cast<double>(a.u[i]);
        return r;
    }
};

}  // namespace qfb::simd

#endif
