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

#ifndef QFB_KERNELS_VMATH_HPP
#define QFB_KERNELS_VMATH_HPP

// exp, log and sincos over any batch type, from the Cephes and fdlibm
// double-precision approximations. Built only from +, -, *, /, floor, round and bit
// moves, so every batch type gives the same bits lane for lane.

#include <cstddef>
#include <cstdint>

namespace qfb::simd {

template <class V, std::size_t n>
inline V horner(V x, const double (&c)[n]) {
    V r = V::broadcast(c[0]);
    for (std::size_t k = 1; k < n; ++k) {
        r = r * x + V::broadcast(c[k]);
    }
    return r;
}

/// 2^n for integral n in [-1022, 1023].
template <class V>
inline V exp2_integral(V n) {
    const V biased = n + V::broadcast(4503599627370496.0 + 1023.0);  // 2^52 + bias
    return V::from_bits(shift_left<52>(to_bits(biased)));
}

/// exp(x); arguments are clamped to [-708, 709].
template <class V>
inline V vexp(V x) {
    static constexpr double kP[] = {1.26177193074810590878e-4, 3.02994407707441961300e-2, 9.99999999999999999910e-1};
    static constexpr double kQ[] = {3.00198505138664455042e-6, 2.52448340349684104192e-3, 2.27265548208155028766e-1,
                                    2.00000000000000000009e0};
    x = min(max(x, V::broadcast(-708.0)), V::broadcast(709.0));
    const V n = floor(x * V::broadcast(1.4426950408889634073599) + V::broadcast(0.5));
    x = x - n * V::broadcast(6.93145751953125e-1);
    x = x - n * V::broadcast(1.42860682030941723212e-6);
    const V xx = x * x;
    const V px = x * horner(xx, kP);
    const V r = px / (horner(xx, kQ) - px);
    const V one = V::broadcast(1.0);
    return (one + (r + r)) * exp2_integral(n);
}

/// Natural log for positive normal x: log(1 + f) = f - s (f - R(s^2)) with
/// s = f / (2 + f), on the reduced range sqrt(1/2) <= 1 + f < sqrt(2).
template <class V>
inline V vlog(V x) {
    using Bits = typename V::Bits;
    const Bits bits = to_bits(x);
    const Bits magic = Bits::broadcast(0x4330000000000000ull);  // 2^52 as a double
    V k = V::from_bits(shift_right<52>(bits) | magic) - V::broadcast(4503599627370496.0 + 1022.0);
    V m = V::from_bits((bits & Bits::broadcast(0x000fffffffffffffull)) | Bits::broadcast(0x3fe0000000000000ull));

    const V one = V::broadcast(1.0);
    const auto small = cmp_lt(m, V::broadcast(0.70710678118654752440));
    k = k - select(small, one, V::broadcast(0.0));
    const V f = select(small, (m + m) - one, m - one);

    const V hfsq = V::broadcast(0.5) * f * f;
    const V s = f / (V::broadcast(2.0) + f);
    const V z = s * s;
    const V w = z * z;
    const V t1 = w * (V::broadcast(3.999999999940941908e-01) +
                      w * (V::broadcast(2.222219843214978396e-01) + w * V::broadcast(1.531383769920937332e-01)));
    const V t2 = z * (V::broadcast(6.666666666666735130e-01) +
                      w * (V::broadcast(2.857142874366239149e-01) +
                           w * (V::broadcast(1.818357216161805012e-01) + w * V::broadcast(1.479819860511658591e-01))));
    const V r = t2 + t1;
    return k * V::broadcast(6.93147180369123816490e-01) -
           ((hfsq - (s * (hfsq + r) + k * V::broadcast(1.90821492927058770002e-10))) - f);
}

/// sin(x) and cos(x) with a three-part pi/2 reduction; accurate for |x| below about 1e8.
template <class V>
inline void vsincos(V x, V &sin_out, V &cos_out) {
    static constexpr double kSin[] = {1.58962301576546568060e-10, -2.50507477628578072866e-8, 2.75573136213857245213e-6,
                                      -1.98412698295895385996e-4, 8.33333333332211858878e-3,  -1.66666666666666307295e-1};
    static constexpr double kCos[] = {-1.13585365213876817300e-11, 2.08757008419747316778e-9, -2.75573141792967388112e-7,
                                      2.48015872888517045348e-5,   -1.38888888888730564116e-3, 4.16666666666665929218e-2};
    const V q = floor(x * V::broadcast(0.63661977236758134308) + V::broadcast(0.5));
    V z = x - q * V::broadcast(2.0 * 7.85398125648498535156e-1);
    z = z - q * V::broadcast(2.0 * 3.77489470793079817668e-8);
    z = z - q * V::broadcast(2.0 * 2.69515142907905952645e-15);
    const V zz = z * z;
    const V s = z + z * zz * horner(zz, kSin);
    const V c = (V::broadcast(1.0) - V::broadcast(0.5) * zz) + zz * zz * horner(zz, kCos);

    const V quadrant = q - V::broadcast(4.0) * floor(q * V::broadcast(0.25));
    const auto q1 = cmp_eq(quadrant, V::broadcast(1.0));
    const auto q2 = cmp_eq(quadrant, V::broadcast(2.0));
    const auto q3 = cmp_eq(quadrant, V::broadcast(3.0));
    const auto swap = q1 | q3;
    const V plus = V::broadcast(1.0);
    const V minus = V::broadcast(-1.0);
    sin_out = select(swap, c, s) * select(q2 | q3, minus, plus);
    cos_out = select(swap, s, c) * select(q1 | q2, minus, plus);
}

}  // namespace qfb::simd

#endif
