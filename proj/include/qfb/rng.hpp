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

#ifndef QFB_RNG_HPP
#define QFB_RNG_HPP

#include <array>
#include <cstdint>
#include <span>

namespace qfb {

/// Philox4x32-10 counter-based generator.
///
/// A pure function of (counter, key): any trajectory/step can be sampled
/// without touching any other, which is what makes ensembles independent of
/// scheduling.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static constexpr Counter block(Counter ctr, Key key) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        return ctr;
    }
};

/// The pair of 53-bit uniforms feeding one Box-Muller transform.
/// u1 lies in (0, 1] so that log(u1) is finite; u2 lies in [0, 1).
struct UniformPair {
    double u1;
    double u2;
};

/// Uniform pair number `pair` of trajectory `trajectory` under `seed`.
/// Counter = (pair, trajectory) as 64-bit halves, key = seed.
constexpr UniformPair uniform_pair(std::uint64_t seed, std::uint64_t trajectory, std::uint64_t pair) {
    const Philox4x32::Counter ctr{static_cast<std::uint32_t>(pair), static_cast<std::uint32_t>(pair >> 32),
                                  static_cast<std::uint32_t>(trajectory),
                                  static_cast<std::uint32_t>(trajectory >> 32)};
    const Philox4x32::Key key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    const auto w = Philox4x32::block(ctr, key);
    const std::uint64_t a = ((std::uint64_t{w[0]} << 32) | w[1]) >> 11;
    const std::uint64_t b = ((std::uint64_t{w[2]} << 32) | w[3]) >> 11;
    constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
    return {static_cast<double>(a + 1) * kScale, static_cast<double>(b) * kScale};
}

/// Standard normals for steps [first_step, first_step + out.size()) of one
/// trajectory. Step k uses Box-Muller pair k/2 (cosine branch for even k, sine
/// branch for odd k), so the value of step k never depends on the window.
///
/// Uses the active SIMD kernel; all kernels produce bit-identical output.
void fill_normals(std::uint64_t seed, std::uint64_t trajectory, std::uint64_t first_step, std::span<double> out);

/// Sequential view over fill_normals for one trajectory.
class NormalStream {
   public:
    NormalStream(std::uint64_t seed, std::uint64_t trajectory) : seed_(seed), trajectory_(trajectory) {}

    double next();
    std::uint64_t position() const { return step_; }

   private:
    static constexpr std::size_t kBlock = 256;

    std::uint64_t seed_;
    std::uint64_t trajectory_;
    std::uint64_t step_ = 0;
    std::uint64_t block_start_ = 0;
    bool filled_ = false;
    std::array<double, kBlock> buffer_{};
};

}  // namespace qfb

#endif
