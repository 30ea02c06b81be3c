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

#ifndef QFB_BLOCH_HPP
#define QFB_BLOCH_HPP

#include <cmath>

namespace qfb {

/// Slack allowed on |r| <= 1 before a state counts as unphysical.
inline constexpr double kBlochSlack = 1e-12;

/// Qubit state as Bloch coordinates x = Tr(sx rho), y = Tr(sy rho), z = Tr(sz rho).
///
/// The feedback only rotates in the yz-plane, so the polar form used throughout
/// is (R, theta) with y = R sin(theta), z = R cos(theta); theta is measured from
/// the excited pole (+z) toward +y.
struct BlochState {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    static BlochState from_polar(double theta, double radius) {
        return {0.0, radius * std::sin(theta), radius * std::cos(theta)};
    }

    double norm_squared() const { return x * x + y * y + z * z; }
    double radius() const { return std::sqrt(norm_squared()); }
    double theta() const { return std::atan2(y, z); }

    /// Tr(rho^2).
    double purity() const { return 0.5 * (1.0 + norm_squared()); }
    /// Overlap with the pure state at the same polar angle.
    double fidelity() const { return 0.5 * (1.0 + radius()); }

    bool is_physical() const { return norm_squared() <= 1.0 + kBlochSlack; }

    bool operator==(const BlochState &) const = default;
};

inline double distance(const BlochState &a, const BlochState &b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace qfb

#endif
