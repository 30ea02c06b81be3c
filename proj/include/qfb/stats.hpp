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

#ifndef QFB_STATS_HPP
#define QFB_STATS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qfb/bloch.hpp"
#include "qfb/record.hpp"

namespace qfb {

/// Exact sum of doubles in [-8, 8], held as 128-bit fixed point with 2^-60
/// resolution. Addition is exact, so any grouping of the same samples gives
/// the same total.
class ExactSum {
   public:
    void add(double value);
    void merge(const ExactSum &other) { acc_ += other.acc_; }
    double value() const;
    bool operator==(const ExactSum &) const = default;

   private:
    __int128 acc_ = 0;
};

/// Pointwise mean of the Bloch vector over an ensemble, on a fixed time grid.
class MeanSeries {
   public:
    MeanSeries() = default;
    explicit MeanSeries(std::vector<double> times);

    void add(std::size_t index, const BlochState &state);
    /// Throws std::invalid_argument if the time grids differ.
    void merge(const MeanSeries &other);

    std::size_t size() const { return times_.size(); }
    const std::vector<double> &times() const { return times_; }
    std::uint64_t count(std::size_t index) const { return counts_[index]; }
    BlochState mean(std::size_t index) const;
    /// Standard error of each coordinate of the mean.
    BlochState std_error(std::size_t index) const;
    std::vector<BlochState> means() const;

    bool operator==(const MeanSeries &) const = default;

   private:
    std::vector<double> times_;
    std::vector<std::array<ExactSum, 6>> sums_;  // x, y, z, x^2, y^2, z^2
    std::vector<std::uint64_t> counts_;
};

/// Mean over aligned records; throws std::invalid_argument on mismatched
/// time grids or an empty input.
MeanSeries accumulate_mean(std::span<const TrajectoryRecord> records);

/// Uniform 2D histogram of (y, z) over [-1, 1]^2, plus exact first and
/// second moments of every sample so spreads need no second pass.
class HistogramGrid {
   public:
    explicit HistogramGrid(std::size_t bins = 100);

    void add(double y, double z);
    void add(const BlochState &state) { add(state.y, state.z); }
    /// Throws std::invalid_argument on a different bin count.
    void merge(const HistogramGrid &other);

    std::size_t bins() const { return bins_; }
    double bin_width() const { return 2.0 / static_cast<double>(bins_); }
    double edge(std::size_t k) const { return -1.0 + static_cast<double>(k) * bin_width(); }
    double center(std::size_t k) const { return -1.0 + (static_cast<double>(k) + 0.5) * bin_width(); }
    /// Bin of a coordinate; values on or beyond +-1 go to the outer bins.
    std::size_t bin_of(double value) const;

    std::uint64_t count(std::size_t iy, std::size_t iz) const { return counts_[iy * bins_ + iz]; }
    const std::vector<std::uint64_t> &counts() const { return counts_; }
    std::uint64_t n_samples() const { return n_; }

    double mean_y() const;
    double mean_z() const;
    /// Mean of (y - cy)^2 + (z - cz)^2 over all samples.
    double mean_squared_distance(double cy, double cz) const;

    bool operator==(const HistogramGrid &) const = default;

   private:
    std::size_t bins_;
    std::vector<std::uint64_t> counts_;  // row-major, y index major
    std::uint64_t n_ = 0;
    ExactSum sum_y_, sum_z_, sum_r2_;
};

HistogramGrid build_histogram(std::span<const BlochState> samples, std::size_t bins = 100);

struct Bin {
    std::size_t iy;
    std::size_t iz;
    bool operator==(const Bin &) const = default;
};

struct Lobe {
    double y;          // count-weighted centroid of the member bins
    double z;
    double theta;
    double radius;
    double mass;       // fraction of all samples in the member bins
    std::size_t n_bins;
    Bin peak;          // highest-count member bin
};

struct PeakOptions {
    /// Lobe membership: smoothed count >= threshold * max smoothed count.
    double lobe_threshold = 0.10;
    /// Half-width of the box filter applied before thresholding; 0 uses raw counts.
    std::size_t smoothing_radius = 1;
};

struct PeakReport {
    Bin peak;                // maximal-count bin (first in row-major order on ties)
    std::vector<Bin> ties;   // every bin sharing the maximal count, including `peak`
    std::uint64_t peak_count = 0;
    double y_P = 0.0;
    double z_P = 0.0;
    double theta_P = 0.0;
    double R_P = 0.0;
    /// Per-axis RMS deviation from the peak bin center, sqrt(<|p - c|^2> / 2).
    double sigma = 0.0;
    /// RMS Euclidean distance from the peak bin center, sqrt(<|p - c|^2>).
    double rms_distance = 0.0;
    std::vector<Lobe> lobes;  // sorted by decreasing mass

    bool tied() const { return ties.size() > 1; }
};

/// Throws std::invalid_argument on an empty grid.
PeakReport find_peak(const HistogramGrid &grid, const PeakOptions &options = {});

}  // namespace qfb

#endif
