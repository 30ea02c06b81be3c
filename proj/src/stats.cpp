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

#include "qfb/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qfb {

namespace {

constexpr double kFixedScale = 1152921504606846976.0;  // 2^60

}  // namespace

void ExactSum::add(double value) {
    if (!(std::abs(value) < 8.0)) {
        throw std::out_of_range("ExactSum: value outside (-8, 8)");
    }
    acc_ += static_cast<__int128>(std::llrint(value * kFixedScale));
}

double ExactSum::value() const {
    return static_cast<double>(acc_) / kFixedScale;
}

MeanSeries::MeanSeries(std::vector<double> times)
    : times_(std::move(times)), sums_(times_.size()), counts_(times_.size(), 0) {
}

void MeanSeries::add(std::size_t index, const BlochState &state) {
    auto &s = sums_[index];
    s[0].add(state.x);
    s[1].add(state.y);
    s[2].add(state.z);
    s[3].add(state.x * state.x);
    s[4].add(state.y * state.y);
    s[5].add(state.z * state.z);
    ++counts_[index];
}

void MeanSeries::merge(const MeanSeries &other) {
    if (other.times_ != times_) {
        throw std::invalid_argument("MeanSeries::merge: time grids differ");
    }
    for (std::size_t i = 0; i < sums_.size(); ++i) {
        for (std::size_t c = 0; c < 6; ++c) {
            sums_[i][c].merge(other.sums_[i][c]);
        }
        counts_[i] += other.counts_[i];
    }
}

BlochState MeanSeries::mean(std::size_t index) const {
    const double n = static_cast<double>(counts_[index]);
    if (n == 0) {
        return {};
    }
    const auto &s = sums_[index];
    return {s[0].value() / n, s[1].value() / n, s[2].value() / n};
}

BlochState MeanSeries::std_error(std::size_t index) const {
    const std::uint64_t count = counts_[index];
    if (count < 2) {
        return {};
    }
    const double n = static_cast<double>(count);
    const auto &s = sums_[index];
    double out[3];
    for (int c = 0; c < 3; ++c) {
        const double m = s[c].value() / n;
        const double var = std::max(0.0, (s[c + 3].value() / n - m * m) * n / (n - 1.0));
        out[c] = std::sqrt(var / n);
    }
    return {out[0], out[1], out[2]};
}

std::vector<BlochState> MeanSeries::means() const {
    std::vector<BlochState> out(size());
    for (std::size_t i = 0; i < size(); ++i) {
        out[i] = mean(i);
    }
    return out;
}

MeanSeries accumulate_mean(std::span<const TrajectoryRecord> records) {
    if (records.empty()) {
        throw std::invalid_argument("accumulate_mean: no records");
    }
    MeanSeries series(records.front().times);
    for (const auto &record : records) {
        if (record.times != records.front().times || record.states.size() != record.times.size()) {
            throw std::invalid_argument("accumulate_mean: records have mismatched time grids");
        }
        for (std::size_t i = 0; i < record.states.size(); ++i) {
            series.add(i, record.states[i]);
        }
    }
    return series;
}

HistogramGrid::HistogramGrid(std::size_t bins) : bins_(bins), counts_(bins * bins, 0) {
    if (bins == 0) {
        throw std::invalid_argument("HistogramGrid: bins must be positive");
    }
}

std::size_t HistogramGrid::bin_of(double value) const {
    const double k = std::floor((value + 1.0) / bin_width());
    if (!(k > 0.0)) {
        return 0;
    }
    return std::min(static_cast<std::size_t>(k), bins_ - 1);
}

void HistogramGrid::add(double y, double z) {
    ++counts_[bin_of(y) * bins_ + bin_of(z)];
    ++n_;
    sum_y_.add(y);
    sum_z_.add(z);
    sum_r2_.add(y * y + z * z);
}

void HistogramGrid::merge(const HistogramGrid &other) {
    if (other.bins_ != bins_) {
        throw std::invalid_argument("HistogramGrid::merge: bin counts differ");
    }
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        counts_[i] += other.counts_[i];
    }
    n_ += other.n_;
    sum_y_.merge(other.sum_y_);
    sum_z_.merge(other.sum_z_);
    sum_r2_.merge(other.sum_r2_);
}

double HistogramGrid::mean_y() const {
    return n_ == 0 ? 0.0 : sum_y_.value() / static_cast<double>(n_);
}

double HistogramGrid::mean_z() const {
    return n_ == 0 ? 0.0 : sum_z_.value() / static_cast<double>(n_);
}

double HistogramGrid::mean_squared_distance(double cy, double cz) const {
    if (n_ == 0) {
        return 0.0;
    }
    const double n = static_cast<double>(n_);
    const double m2 = sum_r2_.value() / n - 2.0 * (cy * sum_y_.value() + cz * sum_z_.value()) / n + cy * cy + cz * cz;
    return std::max(0.0, m2);
}

HistogramGrid build_histogram(std::span<const BlochState> samples, std::size_t bins) {
    HistogramGrid grid(bins);
    for (const auto &s : samples) {
        grid.add(s);
    }
    return grid;
}

namespace {

std::vector<double> box_smooth(const HistogramGrid &grid, std::size_t radius) {
    const std::size_t n = grid.bins();
    std::vector<double> out(n * n, 0.0);
    for (std::size_t iy = 0; iy < n; ++iy) {
        for (std::size_t iz = 0; iz < n; ++iz) {
            const std::size_t y0 = iy >= radius ? iy - radius : 0;
            const std::size_t z0 = iz >= radius ? iz - radius : 0;
            const std::size_t y1 = std::min(n - 1, iy + radius);
            const std::size_t z1 = std::min(n - 1, iz + radius);
            std::uint64_t total = 0;
            for (std::size_t a = y0; a <= y1; ++a) {
                for (std::size_t b = z0; b <= z1; ++b) {
                    total += grid.count(a, b);
                }
            }
            out[iy * n + iz] = static_cast<double>(total);
        }
    }
    return out;
}

}  // namespace

PeakReport find_peak(const HistogramGrid &grid, const PeakOptions &options) {
    if (grid.n_samples() == 0) {
        throw std::invalid_argument("find_peak: empty histogram");
    }
    const std::size_t n = grid.bins();
    const auto &counts = grid.counts();

    PeakReport report;
    report.peak_count = *std::max_element(counts.begin(), counts.end());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] == report.peak_count) {
            report.ties.push_back({i / n, i % n});
        }
    }
    report.peak = report.ties.front();
    report.y_P = grid.center(report.peak.iy);
    report.z_P = grid.center(report.peak.iz);
    report.theta_P = std::atan2(report.y_P, report.z_P);
    report.R_P = std::hypot(report.y_P, report.z_P);
    const double msd = grid.mean_squared_distance(report.y_P, report.z_P);
    report.sigma = std::sqrt(0.5 * msd);
    report.rms_distance = std::sqrt(msd);

    const std::vector<double> smooth = box_smooth(grid, options.smoothing_radius);
    const double cut = options.lobe_threshold * *std::max_element(smooth.begin(), smooth.end());
    std::vector<int> label(n * n, -1);
    const double total = static_cast<double>(grid.n_samples());
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < n * n; ++start) {
        if (label[start] >= 0 || !(smooth[start] >= cut) || smooth[start] == 0.0) {
            continue;
        }
        const int id = static_cast<int>(report.lobes.size());
        label[start] = id;
        stack.assign(1, start);
        double wy = 0.0, wz = 0.0;
        std::uint64_t mass = 0, best = 0;
        std::size_t members = 0, best_index = start;
        while (!stack.empty()) {
            const std::size_t cell = stack.back();
            stack.pop_back();
            const std::size_t iy = cell / n, iz = cell % n;
            const std::uint64_t c = counts[cell];
            ++members;
            mass += c;
            wy += static_cast<double>(c) * grid.center(iy);
            wz += static_cast<double>(c) * grid.center(iz);
            if (c > best || (c == best && cell < best_index)) {
                best = c;
                best_index = cell;
            }
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dz = -1; dz <= 1; ++dz) {
                    const std::ptrdiff_t ny = static_cast<std::ptrdiff_t>(iy) + dy;
                    const std::ptrdiff_t nz = static_cast<std::ptrdiff_t>(iz) + dz;
                    if (ny < 0 || nz < 0 || ny >= static_cast<std::ptrdiff_t>(n) ||
                        nz >= static_cast<std::ptrdiff_t>(n)) {
                        continue;
                    }
                    const std::size_t next = static_cast<std::size_t>(ny) * n + static_cast<std::size_t>(nz);
                    if (label[next] < 0 && smooth[next] >= cut) {
                        label[next] = id;
                        stack.push_back(next);
                    }
                }
            }
        }
        Lobe lobe;
        lobe.y = mass > 0 ? wy / static_cast<double>(mass) : grid.center(best_index / n);
        lobe.z = mass > 0 ? wz / static_cast<double>(mass) : grid.center(best_index % n);
        lobe.theta = std::atan2(lobe.y, lobe.z);
        lobe.radius = std::hypot(lobe.y, lobe.z);
        lobe.mass = static_cast<double>(mass) / total;
        lobe.n_bins = members;
        lobe.peak = {best_index / n, best_index % n};
        report.lobes.push_back(lobe);
    }
    std::stable_sort(report.lobes.begin(), report.lobes.end(),
                     [](const Lobe &a, const Lobe &b) { return a.mass > b.mass; });
    return report;
}

}  // namespace qfb
