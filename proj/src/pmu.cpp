#include "algas/pmu.hpp"

#include <cstdlib>
#include <stdexcept>

namespace algas {

PmuFrameStats frame_stats(const std::array<std::uint16_t, kPmuFrameSize>& radar,
                          const std::array<std::uint16_t, kPmuFrameSize>& lidar) {
    PmuFrameStats stats;
    std::int64_t abs_diff_sum = 0;
    std::int64_t radar_sum = 0;
    std::int64_t lidar_sum = 0;
    for (int i = 0; i < kPmuFrameSize; ++i) {
        const auto k = static_cast<std::size_t>(i);
        abs_diff_sum += std::abs(static_cast<std::int32_t>(radar[k]) -
                                 static_cast<std::int32_t>(lidar[k]));
        radar_sum += radar[k];
        lidar_sum += lidar[k];
    }
    stats.mean_abs_diff = static_cast<std::int32_t>(abs_diff_sum / kPmuFrameSize);
    stats.radar_mean = static_cast<std::int32_t>(radar_sum / kPmuFrameSize);
    stats.lidar_mean = static_cast<std::int32_t>(lidar_sum / kPmuFrameSize);
    std::int64_t radar_sq = 0;
    std::int64_t lidar_sq = 0;
    for (int i = 0; i < kPmuFrameSize; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const std::int64_t dr = radar[k] - stats.radar_mean;
        const std::int64_t dl = lidar[k] - stats.lidar_mean;
        radar_sq += dr * dr;
        lidar_sq += dl * dl;
    }
    stats.radar_variance = static_cast<std::int32_t>(radar_sq / kPmuFrameSize);
    stats.lidar_variance = static_cast<std::int32_t>(lidar_sq / kPmuFrameSize);
    return stats;
}

PmuVerdict classify_frame(const PmuFrameStats& stats, const PmuThresholds& thresholds,
                          const std::optional<std::int32_t>& prev_radar_mean,
                          const std::optional<std::int32_t>& prev_lidar_mean) {
    PmuVerdict verdict;
    verdict.stats = stats;
    if (stats.mean_abs_diff <= thresholds.divergence) {
        verdict.classification = PmuClass::Nominal;
        return verdict;
    }
    const bool radar_noisy = stats.radar_variance > thresholds.variance;
    const bool lidar_noisy = stats.lidar_variance > thresholds.variance;
    if (radar_noisy != lidar_noisy) {
        verdict.classification = radar_noisy ? PmuClass::AttackRadar : PmuClass::AttackLidar;
        return verdict;
    }
    // Plain divergence: suspect the channel whose frame mean moved farther
    // from its own previous frame mean.
    if (!prev_radar_mean || !prev_lidar_mean) {
        verdict.classification = PmuClass::DivergentUnknown;
        return verdict;
    }
    const std::int32_t radar_shift = std::abs(stats.radar_mean - *prev_radar_mean);
    const std::int32_t lidar_shift = std::abs(stats.lidar_mean - *prev_lidar_mean);
    if (radar_shift > lidar_shift) {
        verdict.classification = PmuClass::DivergentRadar;
    } else if (lidar_shift > radar_shift) {
        verdict.classification = PmuClass::DivergentLidar;
    } else {
        verdict.classification = PmuClass::DivergentUnknown;
    }
    return verdict;
}

std::optional<PmuVerdict> Pmu::push(CrispSample radar, CrispSample lidar_aligned) {
    if (radar.width != kRadarWidth || lidar_aligned.width != kRadarWidth) {
        throw std::invalid_argument("Pmu: inputs must be aligned to the 11-bit universe");
    }
    radar_[static_cast<std::size_t>(fill_)] = radar.value;
    lidar_[static_cast<std::size_t>(fill_)] = lidar_aligned.value;
    ++fill_;
    if (fill_ < kPmuFrameSize) return std::nullopt;
    const PmuFrameStats stats = frame_stats(radar_, lidar_);
    const PmuVerdict verdict =
        classify_frame(stats, thresholds_, prev_radar_mean_, prev_lidar_mean_);
    prev_radar_mean_ = stats.radar_mean;
    prev_lidar_mean_ = stats.lidar_mean;
    fill_ = 0;
    return verdict;
}

void Pmu::reset() {
    fill_ = 0;
    radar_.fill(0);
    lidar_.fill(0);
    prev_radar_mean_.reset();
    prev_lidar_mean_.reset();
}

}  // namespace algas
