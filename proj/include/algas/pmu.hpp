#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "algas/numerics.hpp"

namespace algas {

inline constexpr int kPmuFrameSize = 16;

struct PmuThresholds {
    std::int32_t divergence = 64;  // T_d, LSB of the 11-bit universe
    std::int32_t variance = 1024;  // T_v, LSB^2
};

enum class PmuClass : std::uint8_t {
    Nominal = 0,
    DivergentRadar = 1,
    DivergentLidar = 2,
    DivergentUnknown = 3,
    AttackRadar = 4,
    AttackLidar = 5,
};

struct PmuFrameStats {
    std::int32_t mean_abs_diff = 0;  // truncating /16
    std::int32_t radar_mean = 0;
    std::int32_t lidar_mean = 0;
    std::int32_t radar_variance = 0;
    std::int32_t lidar_variance = 0;
};

struct PmuVerdict {
    PmuClass classification = PmuClass::Nominal;
    PmuFrameStats stats;
    friend bool operator==(const PmuVerdict&, const PmuVerdict&) = default;
};

PmuFrameStats frame_stats(const std::array<std::uint16_t, kPmuFrameSize>& radar,
                          const std::array<std::uint16_t, kPmuFrameSize>& lidar);

// Classification given this frame's stats and the previous frame's channel
// means (used for the suspect attribution on plain divergence).
PmuVerdict classify_frame(const PmuFrameStats& stats, const PmuThresholds& thresholds,
                          const std::optional<std::int32_t>& prev_radar_mean,
                          const std::optional<std::int32_t>& prev_lidar_mean);

// Tumbling 16-sample dual-channel monitor. Both inputs live in the 11-bit
// universe; the caller aligns lidar by doubling before entry.
class Pmu {
  public:
    Pmu() = default;
    explicit Pmu(PmuThresholds thresholds) : thresholds_(thresholds) {}

    // Verdict is emitted exactly on the 16th sample of a frame.
    std::optional<PmuVerdict> push(CrispSample radar, CrispSample lidar_aligned);
    void reset();

    int fill_count() const { return fill_; }
    const PmuThresholds& thresholds() const { return thresholds_; }

  private:
    PmuThresholds thresholds_;
    std::array<std::uint16_t, kPmuFrameSize> radar_{};
    std::array<std::uint16_t, kPmuFrameSize> lidar_{};
    int fill_ = 0;
    std::optional<std::int32_t> prev_radar_mean_;
    std::optional<std::int32_t> prev_lidar_mean_;
};

}  // namespace algas
