#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "algas/fir.hpp"
#include "algas/fls.hpp"
#include "algas/pmu.hpp"
#include "algas/rules.hpp"

namespace algas {

enum class SensorPriority : std::uint8_t { Balanced, PreferRadar, PreferLidar };

// Spectrum-separation response: only attack verdicts switch priority;
// degradation routes to the FRU as a noise degree instead.
SensorPriority apply_priority(const PmuVerdict& verdict);

// Signal names the corner maps PMU verdicts onto. The optical channel is
// the 840nm lidar, the microwave channel the 24GHz radar.
inline constexpr const char* kOpticalSensorName = "Optical-Sensor";
inline constexpr const char* kMicrowaveSensorName = "uWave-Sensor";
inline constexpr const char* kVeryNoisyQualifier = "Very Noisy";

struct CornerConfig {
    int corner_id = 0;
    FirMode fir_mode = FirMode::Functional;
    PmuThresholds pmu_thresholds;
    Degree fru_threshold = kDefaultPredicateThreshold;
    std::uint32_t initial_modes = 0;  // bitmask over the rule table's mode ids
};

struct CornerOutput {
    std::uint64_t tick = 0;
    std::uint16_t radar_raw = 0;
    std::uint16_t lidar_raw = 0;
    std::uint16_t radar_filtered = 0;         // 11-bit
    std::uint16_t lidar_filtered_aligned = 0;  // 11-bit (doubled from 10)
    std::uint16_t fused = 0;                   // 11-bit
    FlsCommand command;
    int verdict_code = -1;  // -1 when no frame completed this tick
    SensorPriority priority = SensorPriority::Balanced;
    std::uint32_t signals_raised = 0;
    std::uint32_t mode_stops = 0;
    int mode_enter = -1;
    bool enter_conflict = false;
    std::uint32_t modes_after = 0;
};

// One ALGAS3 corner. Single-owner mutable state; the rulebase reference is
// immutable and shared read-only by all four corners.
class CornerCore {
  public:
    CornerCore(const CornerConfig& config, const CompiledRules& rules);

    // external_degrees: (predicate id, degree) pairs injected by the
    // scenario for sensors with no modeled data source.
    CornerOutput step(CrispSample radar_raw, CrispSample lidar_raw,
                      const std::vector<std::pair<int, Degree>>& external_degrees = {});
    void reset();

    int corner_id() const { return config_.corner_id; }
    std::uint32_t modes() const { return modes_; }
    SensorPriority priority() const { return priority_; }
    const std::optional<PmuVerdict>& last_verdict() const { return last_verdict_; }

  private:
    CornerConfig config_;
    const CompiledRules* rules_;
    FirFilter radar_fir_;
    FirFilter lidar_fir_;
    Pmu pmu_;
    std::uint32_t modes_ = 0;
    SensorPriority priority_ = SensorPriority::Balanced;
    std::optional<PmuVerdict> last_verdict_;
    std::uint64_t tick_ = 0;
    int pred_optical_noisy_ = -1;
    int pred_microwave_noisy_ = -1;
};

int verdict_code(PmuClass classification);

}  // namespace algas
