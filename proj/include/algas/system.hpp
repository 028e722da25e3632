#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "algas/corner.hpp"
#include "algas/hsdci.hpp"

namespace algas {

inline constexpr int kCornerCount = 4;
// Differential pairs are spatially opposite corners: 0-2 and 1-3.
inline constexpr std::array<std::array<int, 2>, 2> kDiffPairs{{{0, 2}, {1, 3}}};

struct SystemConfig {
    FirMode fir_mode = FirMode::Functional;
    PmuThresholds pmu_thresholds;
    Degree fru_threshold = kDefaultPredicateThreshold;
    std::int32_t pair_margin = 32;
    std::uint32_t initial_modes = 0;
    bool parallel = false;  // intra-tick corner parallelism; identical results
};

struct SystemOutput {
    std::uint64_t tick = 0;
    std::array<CornerOutput, kCornerCount> corners;
    std::array<PairStatus, 2> pairs;
    bool alarm_pair_mismatch = false;
    bool alarm_attack = false;
    bool alarm_divergence = false;
    std::uint32_t consensus_modes = 0;  // modes held by at least 3 corners
    bool consensus_unsettled = false;   // some mode split 2-2
};

struct CornerInput {
    CrispSample radar;
    CrispSample lidar;
    std::vector<std::pair<int, Degree>> external_degrees;
};

// Lockstep driver that owns all four corner states. Corners step
// independently within a tick; HSDCI exchange and pair checks are a serial
// barrier at tick end.
class AlgasSystem {
  public:
    AlgasSystem(const SystemConfig& config, std::shared_ptr<const CompiledRules> rules);

    SystemOutput step(const std::array<CornerInput, kCornerCount>& inputs);
    void reset();

    std::uint64_t tick() const { return tick_; }
    const CompiledRules& rules() const { return *rules_; }
    const CornerCore& corner(int id) const { return corners_[static_cast<std::size_t>(id)]; }

    // Test hook: mutate a frame in flight (source corner id attached).
    using FrameTamper = std::function<void(HsdciFrame&, int source_corner)>;
    void set_frame_tamper(FrameTamper tamper) { tamper_ = std::move(tamper); }

  private:
    SystemConfig config_;
    std::shared_ptr<const CompiledRules> rules_;
    std::vector<CornerCore> corners_;
    std::uint64_t tick_ = 0;
    FrameTamper tamper_;
};

}  // namespace algas
