#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "algas/config.hpp"
#include "algas/system.hpp"

namespace algas {

struct SensorFrame {
    std::uint64_t tick = 0;
    // (radar 11-bit, lidar 10-bit) per corner
    std::array<std::pair<CrispSample, CrispSample>, kCornerCount> samples;
};

// Per-tick input generator. Owns the seeded base noise stream (one draw per
// channel per tick, in corner order) plus one independent stream per
// injection so injections never perturb the base sequence.
class ScenarioEngine {
  public:
    ScenarioEngine(const ScenarioConfig& config, std::uint64_t seed);

    std::int32_t profile_altitude(std::uint64_t tick) const;
    SensorFrame gen_frame(std::uint64_t tick, std::int32_t altitude);

    // External degree injections active at this tick for one corner.
    std::vector<std::pair<int, Degree>> external_degrees(std::uint64_t tick, int corner) const;

    void reset();

  private:
    const ScenarioConfig* config_;
    std::uint64_t seed_;
    std::mt19937_64 base_rng_;
    std::vector<std::mt19937_64> jam_rngs_;
    // StuckAt state: last emitted value / frozen value per corner x channel
    std::array<std::array<std::uint16_t, 2>, kCornerCount> last_emitted_{};
    std::vector<std::optional<std::uint16_t>> frozen_;

    std::int32_t draw_uniform(std::mt19937_64& rng, std::int32_t sigma);
};

// altitude' = max(0, altitude + mean(commands) * rate_gain); the mean of the
// four corner commands truncates toward zero.
std::int32_t integrate_altitude(std::int32_t altitude,
                                const std::array<FlsCommand, kCornerCount>& commands,
                                std::int32_t rate_gain);

struct SystemTrace {
    std::vector<std::int32_t> altitudes;  // altitude driving each tick
    std::vector<SystemOutput> outputs;
};

struct RunOptions {
    bool parallel = false;
    std::optional<std::uint64_t> seed_override;
};

// Drives system_step for the configured duration; open-loop (profile) or
// closed-loop (integrator). Throws std::invalid_argument on configs that
// fail resolution, before tick 0.
SystemTrace run_scenario(const ScenarioConfig& config,
                         std::shared_ptr<const CompiledRules> rules,
                         const RunOptions& options = {});

// Loads the rulebase named by the config: "default" = built-in text,
// otherwise a path resolved relative to base_dir.
CompileResult load_rules_for_config(const ScenarioConfig& config, const std::string& base_dir);

}  // namespace algas
