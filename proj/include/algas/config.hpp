#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "algas/fir.hpp"
#include "algas/pmu.hpp"
#include "algas/rules.hpp"

namespace algas {

struct ProfileSpec {
    enum class Kind : std::uint8_t { Constant, LinearDescent, Recorded };
    Kind kind = Kind::Constant;
    std::int32_t altitude = 0;        // Constant
    std::int32_t start_altitude = 0;  // LinearDescent
    std::int32_t rate = 0;            // LSB per tick
    std::vector<std::int32_t> values;  // Recorded
};

struct InjectionSpec {
    enum class Kind : std::uint8_t { StuckAt, Bias, Dropout, SpectrumJam };
    Kind kind = Kind::Bias;
    int channel = 0;  // 0 = radar, 1 = lidar
    std::vector<int> corners;
    std::uint64_t start = 0;
    std::uint64_t duration = 0;
    std::int32_t magnitude = 0;
};

// Externally supplied fuzzy degree for sensors with no modeled data source.
struct DegreeSpec {
    std::string sensor;
    std::string qualifier;
    Degree value = 0;
    std::vector<int> corners;
    std::uint64_t start = 0;
    std::uint64_t duration = 0;
    int predicate = -1;  // resolved against the rule table
};

struct ScenarioConfig {
    ProfileSpec profile;
    std::int32_t radar_sigma = 0;  // zero-mean uniform noise spread, LSB
    std::int32_t lidar_sigma = 0;
    std::uint64_t duration = 0;
    std::uint64_t seed = 0;
    bool closed_loop = false;
    std::int32_t rate_gain = 1;
    FirMode fir_mode = FirMode::Functional;
    std::int32_t pair_margin = 32;
    PmuThresholds pmu_thresholds;
    Degree rule_threshold = kDefaultPredicateThreshold;
    std::string rules_path = "default";  // "default" = built-in rulebase
    std::vector<std::string> initial_modes;
    std::array<std::int32_t, 4> tilt{};
    std::vector<InjectionSpec> injections;
    std::vector<DegreeSpec> degrees;
};

struct ConfigParseResult {
    std::optional<ScenarioConfig> config;  // set when error-free
    std::vector<std::string> errors;       // "line N: message"
};

// Structured text, one "key = value" per line with [section] headers.
// Unknown sections and keys are errors. '#' starts a comment.
ConfigParseResult parse_scenario_config(std::string_view text);

// Cross-checks against the compiled rulebase (mode names, degree sensors)
// and run-length arithmetic; resolves degree predicate ids and the initial
// mode mask in place.
std::vector<std::string> resolve_config(ScenarioConfig& config, const CompiledRules& rules,
                                        std::uint32_t& initial_mode_mask);

}  // namespace algas
