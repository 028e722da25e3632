#include "algas/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "algas/default_rules_text.hpp"

namespace algas {

namespace {

// Uniform half-range matching a target standard deviation: A = round(s*sqrt 3).
std::int32_t half_range(std::int32_t sigma) {
    return static_cast<std::int32_t>(std::lround(sigma * std::sqrt(3.0)));
}

std::uint16_t clamp_channel(std::int64_t v, int width) {
    const std::int64_t hi = full_scale(width);
    if (v < 0) v = 0;
    if (v > hi) v = hi;
    return static_cast<std::uint16_t>(v);
}

bool window_active(std::uint64_t tick, std::uint64_t start, std::uint64_t duration) {
    return tick >= start && tick < start + duration;
}

}  // namespace

ScenarioEngine::ScenarioEngine(const ScenarioConfig& config, std::uint64_t seed)
    : config_(&config), seed_(seed) {
    reset();
}

void ScenarioEngine::reset() {
    base_rng_.seed(seed_);
    jam_rngs_.clear();
    for (std::size_t i = 0; i < config_->injections.size(); ++i) {
        // Distinct stream per injection; golden-ratio stride decorrelates it
        // from the base stream and from other injections.
        jam_rngs_.emplace_back(seed_ ^ (0x9E3779B97F4A7C15ull * (i + 1)));
    }
    for (auto& corner : last_emitted_) corner.fill(0);
    frozen_.assign(config_->injections.size(), std::nullopt);
}

std::int32_t ScenarioEngine::draw_uniform(std::mt19937_64& rng, std::int32_t sigma) {
    const std::int32_t a = half_range(sigma);
    const std::uint64_t raw = rng();  // one draw per channel per tick, always
    return static_cast<std::int32_t>(raw % static_cast<std::uint64_t>(2 * a + 1)) - a;
}

std::int32_t ScenarioEngine::profile_altitude(std::uint64_t tick) const {
    const auto& p = config_->profile;
    switch (p.kind) {
        case ProfileSpec::Kind::Constant: return p.altitude;
        case ProfileSpec::Kind::LinearDescent: {
            const std::int64_t alt =
                static_cast<std::int64_t>(p.start_altitude) -
                static_cast<std::int64_t>(p.rate) * static_cast<std::int64_t>(tick);
            return static_cast<std::int32_t>(std::max<std::int64_t>(0, alt));
        }
        case ProfileSpec::Kind::Recorded:
            return p.values[static_cast<std::size_t>(tick)];
    }
    return 0;
}

SensorFrame ScenarioEngine::gen_frame(std::uint64_t tick, std::int32_t altitude) {
    SensorFrame frame;
    frame.tick = tick;
    for (int corner = 0; corner < kCornerCount; ++corner) {
        const std::int64_t true_dist =
            altitude + config_->tilt[static_cast<std::size_t>(corner)];
        const std::int32_t noise_r = draw_uniform(base_rng_, config_->radar_sigma);
        const std::int32_t noise_l = draw_uniform(base_rng_, config_->lidar_sigma);
        std::int64_t radar = true_dist + noise_r;
        std::int64_t lidar = (true_dist + noise_l) / 2;  // 10-bit universe
        std::uint16_t radar_v = clamp_channel(radar, kRadarWidth);
        std::uint16_t lidar_v = clamp_channel(lidar, kLidarWidth);

        for (std::size_t i = 0; i < config_->injections.size(); ++i) {
            const auto& inj = config_->injections[i];
            const bool on_corner =
                std::find(inj.corners.begin(), inj.corners.end(), corner) != inj.corners.end();
            if (!on_corner) continue;
            const int width = inj.channel == 0 ? kRadarWidth : kLidarWidth;
            std::uint16_t& value = inj.channel == 0 ? radar_v : lidar_v;
            if (!window_active(tick, inj.start, inj.duration)) {
                if (tick >= inj.start + inj.duration) frozen_[i].reset();
                continue;
            }
            switch (inj.kind) {
                case InjectionSpec::Kind::StuckAt:
                    if (!frozen_[i]) {
                        frozen_[i] =
                            tick > 0 ? last_emitted_[static_cast<std::size_t>(corner)]
                                                    [static_cast<std::size_t>(inj.channel)]
                                     : value;
                    }
                    value = *frozen_[i];
                    break;
                case InjectionSpec::Kind::Bias:
                    value = clamp_channel(static_cast<std::int64_t>(value) + inj.magnitude,
                                          width);
                    break;
                case InjectionSpec::Kind::Dropout:
                    value = 0;
                    break;
                case InjectionSpec::Kind::SpectrumJam:
                    value = clamp_channel(static_cast<std::int64_t>(value) +
                                              draw_uniform(jam_rngs_[i], inj.magnitude),
                                          width);
                    break;
            }
        }

        last_emitted_[static_cast<std::size_t>(corner)][0] = radar_v;
        last_emitted_[static_cast<std::size_t>(corner)][1] = lidar_v;
        frame.samples[static_cast<std::size_t>(corner)] = {
            CrispSample::make(radar_v, kRadarWidth), CrispSample::make(lidar_v, kLidarWidth)};
    }
    return frame;
}

std::vector<std::pair<int, Degree>> ScenarioEngine::external_degrees(std::uint64_t tick,
                                                                     int corner) const {
    std::vector<std::pair<int, Degree>> out;
    for (const auto& deg : config_->degrees) {
        if (deg.predicate < 0) continue;
        if (!window_active(tick, deg.start, deg.duration)) continue;
        if (std::find(deg.corners.begin(), deg.corners.end(), corner) == deg.corners.end()) {
            continue;
        }
        out.emplace_back(deg.predicate, deg.value);
    }
    return out;
}

std::int32_t integrate_altitude(std::int32_t altitude,
                                const std::array<FlsCommand, kCornerCount>& commands,
                                std::int32_t rate_gain) {
    std::int32_t sum = 0;
    for (const auto& c : commands) sum += c.value;
    const std::int32_t mean = sum / kCornerCount;  // truncates toward zero
    const std::int64_t next = static_cast<std::int64_t>(altitude) +
                              static_cast<std::int64_t>(mean) * rate_gain;
    return static_cast<std::int32_t>(std::max<std::int64_t>(0, next));
}

SystemTrace run_scenario(const ScenarioConfig& config,
                         std::shared_ptr<const CompiledRules> rules,
                         const RunOptions& options) {
    ScenarioConfig cfg = config;
    if (options.seed_override) cfg.seed = *options.seed_override;
    std::uint32_t initial_modes = 0;
    const auto errors = resolve_config(cfg, *rules, initial_modes);
    if (!errors.empty()) {
        std::string joined;
        for (const auto& e : errors) {
            if (!joined.empty()) joined += "; ";
            joined += e;
        }
        throw std::invalid_argument("scenario config: " + joined);
    }

    SystemConfig sys_cfg;
    sys_cfg.fir_mode = cfg.fir_mode;
    sys_cfg.pmu_thresholds = cfg.pmu_thresholds;
    sys_cfg.fru_threshold = cfg.rule_threshold;
    sys_cfg.pair_margin = cfg.pair_margin;
    sys_cfg.initial_modes = initial_modes;
    sys_cfg.parallel = options.parallel;
    AlgasSystem system(sys_cfg, rules);

    ScenarioEngine engine(cfg, cfg.seed);
    SystemTrace trace;
    trace.altitudes.reserve(cfg.duration);
    trace.outputs.reserve(cfg.duration);

    std::int32_t altitude = cfg.closed_loop ? engine.profile_altitude(0) : 0;
    for (std::uint64_t tick = 0; tick < cfg.duration; ++tick) {
        if (!cfg.closed_loop) altitude = engine.profile_altitude(tick);
        const SensorFrame frame = engine.gen_frame(tick, altitude);
        std::array<CornerInput, kCornerCount> inputs;
        for (int c = 0; c < kCornerCount; ++c) {
            const auto i = static_cast<std::size_t>(c);
            inputs[i].radar = frame.samples[i].first;
            inputs[i].lidar = frame.samples[i].second;
            inputs[i].external_degrees = engine.external_degrees(tick, c);
        }
        trace.altitudes.push_back(altitude);
        trace.outputs.push_back(system.step(inputs));
        if (cfg.closed_loop) {
            std::array<FlsCommand, kCornerCount> commands;
            for (int c = 0; c < kCornerCount; ++c) {
                commands[static_cast<std::size_t>(c)] =
                    trace.outputs.back().corners[static_cast<std::size_t>(c)].command;
            }
            altitude = integrate_altitude(altitude, commands, cfg.rate_gain);
        }
    }
    return trace;
}

CompileResult load_rules_for_config(const ScenarioConfig& config, const std::string& base_dir) {
    if (config.rules_path == "default") {
        return load_rules(kDefaultRulesText);
    }
    std::string path = config.rules_path;
    if (!path.empty() && path.front() != '/' && !base_dir.empty()) {
        path = base_dir + "/" + path;
    }
    std::ifstream in(path);
    if (!in) {
        CompileResult result;
        result.diagnostics.push_back(
            {Severity::Error, {}, "cannot open rules file '" + path + "'"});
        return result;
    }
    std::ostringstream text;
    text << in.rdbuf();
    return load_rules(text.str());
}

}  // namespace algas
