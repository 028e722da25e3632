#include "algas/corner.hpp"

namespace algas {

SensorPriority apply_priority(const PmuVerdict& verdict) {
    switch (verdict.classification) {
        case PmuClass::AttackRadar: return SensorPriority::PreferLidar;
        case PmuClass::AttackLidar: return SensorPriority::PreferRadar;
        default: return SensorPriority::Balanced;
    }
}

int verdict_code(PmuClass classification) {
    return static_cast<int>(classification);
}

CornerCore::CornerCore(const CornerConfig& config, const CompiledRules& rules)
    : config_(config),
      rules_(&rules),
      radar_fir_(kRadarWidth, config.fir_mode),
      lidar_fir_(kLidarWidth, config.fir_mode),
      pmu_(config.pmu_thresholds),
      modes_(config.initial_modes) {
    pred_optical_noisy_ =
        rules.table.predicate_index(kOpticalSensorName, kVeryNoisyQualifier);
    pred_microwave_noisy_ =
        rules.table.predicate_index(kMicrowaveSensorName, kVeryNoisyQualifier);
}

void CornerCore::reset() {
    radar_fir_.reset();
    lidar_fir_.reset();
    pmu_.reset();
    modes_ = config_.initial_modes;
    priority_ = SensorPriority::Balanced;
    last_verdict_.reset();
    tick_ = 0;
}

CornerOutput CornerCore::step(CrispSample radar_raw, CrispSample lidar_raw,
                              const std::vector<std::pair<int, Degree>>& external_degrees) {
    CornerOutput out;
    out.tick = tick_;
    out.radar_raw = radar_raw.value;
    out.lidar_raw = lidar_raw.value;

    const CrispSample radar_f = radar_fir_.step(radar_raw).sample;
    const CrispSample lidar_f = lidar_fir_.step(lidar_raw).sample;
    const CrispSample lidar_aligned =
        CrispSample::make(static_cast<std::uint32_t>(lidar_f.value) * 2, kRadarWidth);
    out.radar_filtered = radar_f.value;
    out.lidar_filtered_aligned = lidar_aligned.value;

    if (auto verdict = pmu_.push(radar_f, lidar_aligned)) {
        last_verdict_ = *verdict;
        priority_ = apply_priority(*verdict);
        out.verdict_code = verdict_code(verdict->classification);
    }
    out.priority = priority_;

    std::vector<Degree> degrees(rules_->table.predicates.size(), 0);
    auto raise = [&](int pred) {
        if (pred >= 0 && static_cast<std::size_t>(pred) < degrees.size()) {
            degrees[static_cast<std::size_t>(pred)] = kDegreeOne;
        }
    };
    if (last_verdict_) {
        switch (last_verdict_->classification) {
            case PmuClass::AttackRadar:
            case PmuClass::DivergentRadar:
                raise(pred_microwave_noisy_);
                break;
            case PmuClass::AttackLidar:
            case PmuClass::DivergentLidar:
                raise(pred_optical_noisy_);
                break;
            case PmuClass::DivergentUnknown:
                raise(pred_microwave_noisy_);
                raise(pred_optical_noisy_);
                break;
            case PmuClass::Nominal:
                break;
        }
    }
    for (const auto& [pred, degree] : external_degrees) {
        if (pred >= 0 && static_cast<std::size_t>(pred) < degrees.size()) {
            degrees[static_cast<std::size_t>(pred)] = degree;
        }
    }

    const Directives directives =
        evaluate(*rules_, modes_, degrees, config_.fru_threshold);
    out.signals_raised = directives.signals;
    out.mode_stops = directives.stops;
    out.mode_enter = directives.enter_mode;
    out.enter_conflict = directives.enter_conflict;

    out.command = fls_step(radar_f, lidar_f, rules_->fls, directives.gates);

    switch (priority_) {
        case SensorPriority::Balanced:
            out.fused = static_cast<std::uint16_t>(
                (static_cast<std::uint32_t>(radar_f.value) + lidar_aligned.value) / 2);
            break;
        case SensorPriority::PreferRadar: out.fused = radar_f.value; break;
        case SensorPriority::PreferLidar: out.fused = lidar_aligned.value; break;
    }

    modes_ &= ~directives.stops;
    if (directives.enter_mode >= 0) modes_ |= 1u << directives.enter_mode;
    out.modes_after = modes_;

    ++tick_;
    return out;
}

}  // namespace algas
