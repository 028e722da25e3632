#include "algas/system.hpp"

#include <future>
#include <stdexcept>

namespace algas {

AlgasSystem::AlgasSystem(const SystemConfig& config, std::shared_ptr<const CompiledRules> rules)
    : config_(config), rules_(std::move(rules)) {
    if (!rules_) throw std::invalid_argument("AlgasSystem: rulebase required");
    corners_.reserve(kCornerCount);
    for (int id = 0; id < kCornerCount; ++id) {
        CornerConfig cc;
        cc.corner_id = id;
        cc.fir_mode = config.fir_mode;
        cc.pmu_thresholds = config.pmu_thresholds;
        cc.fru_threshold = config.fru_threshold;
        cc.initial_modes = config.initial_modes;
        corners_.emplace_back(cc, *rules_);
    }
}

void AlgasSystem::reset() {
    for (auto& corner : corners_) corner.reset();
    tick_ = 0;
}

SystemOutput AlgasSystem::step(const std::array<CornerInput, kCornerCount>& inputs) {
    SystemOutput out;
    out.tick = tick_;

    auto run_corner = [&](int id) {
        const auto i = static_cast<std::size_t>(id);
        return corners_[i].step(inputs[i].radar, inputs[i].lidar, inputs[i].external_degrees);
    };
    if (config_.parallel) {
        std::array<std::future<CornerOutput>, kCornerCount> futures;
        for (int id = 0; id < kCornerCount; ++id) {
            futures[static_cast<std::size_t>(id)] =
                std::async(std::launch::async, run_corner, id);
        }
        for (int id = 0; id < kCornerCount; ++id) {
            out.corners[static_cast<std::size_t>(id)] =
                futures[static_cast<std::size_t>(id)].get();
        }
    } else {
        for (int id = 0; id < kCornerCount; ++id) {
            out.corners[static_cast<std::size_t>(id)] = run_corner(id);
        }
    }

    // Tick-boundary barrier: exchange frames between opposite corners and
    // check the differential margins on the wire values.
    for (std::size_t p = 0; p < kDiffPairs.size(); ++p) {
        const int a = kDiffPairs[p][0];
        const int b = kDiffPairs[p][1];
        const auto& ca = out.corners[static_cast<std::size_t>(a)];
        const auto& cb = out.corners[static_cast<std::size_t>(b)];
        auto ship = [&](const CornerOutput& c, int source) -> std::optional<HsdciFields> {
            HsdciFields fields;
            fields.corner = static_cast<std::uint8_t>(source);
            fields.tick = static_cast<std::uint32_t>(tick_);
            fields.distance = c.fused;
            fields.verdict = static_cast<std::uint8_t>(
                c.verdict_code >= 0 ? c.verdict_code
                                    : verdict_code(PmuClass::Nominal));
            HsdciFrame frame = encode_frame(fields);
            if (tamper_) tamper_(frame, source);
            return decode_frame(frame);
        };
        const auto from_a = ship(ca, a);
        const auto from_b = ship(cb, b);
        PairStatus status;
        if (from_a && from_b) {
            status = diff_pair_check(from_a->distance, from_b->distance, config_.pair_margin);
        } else {
            status.comm_fault = true;
            status.within_margin = false;
            status.margin = config_.pair_margin;
        }
        status.corner_a = static_cast<std::uint8_t>(a);
        status.corner_b = static_cast<std::uint8_t>(b);
        out.pairs[p] = status;
        out.alarm_pair_mismatch = out.alarm_pair_mismatch || !status.within_margin;
    }

    for (const auto& corner : out.corners) {
        if (corner.verdict_code == verdict_code(PmuClass::AttackRadar) ||
            corner.verdict_code == verdict_code(PmuClass::AttackLidar)) {
            out.alarm_attack = true;
        }
        if (corner.verdict_code == verdict_code(PmuClass::DivergentRadar) ||
            corner.verdict_code == verdict_code(PmuClass::DivergentLidar) ||
            corner.verdict_code == verdict_code(PmuClass::DivergentUnknown)) {
            out.alarm_divergence = true;
        }
    }

    const auto mode_count = rules_->table.symbols.modes.size();
    for (std::size_t m = 0; m < mode_count; ++m) {
        int held = 0;
        for (const auto& corner : out.corners) {
            if (corner.modes_after & (1u << m)) ++held;
        }
        if (held >= 3) out.consensus_modes |= 1u << m;
        if (held == 2) out.consensus_unsettled = true;
    }

    ++tick_;
    return out;
}

}  // namespace algas
