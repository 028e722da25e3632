#pragma once

#include <iosfwd>
#include <string>

#include "algas/scenario.hpp"

namespace algas {

// Stable trace schema: header row, then one row per tick. Per corner:
// raw, filtered, fused, command, verdict (-1 = no frame boundary), priority,
// signals, modes; then pair deltas and alarms. Multi-valued name fields are
// semicolon-joined.
void write_trace_csv(std::ostream& os, const SystemTrace& trace, const CompiledRules& rules);

std::string trace_csv_header();

// Tick histogram and headline counters printed by the CLI after a run.
struct RunSummary {
    std::uint64_t ticks = 0;
    std::array<std::uint64_t, 6> verdict_histogram{};  // by verdict code
    std::uint64_t completed_frames = 0;
    std::uint64_t pair_alarm_ticks = 0;
    std::uint64_t attack_alarm_ticks = 0;
    std::array<std::int64_t, kCornerCount> first_non_nominal_tick{-1, -1, -1, -1};
    std::int32_t final_altitude = 0;
    bool any_safety_alarm = false;  // pair mismatch or attack
};

RunSummary summarize(const SystemTrace& trace);

std::string format_summary(const RunSummary& summary, double seconds);

}  // namespace algas
