#include "algas/trace.hpp"

#include <ostream>
#include <sstream>

namespace algas {

namespace {

std::string join_bits(std::uint32_t bits, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (bits & (1u << i)) {
            if (!out.empty()) out += ';';
            out += names[i];
        }
    }
    return out;
}

}  // namespace

std::string trace_csv_header() {
    std::string header = "tick,altitude";
    for (int c = 0; c < kCornerCount; ++c) {
        const std::string p = "c" + std::to_string(c) + "_";
        header += "," + p + "radar_raw," + p + "lidar_raw," + p + "radar_filt," + p +
                  "lidar_filt," + p + "fused," + p + "cmd," + p + "verdict," + p + "priority," +
                  p + "signals," + p + "modes";
    }
    header += ",pair02_delta,pair02_within,pair02_comm_fault";
    header += ",pair13_delta,pair13_within,pair13_comm_fault";
    header += ",alarm_pair,alarm_attack,alarm_divergence,consensus_modes,consensus_unsettled";
    return header;
}

void write_trace_csv(std::ostream& os, const SystemTrace& trace, const CompiledRules& rules) {
    os << trace_csv_header() << '\n';
    const auto& modes = rules.table.symbols.modes;
    const auto& signals = rules.table.symbols.signals;
    for (std::size_t t = 0; t < trace.outputs.size(); ++t) {
        const auto& out = trace.outputs[t];
        os << out.tick << ',' << trace.altitudes[t];
        for (const auto& c : out.corners) {
            os << ',' << c.radar_raw << ',' << c.lidar_raw << ',' << c.radar_filtered << ','
               << c.lidar_filtered_aligned << ',' << c.fused << ','
               << static_cast<int>(c.command.value) << ',' << c.verdict_code << ','
               << static_cast<int>(c.priority) << ',' << join_bits(c.signals_raised, signals)
               << ',' << join_bits(c.modes_after, modes);
        }
        for (const auto& pair : out.pairs) {
            os << ',' << pair.delta << ',' << (pair.within_margin ? 1 : 0) << ','
               << (pair.comm_fault ? 1 : 0);
        }
        os << ',' << (out.alarm_pair_mismatch ? 1 : 0) << ',' << (out.alarm_attack ? 1 : 0)
           << ',' << (out.alarm_divergence ? 1 : 0) << ',' << join_bits(out.consensus_modes, modes)
           << ',' << (out.consensus_unsettled ? 1 : 0) << '\n';
    }
}

RunSummary summarize(const SystemTrace& trace) {
    RunSummary s;
    s.ticks = trace.outputs.size();
    for (const auto& out : trace.outputs) {
        if (out.alarm_pair_mismatch) ++s.pair_alarm_ticks;
        if (out.alarm_attack) ++s.attack_alarm_ticks;
        if (out.alarm_pair_mismatch || out.alarm_attack) s.any_safety_alarm = true;
        for (int c = 0; c < kCornerCount; ++c) {
            const auto& corner = out.corners[static_cast<std::size_t>(c)];
            if (corner.verdict_code < 0) continue;
            ++s.completed_frames;
            ++s.verdict_histogram[static_cast<std::size_t>(corner.verdict_code)];
            if (corner.verdict_code > 0 &&
                s.first_non_nominal_tick[static_cast<std::size_t>(c)] < 0) {
                s.first_non_nominal_tick[static_cast<std::size_t>(c)] =
                    static_cast<std::int64_t>(out.tick);
            }
        }
    }
    if (!trace.altitudes.empty()) s.final_altitude = trace.altitudes.back();
    return s;
}

std::string format_summary(const RunSummary& s, double seconds) {
    static const char* kVerdictNames[6] = {"nominal",          "divergent_radar",
                                           "divergent_lidar",  "divergent_unknown",
                                           "attack_radar",     "attack_lidar"};
    std::ostringstream os;
    os << "ticks executed:      " << s.ticks << '\n';
    os << "completed frames:    " << s.completed_frames << '\n';
    os << "verdict histogram:  ";
    for (int i = 0; i < 6; ++i) {
        os << ' ' << kVerdictNames[i] << '=' << s.verdict_histogram[static_cast<std::size_t>(i)];
    }
    os << '\n';
    os << "pair alarm ticks:    " << s.pair_alarm_ticks << '\n';
    os << "attack alarm ticks:  " << s.attack_alarm_ticks << '\n';
    os << "first non-nominal:  ";
    for (int c = 0; c < kCornerCount; ++c) {
        os << " corner" << c << '=' << s.first_non_nominal_tick[static_cast<std::size_t>(c)];
    }
    os << '\n';
    os << "final altitude:      " << s.final_altitude << '\n';
    if (seconds > 0.0 && s.ticks > 0) {
        const double samples = static_cast<double>(s.ticks) * kCornerCount * 2;
        os << "throughput:          " << static_cast<std::uint64_t>(s.ticks / seconds)
           << " ticks/s, " << static_cast<std::uint64_t>(samples / seconds) << " samples/s\n";
    }
    return os.str();
}

}  // namespace algas
