#include "algas/config.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace algas {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

struct Cursor {
    std::vector<std::string>& errors;
    int line = 0;

    void error(const std::string& message) {
        errors.push_back("line " + std::to_string(line) + ": " + message);
    }
};

bool parse_i64(const std::string& v, std::int64_t& out) {
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    return ec == std::errc{} && p == v.data() + v.size();
}

template <typename T>
bool parse_int(Cursor& cur, const std::string& key, const std::string& v, T& out,
               std::int64_t lo, std::int64_t hi) {
    std::int64_t raw = 0;
    if (!parse_i64(v, raw) || raw < lo || raw > hi) {
        cur.error(key + ": expected integer in [" + std::to_string(lo) + ", " +
                  std::to_string(hi) + "], got '" + v + "'");
        return false;
    }
    out = static_cast<T>(raw);
    return true;
}

bool parse_bool(Cursor& cur, const std::string& key, const std::string& v, bool& out) {
    if (v == "true") {
        out = true;
        return true;
    }
    if (v == "false") {
        out = false;
        return true;
    }
    cur.error(key + ": expected 'true' or 'false', got '" + v + "'");
    return false;
}

std::vector<std::string> split_words(const std::string& v) {
    std::vector<std::string> words;
    std::istringstream is(v);
    std::string w;
    while (is >> w) words.push_back(w);
    return words;
}

bool parse_corners(Cursor& cur, const std::string& v, std::vector<int>& out) {
    out.clear();
    for (const auto& w : split_words(v)) {
        std::int64_t c = 0;
        if (!parse_i64(w, c) || c < 0 || c > 3) {
            cur.error("corners: expected corner ids 0..3, got '" + w + "'");
            return false;
        }
        if (std::find(out.begin(), out.end(), static_cast<int>(c)) == out.end()) {
            out.push_back(static_cast<int>(c));
        }
    }
    if (out.empty()) cur.error("corners: empty corner list");
    return !out.empty();
}

}  // namespace

ConfigParseResult parse_scenario_config(std::string_view text) {
    ConfigParseResult result;
    ScenarioConfig config;
    std::vector<std::string> errors;
    Cursor cur{errors};

    std::string section;
    std::set<std::string> seen_singletons;
    std::set<std::string> seen_keys;  // "section\x1Fkey" for singleton sections
    InjectionSpec* injection = nullptr;
    DegreeSpec* degree = nullptr;
    bool profile_seen_kind = false;

    static const std::set<std::string> kSingletons = {"profile", "noise", "run", "tilt"};

    std::istringstream stream{std::string(text)};
    std::string raw_line;
    while (std::getline(stream, raw_line)) {
        ++cur.line;
        std::string line = raw_line;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') {
                cur.error("malformed section header '" + line + "'");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            injection = nullptr;
            degree = nullptr;
            if (kSingletons.count(section)) {
                if (!seen_singletons.insert(section).second) {
                    cur.error("duplicate section [" + section + "]");
                }
            } else if (section == "injection") {
                config.injections.emplace_back();
                injection = &config.injections.back();
            } else if (section == "degree") {
                config.degrees.emplace_back();
                degree = &config.degrees.back();
            } else {
                cur.error("unknown section [" + section + "]");
                section.clear();
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            cur.error("expected 'key = value', got '" + line + "'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) {
            cur.error("key '" + key + "' outside any section");
            continue;
        }
        if (kSingletons.count(section) &&
            !seen_keys.insert(section + '\x1F' + key).second) {
            cur.error("duplicate key '" + key + "' in [" + section + "]");
            continue;
        }

        if (section == "profile") {
            if (key == "kind") {
                profile_seen_kind = true;
                if (value == "constant") {
                    config.profile.kind = ProfileSpec::Kind::Constant;
                } else if (value == "linear_descent") {
                    config.profile.kind = ProfileSpec::Kind::LinearDescent;
                } else if (value == "recorded") {
                    config.profile.kind = ProfileSpec::Kind::Recorded;
                } else {
                    cur.error("kind: expected constant, linear_descent, or recorded");
                }
            } else if (key == "altitude") {
                parse_int(cur, key, value, config.profile.altitude, 0, 1u << 20);
            } else if (key == "start_altitude") {
                parse_int(cur, key, value, config.profile.start_altitude, 0, 1u << 20);
            } else if (key == "rate") {
                parse_int(cur, key, value, config.profile.rate, 0, 1u << 16);
            } else if (key == "values") {
                config.profile.values.clear();
                for (const auto& w : split_words(value)) {
                    std::int64_t v = 0;
                    if (!parse_i64(w, v) || v < 0) {
                        cur.error("values: expected non-negative integers, got '" + w + "'");
                        break;
                    }
                    config.profile.values.push_back(static_cast<std::int32_t>(v));
                }
            } else {
                cur.error("unknown key '" + key + "' in [profile]");
            }
        } else if (section == "noise") {
            if (key == "radar_sigma") {
                parse_int(cur, key, value, config.radar_sigma, 0, 1024);
            } else if (key == "lidar_sigma") {
                parse_int(cur, key, value, config.lidar_sigma, 0, 1024);
            } else {
                cur.error("unknown key '" + key + "' in [noise]");
            }
        } else if (section == "run") {
            if (key == "duration") {
                parse_int(cur, key, value, config.duration, 0, 100'000'000);
            } else if (key == "seed") {
                std::int64_t raw = 0;
                if (parse_i64(value, raw) && raw >= 0) {
                    config.seed = static_cast<std::uint64_t>(raw);
                } else {
                    cur.error("seed: expected non-negative integer");
                }
            } else if (key == "closed_loop") {
                parse_bool(cur, key, value, config.closed_loop);
            } else if (key == "rate_gain") {
                parse_int(cur, key, value, config.rate_gain, 1, 1024);
            } else if (key == "fir_mode") {
                if (value == "functional") {
                    config.fir_mode = FirMode::Functional;
                } else if (value == "timed") {
                    config.fir_mode = FirMode::Timed;
                } else {
                    cur.error("fir_mode: expected functional or timed");
                }
            } else if (key == "margin") {
                parse_int(cur, key, value, config.pair_margin, 0, 2047);
            } else if (key == "divergence_threshold") {
                parse_int(cur, key, value, config.pmu_thresholds.divergence, 1, 1 << 20);
            } else if (key == "variance_threshold") {
                parse_int(cur, key, value, config.pmu_thresholds.variance, 1, 1 << 30);
            } else if (key == "rule_threshold") {
                parse_int(cur, key, value, config.rule_threshold, 0, kDegreeOne);
            } else if (key == "rules") {
                config.rules_path = value;
            } else if (key == "initial_modes") {
                config.initial_modes = split_words(value);
            } else {
                cur.error("unknown key '" + key + "' in [run]");
            }
        } else if (section == "tilt") {
            if (key == "corner0" || key == "corner1" || key == "corner2" || key == "corner3") {
                const auto idx = static_cast<std::size_t>(key.back() - '0');
                parse_int(cur, key, value, config.tilt[idx], -2047, 2047);
            } else {
                cur.error("unknown key '" + key + "' in [tilt]");
            }
        } else if (section == "injection") {
            if (key == "kind") {
                if (value == "stuck_at") {
                    injection->kind = InjectionSpec::Kind::StuckAt;
                } else if (value == "bias") {
                    injection->kind = InjectionSpec::Kind::Bias;
                } else if (value == "dropout") {
                    injection->kind = InjectionSpec::Kind::Dropout;
                } else if (value == "spectrum_jam") {
                    injection->kind = InjectionSpec::Kind::SpectrumJam;
                } else {
                    cur.error("kind: expected stuck_at, bias, dropout, or spectrum_jam");
                }
            } else if (key == "channel") {
                if (value == "radar") {
                    injection->channel = 0;
                } else if (value == "lidar") {
                    injection->channel = 1;
                } else {
                    cur.error("channel: expected radar or lidar");
                }
            } else if (key == "corners") {
                parse_corners(cur, value, injection->corners);
            } else if (key == "start") {
                parse_int(cur, key, value, injection->start, 0, 100'000'000);
            } else if (key == "duration") {
                parse_int(cur, key, value, injection->duration, 1, 100'000'000);
            } else if (key == "magnitude") {
                parse_int(cur, key, value, injection->magnitude, -2047, 2047);
            } else {
                cur.error("unknown key '" + key + "' in [injection]");
            }
        } else if (section == "degree") {
            if (key == "sensor") {
                degree->sensor = value;
            } else if (key == "qualifier") {
                degree->qualifier = value;
            } else if (key == "value") {
                parse_int(cur, key, value, degree->value, 0, kDegreeOne);
            } else if (key == "corners") {
                parse_corners(cur, value, degree->corners);
            } else if (key == "start") {
                parse_int(cur, key, value, degree->start, 0, 100'000'000);
            } else if (key == "duration") {
                parse_int(cur, key, value, degree->duration, 1, 100'000'000);
            } else {
                cur.error("unknown key '" + key + "' in [degree]");
            }
        }
    }

    if (!seen_singletons.count("profile") || !profile_seen_kind) {
        errors.push_back("missing [profile] section with a 'kind' key");
    }
    if (!seen_singletons.count("run")) {
        errors.push_back("missing [run] section");
    }
    for (const auto& inj : config.injections) {
        if (inj.corners.empty()) errors.push_back("[injection] missing 'corners'");
        if (inj.duration == 0) errors.push_back("[injection] missing 'duration'");
    }
    for (const auto& deg : config.degrees) {
        if (deg.sensor.empty()) errors.push_back("[degree] missing 'sensor'");
        if (deg.qualifier.empty()) errors.push_back("[degree] missing 'qualifier'");
        if (deg.corners.empty()) errors.push_back("[degree] missing 'corners'");
        if (deg.duration == 0) errors.push_back("[degree] missing 'duration'");
    }

    ConfigParseResult out;
    out.errors = std::move(errors);
    if (out.errors.empty()) out.config = std::move(config);
    return out;
}

std::vector<std::string> resolve_config(ScenarioConfig& config, const CompiledRules& rules,
                                        std::uint32_t& initial_mode_mask) {
    std::vector<std::string> errors;
    if (rules.fls.rules.empty()) {
        errors.push_back("rulebase declares no fuzzy rules; the FLS cannot run");
    }
    if (config.duration == 0) {
        errors.push_back("[run] duration must be positive");
    }
    if (config.profile.kind == ProfileSpec::Kind::Recorded &&
        config.profile.values.size() < config.duration) {
        errors.push_back("recorded profile shorter than run duration");
    }
    initial_mode_mask = 0;
    for (const auto& name : config.initial_modes) {
        const int id = rules.table.symbols.mode_id(name);
        if (id < 0) {
            errors.push_back("initial mode '" + name + "' not declared in the rulebase");
        } else {
            initial_mode_mask |= 1u << id;
        }
    }
    for (const auto& inj : config.injections) {
        if (inj.start + inj.duration > config.duration) {
            errors.push_back("injection window exceeds run duration");
        }
    }
    for (auto& deg : config.degrees) {
        if (deg.start + deg.duration > config.duration) {
            errors.push_back("degree window exceeds run duration");
        }
        deg.predicate = rules.table.predicate_index(deg.sensor, deg.qualifier);
        if (deg.predicate < 0) {
            errors.push_back("degree sensor '" + deg.sensor + "' / qualifier '*" +
                             deg.qualifier + "*' is not referenced by any compiled rule");
        }
    }
    return errors;
}

}  // namespace algas
