#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "algas/numerics.hpp"

namespace algas {

// Membership degree in Q1.15 (0..32768) and rule weight in Q1.7 (0..128).
using Degree = std::uint16_t;
using Weight = std::uint8_t;
inline constexpr Degree kDegreeOne = 1u << 15;
inline constexpr Weight kWeightOne = 1u << 7;

// Vertical-rate command emitted toward the DIC actuator. Negative = descend.
struct FlsCommand {
    std::int8_t value = 0;
    friend bool operator==(const FlsCommand&, const FlsCommand&) = default;
};

// When no output term is active: gentle ascend/hover bias.
inline constexpr std::int8_t kFailSafeCommand = 16;

// Trapezoid membership shape; triangle is the degenerate case b == c.
struct Trapezoid {
    std::int32_t a = 0, b = 0, c = 0, d = 0;

    // Degree at x, rounded half up to Q1.15.
    Degree membership(std::int32_t x) const;
};

struct Term {
    std::string label;
    Trapezoid shape;
};

struct TermSet {
    std::string signal_name;
    std::int32_t lo = 0, hi = 0;  // universe bounds, inclusive
    std::vector<Term> terms;

    int index_of(const std::string& label) const;  // -1 when absent
    // Shape ordering, universe bounds, and full coverage (every point in
    // the universe carries nonzero membership in some term).
    std::vector<std::string> validate() const;
};

struct FlsRule {
    int radar_term = 0;
    int lidar_term = 0;
    int out_term = 0;
    Weight base_weight = kWeightOne;
    std::vector<std::string> tags;
};

struct GateEntry {
    bool enabled = true;
    Weight weight = kWeightOne;
    friend bool operator==(const GateEntry&, const GateEntry&) = default;
};
using GateVector = std::vector<GateEntry>;

// Immutable rulebase data, shareable read-only across all four corners.
struct FlsRuleSet {
    TermSet radar_terms;   // 11-bit universe
    TermSet lidar_terms;   // 10-bit universe
    TermSet output_terms;  // signed command universe
    std::vector<FlsRule> rules;

    // Output-term membership sampled at every integer point of the output
    // universe, built once at load time.
    std::vector<std::vector<Degree>> output_grid;

    void finalize();  // validates and builds output_grid; throws on bad data
    GateVector all_enabled() const { return GateVector(rules.size(), GateEntry{}); }
};

std::vector<Degree> fuzzify(CrispSample x, const TermSet& terms);

// Firing strength = min(antecedents) * base_weight * gate weight with
// truncating Q-format multiplies; per-term aggregation by max.
std::vector<Degree> infer(const std::vector<Degree>& radar_degrees,
                          const std::vector<Degree>& lidar_degrees,
                          const FlsRuleSet& rules, const GateVector& gates);

// Centroid over the integer points of the output universe with clipped
// (Mamdani) term shapes; fail-safe when nothing is active.
FlsCommand defuzzify(const std::vector<Degree>& aggregates, const FlsRuleSet& rules);

FlsCommand fls_step(CrispSample radar, CrispSample lidar, const FlsRuleSet& rules,
                    const GateVector& gates);

}  // namespace algas
