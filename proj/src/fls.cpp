#include "algas/fls.hpp"

#include <algorithm>
#include <stdexcept>

namespace algas {

namespace {

// floor(num/den + 1/2) for non-negative num, positive den.
std::int64_t div_round_half_up(std::int64_t num, std::int64_t den) {
    return (2 * num + den) / (2 * den);
}

}  // namespace

Degree Trapezoid::membership(std::int32_t x) const {
    if (x < a || x > d) return 0;
    if (x < b) {
        return static_cast<Degree>(
            div_round_half_up(static_cast<std::int64_t>(x - a) * kDegreeOne, b - a));
    }
    if (x <= c) return kDegreeOne;
    return static_cast<Degree>(
        div_round_half_up(static_cast<std::int64_t>(d - x) * kDegreeOne, d - c));
}

int TermSet::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].label == label) return static_cast<int>(i);
    }
    return -1;
}

std::vector<std::string> TermSet::validate() const {
    std::vector<std::string> errors;
    if (terms.empty()) {
        errors.push_back(signal_name + ": no terms declared");
        return errors;
    }
    for (const auto& t : terms) {
        const auto& s = t.shape;
        if (!(s.a <= s.b && s.b <= s.c && s.c <= s.d)) {
            errors.push_back(signal_name + "." + t.label + ": breakpoints not ordered");
        }
        if (s.a < lo || s.d > hi) {
            errors.push_back(signal_name + "." + t.label + ": breakpoints outside universe");
        }
    }
    if (!errors.empty()) return errors;
    for (std::int32_t x = lo; x <= hi; ++x) {
        bool covered = false;
        for (const auto& t : terms) {
            if (t.shape.membership(x) > 0) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            errors.push_back(signal_name + ": coverage gap at " + std::to_string(x));
            return errors;  // one gap is enough to reject the set
        }
    }
    return errors;
}

void FlsRuleSet::finalize() {
    auto require_clean = [](const TermSet& ts) {
        auto errs = ts.validate();
        if (!errs.empty()) throw std::invalid_argument("FlsRuleSet: " + errs.front());
    };
    require_clean(radar_terms);
    require_clean(lidar_terms);
    require_clean(output_terms);
    for (const auto& r : rules) {
        if (r.radar_term < 0 || r.radar_term >= static_cast<int>(radar_terms.terms.size()) ||
            r.lidar_term < 0 || r.lidar_term >= static_cast<int>(lidar_terms.terms.size()) ||
            r.out_term < 0 || r.out_term >= static_cast<int>(output_terms.terms.size())) {
            throw std::invalid_argument("FlsRuleSet: rule term index out of range");
        }
        if (r.base_weight > kWeightOne) {
            throw std::invalid_argument("FlsRuleSet: base weight above 1.0");
        }
    }
    output_grid.assign(output_terms.terms.size(), {});
    const auto points = static_cast<std::size_t>(output_terms.hi - output_terms.lo + 1);
    for (std::size_t t = 0; t < output_terms.terms.size(); ++t) {
        output_grid[t].resize(points);
        for (std::size_t p = 0; p < points; ++p) {
            output_grid[t][p] =
                output_terms.terms[t].shape.membership(output_terms.lo + static_cast<std::int32_t>(p));
        }
    }
}

std::vector<Degree> fuzzify(CrispSample x, const TermSet& terms) {
    if (x.value > terms.hi || terms.lo > static_cast<std::int32_t>(x.value)) {
        throw std::domain_error("fuzzify: sample outside universe");
    }
    std::vector<Degree> degrees(terms.terms.size());
    for (std::size_t i = 0; i < terms.terms.size(); ++i) {
        degrees[i] = terms.terms[i].shape.membership(x.value);
    }
    return degrees;
}

std::vector<Degree> infer(const std::vector<Degree>& radar_degrees,
                          const std::vector<Degree>& lidar_degrees,
                          const FlsRuleSet& rules, const GateVector& gates) {
    if (gates.size() != rules.rules.size()) {
        throw std::invalid_argument("infer: gate vector length mismatch");
    }
    std::vector<Degree> aggregates(rules.output_terms.terms.size(), 0);
    for (std::size_t i = 0; i < rules.rules.size(); ++i) {
        if (!gates[i].enabled) continue;
        const auto& r = rules.rules[i];
        std::uint32_t s = std::min(radar_degrees[static_cast<std::size_t>(r.radar_term)],
                                   lidar_degrees[static_cast<std::size_t>(r.lidar_term)]);
        s = (s * r.base_weight) >> 7;
        s = (s * gates[i].weight) >> 7;
        auto& agg = aggregates[static_cast<std::size_t>(r.out_term)];
        agg = std::max(agg, static_cast<Degree>(s));
    }
    return aggregates;
}

FlsCommand defuzzify(const std::vector<Degree>& aggregates, const FlsRuleSet& rules) {
    if (aggregates.size() != rules.output_terms.terms.size()) {
        throw std::invalid_argument("defuzzify: aggregate count mismatch");
    }
    std::int64_t num = 0;
    std::int64_t den = 0;
    const std::int32_t lo = rules.output_terms.lo;
    const auto points = rules.output_grid.empty() ? 0 : rules.output_grid.front().size();
    for (std::size_t p = 0; p < points; ++p) {
        std::uint32_t mu = 0;
        for (std::size_t t = 0; t < aggregates.size(); ++t) {
            mu = std::max(mu, static_cast<std::uint32_t>(std::min(
                                  aggregates[t], rules.output_grid[t][p])));
        }
        num += static_cast<std::int64_t>(lo + static_cast<std::int32_t>(p)) * mu;
        den += mu;
    }
    if (den == 0) return FlsCommand{kFailSafeCommand};
    // Round half away from zero.
    std::int64_t v = num >= 0 ? (2 * num + den) / (2 * den) : -((-2 * num + den) / (2 * den));
    v = std::clamp<std::int64_t>(v, -128, 127);
    return FlsCommand{static_cast<std::int8_t>(v)};
}

FlsCommand fls_step(CrispSample radar, CrispSample lidar, const FlsRuleSet& rules,
                    const GateVector& gates) {
    const auto radar_deg = fuzzify(radar, rules.radar_terms);
    const auto lidar_deg = fuzzify(lidar, rules.lidar_terms);
    return defuzzify(infer(radar_deg, lidar_deg, rules, gates), rules);
}

}  // namespace algas
