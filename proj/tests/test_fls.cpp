#include <doctest.h>

#include <cmath>
#include <random>

#include "algas/default_rules_text.hpp"
#include "algas/fls.hpp"
#include "algas/rules.hpp"
#include "oracles.hpp"

using namespace algas;

namespace {

const FlsRuleSet& default_fls() {
    static const FlsRuleSet ruleset = [] {
        auto loaded = load_rules(kDefaultRulesText);
        REQUIRE(loaded.compiled.has_value());
        return loaded.compiled->fls;
    }();
    return ruleset;
}

// Mirror of the engine's aggregate path for a raw input pair, used when a
// test needs the aggregates themselves rather than the command.
std::vector<Degree> aggregates_for(const FlsRuleSet& fls, std::uint32_t radar,
                                   std::uint32_t lidar, const GateVector& gates) {
    return infer(fuzzify(CrispSample::make(radar, kRadarWidth), fls.radar_terms),
                 fuzzify(CrispSample::make(lidar, kLidarWidth), fls.lidar_terms), fls, gates);
}

double oracle_for_aggregates(const FlsRuleSet& fls, const std::vector<Degree>& aggregates) {
    std::vector<double> real(aggregates.size());
    for (std::size_t i = 0; i < aggregates.size(); ++i) {
        real[i] = static_cast<double>(aggregates[i]) / kDegreeOne;
    }
    return oracles::centroid_reference(real, fls.output_terms);
}

}  // namespace

TEST_SUITE_BEGIN("fls");

TEST_CASE("trapezoid membership handles shoulders, plateaus, and edges") {
    const Trapezoid t{100, 200, 300, 400};
    CHECK(t.membership(99) == 0);
    CHECK(t.membership(100) == 0);
    CHECK(t.membership(150) == kDegreeOne / 2);
    CHECK(t.membership(200) == kDegreeOne);
    CHECK(t.membership(300) == kDegreeOne);
    CHECK(t.membership(350) == kDegreeOne / 2);
    CHECK(t.membership(400) == 0);
    const Trapezoid left{0, 0, 10, 20};
    CHECK(left.membership(0) == kDegreeOne);
    const Trapezoid right{10, 20, 30, 30};
    CHECK(right.membership(30) == kDegreeOne);
    const Trapezoid tri{0, 10, 10, 20};  // degenerate b == c
    CHECK(tri.membership(10) == kDegreeOne);
    CHECK(tri.membership(5) == kDegreeOne / 2);
}

TEST_CASE("fuzzify against the shipped radar term set") {
    const auto& fls = default_fls();
    const int near = fls.radar_terms.index_of("Near");
    const int medium = fls.radar_terms.index_of("Medium");
    const int ground = fls.radar_terms.index_of("Ground");
    REQUIRE(near >= 0);
    REQUIRE(medium >= 0);
    REQUIRE(ground >= 0);

    SUBCASE("plateau center carries full membership") {
        const auto deg = fuzzify(CrispSample::make(320, kRadarWidth), fls.radar_terms);
        CHECK(deg[static_cast<std::size_t>(near)] == kDegreeOne);
    }
    SUBCASE("crossover of the symmetric Near/Medium pair splits evenly") {
        const auto deg = fuzzify(CrispSample::make(768, kRadarWidth), fls.radar_terms);
        CHECK(deg[static_cast<std::size_t>(near)] == kDegreeOne / 2);
        CHECK(deg[static_cast<std::size_t>(medium)] == kDegreeOne / 2);
    }
    SUBCASE("zero input sits on the Ground shoulder") {
        const auto deg = fuzzify(CrispSample::make(0, kRadarWidth), fls.radar_terms);
        CHECK(deg[static_cast<std::size_t>(ground)] == kDegreeOne);
    }
    SUBCASE("every universe point carries some membership") {
        for (std::uint32_t x = 0; x <= 2047; ++x) {
            const auto deg = fuzzify(CrispSample::make(x, kRadarWidth), fls.radar_terms);
            bool any = false;
            for (const auto d : deg) any = any || d > 0;
            REQUIRE(any);
        }
    }
}

TEST_CASE("term sets with coverage gaps are rejected at load time") {
    TermSet gap;
    gap.signal_name = "T";
    gap.lo = 0;
    gap.hi = 100;
    gap.terms = {{"Low", {0, 0, 10, 20}}, {"High", {40, 50, 100, 100}}};
    CHECK(!gap.validate().empty());

    FlsRuleSet bad;
    bad.radar_terms = gap;
    CHECK_THROWS_AS(bad.finalize(), std::invalid_argument);

    TermSet unordered;
    unordered.signal_name = "U";
    unordered.lo = 0;
    unordered.hi = 10;
    unordered.terms = {{"X", {5, 3, 8, 10}}};
    CHECK(!unordered.validate().empty());
}

TEST_CASE("infer identities") {
    const auto& fls = default_fls();
    const std::vector<Degree> radar_deg =
        fuzzify(CrispSample::make(1800, kRadarWidth), fls.radar_terms);
    const std::vector<Degree> lidar_deg =
        fuzzify(CrispSample::make(900, kLidarWidth), fls.lidar_terms);

    SUBCASE("all gates disabled yields zero aggregates") {
        GateVector off(fls.rules.size(), GateEntry{false, kWeightOne});
        for (const auto a : infer(radar_deg, lidar_deg, fls, off)) CHECK(a == 0);
    }
    SUBCASE("a fully fired rule aggregates to full degree") {
        // 1800/900 sit on the Far plateaus: the Far+Far rule fires at 1.0.
        const auto agg = infer(radar_deg, lidar_deg, fls, fls.all_enabled());
        const int fd = fls.output_terms.index_of("FastDescend");
        REQUIRE(fd >= 0);
        CHECK(agg[static_cast<std::size_t>(fd)] == kDegreeOne);
    }
    SUBCASE("gate length mismatch is a contract violation") {
        GateVector wrong(fls.rules.size() + 1, GateEntry{});
        CHECK_THROWS_AS(infer(radar_deg, lidar_deg, fls, wrong), std::invalid_argument);
    }
}

TEST_CASE("max aggregation keeps the strongest firing per term") {
    FlsRuleSet fls = default_fls();
    // Two rules naming the same consequent with different base weights.
    fls.rules.clear();
    FlsRule a;
    a.radar_term = fls.radar_terms.index_of("Far");
    a.lidar_term = fls.lidar_terms.index_of("Far");
    a.out_term = fls.output_terms.index_of("Hold");
    a.base_weight = 64;  // 0.5
    FlsRule b = a;
    b.base_weight = 32;  // 0.25
    fls.rules = {a, b};
    fls.finalize();
    const auto agg = aggregates_for(fls, 1800, 900, fls.all_enabled());
    CHECK(agg[static_cast<std::size_t>(a.out_term)] == kDegreeOne / 2);
}

TEST_CASE("defuzzify centroid and fail-safe") {
    const auto& fls = default_fls();
    const auto n_terms = fls.output_terms.terms.size();
    const int hold = fls.output_terms.index_of("Hold");
    const int slow = fls.output_terms.index_of("SlowDescend");
    REQUIRE(hold >= 0);
    REQUIRE(slow >= 0);

    SUBCASE("a symmetric term alone centers on zero at any degree") {
        for (const Degree d : {1, 100, 16384, 32768}) {
            std::vector<Degree> agg(n_terms, 0);
            agg[static_cast<std::size_t>(hold)] = d;
            CHECK(defuzzify(agg, fls).value == 0);
        }
    }
    SUBCASE("nothing active returns the fail-safe hover bias") {
        std::vector<Degree> agg(n_terms, 0);
        CHECK(defuzzify(agg, fls).value == kFailSafeCommand);
    }
    SUBCASE("equal SlowDescend and Hold activation tracks the floating oracle") {
        std::vector<Degree> agg(n_terms, 0);
        agg[static_cast<std::size_t>(hold)] = kDegreeOne / 2;
        agg[static_cast<std::size_t>(slow)] = kDegreeOne / 2;
        const int fixed = defuzzify(agg, fls).value;
        const double oracle = oracle_for_aggregates(fls, agg);
        CHECK(std::abs(fixed - oracle) <= 1.0);
        CHECK(fixed < 0);
    }
}

TEST_CASE("fixed centroid stays within 1 LSB of the floating oracle") {
    const auto& fls = default_fls();
    std::mt19937_64 rng(0xF00D);
    for (int i = 0; i < 2000; ++i) {
        std::vector<Degree> agg(fls.output_terms.terms.size());
        bool any = false;
        for (auto& a : agg) {
            // Mix in zero and tiny aggregates.
            const auto pick = rng() % 4;
            a = pick == 0 ? 0 : static_cast<Degree>(rng() % (kDegreeOne + 1));
            any = any || a > 0;
        }
        const int fixed = defuzzify(agg, fls).value;
        if (!any) {
            CHECK(fixed == kFailSafeCommand);
            continue;
        }
        const double oracle = oracle_for_aggregates(fls, agg);
        REQUIRE(std::abs(fixed - oracle) <= 1.0);
    }
}

TEST_CASE("fls_step end-to-end against the oracle") {
    const auto& fls = default_fls();
    const auto gates = fls.all_enabled();
    auto step = [&](std::uint32_t r, std::uint32_t l) {
        return fls_step(CrispSample::make(r, kRadarWidth), CrispSample::make(l, kLidarWidth),
                        fls, gates)
            .value;
    };
    auto oracle = [&](std::uint32_t r, std::uint32_t l) {
        return oracle_for_aggregates(fls, aggregates_for(fls, r, l, gates));
    };

    SUBCASE("both channels far: fast descend") {
        const int cmd = step(1800, 900);
        CHECK(std::abs(cmd - oracle(1800, 900)) <= 1.0);
        CHECK(cmd <= -80);
    }
    SUBCASE("both channels grounded: hold") {
        CHECK(step(0, 0) == 0);
    }
    SUBCASE("contradictory channels: the mismatch rule commands ascend") {
        const int cmd = step(2047, 0);
        CHECK(std::abs(cmd - oracle(2047, 0)) <= 1.0);
        CHECK(cmd > 0);
    }
    SUBCASE("deterministic") {
        CHECK(step(1234, 321) == step(1234, 321));
    }
}

TEST_CASE("random input pairs stay within the output universe") {
    const auto& fls = default_fls();
    const auto gates = fls.all_enabled();
    std::mt19937_64 rng(31337);
    for (int i = 0; i < 5000; ++i) {
        const auto r = static_cast<std::uint32_t>(rng() % 2048);
        const auto l = static_cast<std::uint32_t>(rng() % 1024);
        const auto cmd = fls_step(CrispSample::make(r, kRadarWidth),
                                  CrispSample::make(l, kLidarWidth), fls, gates);
        CHECK(cmd.value >= -128);
        CHECK(cmd.value <= 127);
    }
}

TEST_CASE("gate monotonicity: lowering one gate never helps its rule") {
    const auto& fls = default_fls();
    std::mt19937_64 rng(5150);
    for (int i = 0; i < 500; ++i) {
        const auto r = static_cast<std::uint32_t>(rng() % 2048);
        const auto l = static_cast<std::uint32_t>(rng() % 1024);
        GateVector gates = fls.all_enabled();
        for (auto& g : gates) g.weight = static_cast<Weight>(rng() % (kWeightOne + 1));
        const auto base = aggregates_for(fls, r, l, gates);

        const auto target = rng() % fls.rules.size();
        GateVector reduced = gates;
        reduced[target].weight = static_cast<Weight>(reduced[target].weight / 2);
        const auto after = aggregates_for(fls, r, l, reduced);

        const int gated_term = fls.rules[target].out_term;
        for (std::size_t t = 0; t < base.size(); ++t) {
            if (static_cast<int>(t) == gated_term) {
                CHECK(after[t] <= base[t]);
            } else {
                // No other rule was touched; unrelated terms are unchanged.
                CHECK(after[t] == base[t]);
            }
        }
    }
}

TEST_CASE("scaling all gate weights preserves the maximizing term") {
    const auto& fls = default_fls();
    std::mt19937_64 rng(777);
    for (int i = 0; i < 500; ++i) {
        const auto r = static_cast<std::uint32_t>(rng() % 2048);
        const auto l = static_cast<std::uint32_t>(rng() % 1024);
        const auto base = aggregates_for(fls, r, l, fls.all_enabled());
        const auto argmax = static_cast<std::size_t>(
            std::max_element(base.begin(), base.end()) - base.begin());
        if (base[argmax] == 0) continue;

        const auto k = static_cast<Weight>(1 + rng() % kWeightOne);
        GateVector scaled(fls.rules.size(), GateEntry{true, k});
        const auto after = aggregates_for(fls, r, l, scaled);
        for (const auto a : after) {
            CHECK(after[argmax] >= a);  // still among the maximizers
        }
    }
}

TEST_SUITE_END();
