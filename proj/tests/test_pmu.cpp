#include <doctest.h>

#include <random>

#include "algas/pmu.hpp"
#include "oracles.hpp"

using namespace algas;

namespace {

CrispSample s11(std::uint32_t v) { return CrispSample::make(v, kRadarWidth); }

std::vector<PmuVerdict> push_all(Pmu& pmu,
                                 const std::vector<std::pair<std::uint16_t, std::uint16_t>>& xs) {
    std::vector<PmuVerdict> verdicts;
    for (const auto& [r, l] : xs) {
        if (auto v = pmu.push(s11(r), s11(l))) verdicts.push_back(*v);
    }
    return verdicts;
}

}  // namespace

TEST_SUITE_BEGIN("pmu");

TEST_CASE("identical channels are nominal with zero statistics") {
    Pmu pmu;
    std::optional<PmuVerdict> verdict;
    for (int i = 0; i < 16; ++i) verdict = pmu.push(s11(1000), s11(1000));
    REQUIRE(verdict.has_value());
    CHECK(verdict->classification == PmuClass::Nominal);
    CHECK(verdict->stats.mean_abs_diff == 0);
    CHECK(verdict->stats.radar_variance == 0);
}

TEST_CASE("constant 300 LSB split is divergent") {
    Pmu pmu;
    std::optional<PmuVerdict> verdict;
    for (int i = 0; i < 16; ++i) verdict = pmu.push(s11(1000), s11(700));
    REQUIRE(verdict.has_value());
    CHECK(verdict->stats.mean_abs_diff == 300);
    CHECK(verdict->classification == PmuClass::DivergentUnknown);  // first frame
}

TEST_CASE("incomplete frames emit nothing") {
    Pmu pmu;
    for (int i = 0; i < 7; ++i) CHECK_FALSE(pmu.push(s11(1), s11(2)).has_value());
    CHECK(pmu.fill_count() == 7);
}

TEST_CASE("one-sided variance excess reads as a spectrum attack") {
    Pmu pmu;
    std::optional<PmuVerdict> verdict;
    for (int i = 0; i < 16; ++i) {
        // Alternating +/-128 jam on the lidar channel around a diverged mean.
        const std::uint16_t lidar = static_cast<std::uint16_t>(700 + (i % 2 ? 128 : -128));
        verdict = pmu.push(s11(1000), s11(lidar));
    }
    REQUIRE(verdict.has_value());
    CHECK(verdict->stats.radar_variance == 0);
    CHECK(verdict->stats.lidar_variance == 128 * 128);
    CHECK(verdict->stats.lidar_variance > pmu.thresholds().variance);
    CHECK(verdict->classification == PmuClass::AttackLidar);

    Pmu radar_jam;
    std::optional<PmuVerdict> v2;
    for (int i = 0; i < 16; ++i) {
        const std::uint16_t radar = static_cast<std::uint16_t>(1000 + (i % 2 ? 150 : -150));
        v2 = radar_jam.push(s11(radar), s11(700));
    }
    REQUIRE(v2.has_value());
    CHECK(v2->classification == PmuClass::AttackRadar);
}

TEST_CASE("mean-shift attribution on plain divergence") {
    Pmu pmu;
    // Frame 1: matched at 1000 -> Nominal, primes the previous means.
    for (int i = 0; i < 16; ++i) pmu.push(s11(1000), s11(1000));
    // Frame 2: lidar steps down 300, variances stay tiny.
    std::optional<PmuVerdict> verdict;
    for (int i = 0; i < 16; ++i) verdict = pmu.push(s11(1000), s11(700));
    REQUIRE(verdict.has_value());
    CHECK(verdict->classification == PmuClass::DivergentLidar);

    SUBCASE("radar stepping away blames radar") {
        Pmu p2;
        for (int i = 0; i < 16; ++i) p2.push(s11(1000), s11(1000));
        std::optional<PmuVerdict> v;
        for (int i = 0; i < 16; ++i) v = p2.push(s11(1400), s11(1000));
        REQUIRE(v.has_value());
        CHECK(v->classification == PmuClass::DivergentRadar);
    }
    SUBCASE("equal shifts tie to unknown") {
        Pmu p3;
        for (int i = 0; i < 16; ++i) p3.push(s11(1000), s11(1000));
        std::optional<PmuVerdict> v;
        for (int i = 0; i < 16; ++i) v = p3.push(s11(1100), s11(900));
        REQUIRE(v.has_value());
        CHECK(v->classification == PmuClass::DivergentUnknown);
    }
}

TEST_CASE("exactly floor(N/16) verdicts for N pushes") {
    std::mt19937_64 rng(0x1234);
    for (const std::size_t n : {0u, 1u, 15u, 16u, 17u, 160u, 1000u}) {
        Pmu pmu;
        std::vector<std::pair<std::uint16_t, std::uint16_t>> xs;
        for (std::size_t i = 0; i < n; ++i) {
            xs.emplace_back(static_cast<std::uint16_t>(rng() % 2048),
                            static_cast<std::uint16_t>(rng() % 2048));
        }
        CHECK(push_all(pmu, xs).size() == n / 16);
    }
}

TEST_CASE("statistics match the scalar reference bit-exactly") {
    std::mt19937_64 rng(0xBEE);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<std::uint16_t> radar(16);
        std::vector<std::uint16_t> lidar(16);
        std::array<std::uint16_t, 16> ra{};
        std::array<std::uint16_t, 16> la{};
        for (int i = 0; i < 16; ++i) {
            radar[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(rng() % 2048);
            lidar[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(rng() % 2048);
            ra[static_cast<std::size_t>(i)] = radar[static_cast<std::size_t>(i)];
            la[static_cast<std::size_t>(i)] = lidar[static_cast<std::size_t>(i)];
        }
        const auto got = frame_stats(ra, la);
        const auto want = oracles::pmu_stats_reference(radar, lidar);
        CHECK(got.mean_abs_diff == want.mad);
        CHECK(got.radar_mean == want.radar_mean);
        CHECK(got.lidar_mean == want.lidar_mean);
        CHECK(got.radar_variance == want.radar_var);
        CHECK(got.lidar_variance == want.lidar_var);
    }
}

TEST_CASE("persistent divergence is flagged by the first boundary past onset + 16") {
    for (const int onset : {0, 1, 5, 16, 17, 30, 33, 47}) {
        Pmu pmu;
        int first_flag = -1;
        for (int t = 0; t < 120; ++t) {
            const std::uint16_t lidar = t >= onset ? 700 : 1000;
            const auto v = pmu.push(s11(1000), s11(lidar));
            if (v && v->classification != PmuClass::Nominal && first_flag < 0) first_flag = t;
        }
        // First frame boundary (tick 16n+15) at or after onset + 16.
        int bound = onset + 16;
        while (bound % 16 != 15) ++bound;
        REQUIRE(first_flag >= 0);
        CHECK(first_flag <= bound);
        CHECK(bound <= onset + 31);
    }
}

TEST_CASE("larger constant offsets never flip a divergent frame to nominal") {
    std::mt19937_64 rng(0x5EED);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<std::uint16_t> base(16);
        for (auto& b : base) b = static_cast<std::uint16_t>(500 + rng() % 512);
        auto verdict_for = [&](std::int32_t offset) {
            Pmu pmu;
            std::optional<PmuVerdict> v;
            for (const auto b : base) {
                v = pmu.push(s11(b), s11(static_cast<std::uint32_t>(b + offset)));
            }
            return v->classification;
        };
        const auto o1 = static_cast<std::int32_t>(rng() % 400);
        const auto o2 = o1 + static_cast<std::int32_t>(rng() % 400);
        if (verdict_for(o1) != PmuClass::Nominal) {
            CHECK(verdict_for(o2) != PmuClass::Nominal);
        }
    }
}

TEST_CASE("replay determinism") {
    std::mt19937_64 rng(2);
    std::vector<std::pair<std::uint16_t, std::uint16_t>> xs;
    for (int i = 0; i < 320; ++i) {
        xs.emplace_back(static_cast<std::uint16_t>(rng() % 2048),
                        static_cast<std::uint16_t>(rng() % 2048));
    }
    Pmu a;
    Pmu b;
    CHECK(push_all(a, xs) == push_all(b, xs));
}

TEST_CASE("reset clears the frame and the previous-frame means") {
    Pmu pmu;
    for (int i = 0; i < 20; ++i) pmu.push(s11(1000), s11(1000));
    CHECK(pmu.fill_count() == 4);
    pmu.reset();
    CHECK(pmu.fill_count() == 0);
    // Suspect history is gone: a diverged first frame reads Unknown again.
    std::optional<PmuVerdict> v;
    for (int i = 0; i < 16; ++i) v = pmu.push(s11(1000), s11(700));
    REQUIRE(v.has_value());
    CHECK(v->classification == PmuClass::DivergentUnknown);

    SUBCASE("reset state equals a fresh instance") {
        Pmu fresh;
        std::mt19937_64 rng(77);
        std::vector<std::pair<std::uint16_t, std::uint16_t>> xs;
        for (int i = 0; i < 64; ++i) {
            xs.emplace_back(static_cast<std::uint16_t>(rng() % 2048),
                            static_cast<std::uint16_t>(rng() % 2048));
        }
        Pmu reset_one;
        reset_one.push(s11(9), s11(9));
        reset_one.reset();
        CHECK(push_all(reset_one, xs) == push_all(fresh, xs));
    }
}

TEST_CASE("width contract") {
    Pmu pmu;
    CHECK_THROWS_AS(pmu.push(s11(0), CrispSample::make(0, kLidarWidth)), std::invalid_argument);
}

TEST_SUITE_END();
