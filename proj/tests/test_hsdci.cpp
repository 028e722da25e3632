#include <doctest.h>

#include <random>

#include "algas/default_rules_text.hpp"
#include "algas/system.hpp"
#include "algas/trace.hpp"

using namespace algas;

namespace {

std::shared_ptr<const CompiledRules> default_rules() {
    static std::shared_ptr<const CompiledRules> rules = [] {
        auto loaded = load_rules(kDefaultRulesText);
        REQUIRE(loaded.compiled.has_value());
        return std::make_shared<const CompiledRules>(std::move(*loaded.compiled));
    }();
    return rules;
}

std::array<CornerInput, kCornerCount> uniform_inputs(std::uint32_t radar, std::uint32_t lidar) {
    std::array<CornerInput, kCornerCount> inputs;
    for (auto& in : inputs) {
        in.radar = CrispSample::make(radar, kRadarWidth);
        in.lidar = CrispSample::make(lidar, kLidarWidth);
    }
    return inputs;
}

}  // namespace

TEST_SUITE_BEGIN("hsdci");

TEST_CASE("frame codec round-trips every valid field combination") {
    std::mt19937_64 rng(0xFACE);
    for (std::uint8_t corner = 0; corner < 4; ++corner) {
        for (std::uint8_t verdict = 0; verdict <= 5; ++verdict) {
            for (int i = 0; i < 64; ++i) {
                const HsdciFields fields{corner, static_cast<std::uint32_t>(rng()),
                                         static_cast<std::uint16_t>(rng() % 2048), verdict};
                const auto decoded = decode_frame(encode_frame(fields));
                REQUIRE(decoded.has_value());
                CHECK(*decoded == fields);
            }
        }
    }
}

TEST_CASE("encode rejects out-of-range fields") {
    CHECK_THROWS_AS(encode_frame({4, 0, 0, 0}), std::domain_error);
    CHECK_THROWS_AS(encode_frame({0, 0, 2048, 0}), std::domain_error);
    CHECK_THROWS_AS(encode_frame({0, 0, 0, 6}), std::domain_error);
    CHECK_NOTHROW(encode_frame({3, 0xFFFFFFFFu, 2047, 5}));
}

TEST_CASE("every single-byte corruption is detected") {
    std::mt19937_64 rng(0xC0DE);
    for (int trial = 0; trial < 32; ++trial) {
        const HsdciFields fields{static_cast<std::uint8_t>(rng() % 4),
                                 static_cast<std::uint32_t>(rng()),
                                 static_cast<std::uint16_t>(rng() % 2048),
                                 static_cast<std::uint8_t>(rng() % 6)};
        const auto frame = encode_frame(fields);
        for (std::size_t pos = 0; pos < frame.size(); ++pos) {
            for (int flip = 1; flip <= 255; flip += 6) {  // sample of patterns
                auto corrupted = frame;
                corrupted[pos] ^= static_cast<std::uint8_t>(flip);
                const auto decoded = decode_frame(corrupted);
                REQUIRE_FALSE(decoded.has_value());
            }
        }
    }
}

TEST_CASE("diff pair check is inclusive at the margin and symmetric") {
    CHECK(diff_pair_check(500, 500, 32).within_margin);
    CHECK(diff_pair_check(500, 500, 32).delta == 0);
    const auto mismatch = diff_pair_check(500, 560, 32);
    CHECK_FALSE(mismatch.within_margin);
    CHECK(mismatch.delta == 60);
    CHECK(diff_pair_check(500, 532, 32).within_margin);  // boundary inclusive
    CHECK_FALSE(diff_pair_check(500, 533, 32).within_margin);

    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        const auto a = static_cast<std::int32_t>(rng() % 2048);
        const auto b = static_cast<std::int32_t>(rng() % 2048);
        const auto m = static_cast<std::int32_t>(rng() % 100);
        const auto ab = diff_pair_check(a, b, m);
        const auto ba = diff_pair_check(b, a, m);
        CHECK(ab.delta == ba.delta);
        CHECK(ab.within_margin == ba.within_margin);
    }
}

TEST_CASE("matched corners raise no alarms") {
    SystemConfig cfg;
    AlgasSystem system(cfg, default_rules());
    SystemOutput out;
    for (int t = 0; t < 40; ++t) out = system.step(uniform_inputs(800, 400));
    CHECK_FALSE(out.alarm_pair_mismatch);
    CHECK_FALSE(out.alarm_attack);
    CHECK_FALSE(out.alarm_divergence);
    for (const auto& pair : out.pairs) {
        CHECK(pair.within_margin);
        CHECK(pair.delta == 0);
        CHECK_FALSE(pair.comm_fault);
    }
    CHECK(out.corners[0].fused == 800);
}

TEST_CASE("a tilted opposite corner trips exactly its own pair") {
    SystemConfig cfg;
    cfg.pair_margin = 32;
    AlgasSystem system(cfg, default_rules());
    auto inputs = uniform_inputs(800, 400);
    inputs[2].radar = CrispSample::make(860, kRadarWidth);
    inputs[2].lidar = CrispSample::make(430, kLidarWidth);
    SystemOutput out;
    for (int t = 0; t < 40; ++t) out = system.step(inputs);
    CHECK(out.pairs[0].delta == 60);
    CHECK_FALSE(out.pairs[0].within_margin);
    CHECK(out.pairs[1].within_margin);
    CHECK(out.alarm_pair_mismatch);
}

TEST_CASE("a corrupted frame marks the pair as comm-faulted") {
    SystemConfig cfg;
    AlgasSystem system(cfg, default_rules());
    system.set_frame_tamper([](HsdciFrame& frame, int source) {
        if (source == 1) frame[3] ^= 0x40;
    });
    const auto out = system.step(uniform_inputs(800, 400));
    CHECK_FALSE(out.pairs[1].within_margin);
    CHECK(out.pairs[1].comm_fault);
    CHECK_FALSE(out.pairs[0].comm_fault);
    CHECK(out.alarm_pair_mismatch);
}

TEST_CASE("serial and parallel stepping produce identical outputs") {
    SystemConfig serial_cfg;
    SystemConfig parallel_cfg;
    parallel_cfg.parallel = true;
    AlgasSystem a(serial_cfg, default_rules());
    AlgasSystem b(parallel_cfg, default_rules());
    std::mt19937_64 rng(0xABCD);
    for (int t = 0; t < 200; ++t) {
        std::array<CornerInput, kCornerCount> inputs;
        for (auto& in : inputs) {
            in.radar = CrispSample::make(static_cast<std::uint32_t>(rng() % 2048), kRadarWidth);
            in.lidar = CrispSample::make(static_cast<std::uint32_t>(rng() % 1024), kLidarWidth);
        }
        const auto oa = a.step(inputs);
        const auto ob = b.step(inputs);
        REQUIRE(oa.tick == ob.tick);
        for (int c = 0; c < kCornerCount; ++c) {
            const auto i = static_cast<std::size_t>(c);
            REQUIRE(oa.corners[i].fused == ob.corners[i].fused);
            REQUIRE(oa.corners[i].command == ob.corners[i].command);
            REQUIRE(oa.corners[i].verdict_code == ob.corners[i].verdict_code);
            REQUIRE(oa.corners[i].modes_after == ob.corners[i].modes_after);
        }
        REQUIRE(oa.pairs[0] == ob.pairs[0]);
        REQUIRE(oa.pairs[1] == ob.pairs[1]);
    }
}

TEST_CASE("consensus mode report follows the 3-of-4 majority") {
    SystemConfig cfg;
    const auto rules = default_rules();
    const int landing = rules->table.symbols.mode_id("Landing-Mode");
    REQUIRE(landing >= 0);
    cfg.initial_modes = 1u << landing;
    AlgasSystem system(cfg, rules);
    const auto out = system.step(uniform_inputs(800, 400));
    CHECK((out.consensus_modes >> landing & 1u) == 1u);
    CHECK_FALSE(out.consensus_unsettled);
}

TEST_SUITE_END();
