#include <doctest.h>

#include <random>

#include "algas/numerics.hpp"

using namespace algas;

TEST_SUITE_BEGIN("numerics");

TEST_CASE("quantize maps the unit interval onto the channel universe") {
    CHECK(quantize(0.0, 11).value == 0);
    CHECK(quantize(1.0, 11).value == 2047);
    // round(0.5 * 1023) = 511.5, half-up
    CHECK(quantize(0.5, 10).value == 512);
    CHECK(quantize(1.0, 10).value == 1023);
}

TEST_CASE("quantize rejects out-of-range inputs") {
    CHECK_THROWS_AS(quantize(-0.01, 11), std::domain_error);
    CHECK_THROWS_AS(quantize(1.01, 11), std::domain_error);
    CHECK_THROWS_AS(quantize(0.5, 9), std::invalid_argument);
}

TEST_CASE("saturating_rescale truncates toward negative infinity and clamps") {
    // 1024 * 2185 = 2,237,440; floor(/32768) = 68
    CHECK(saturating_rescale(WideAccumulator{2'237'440}, 15, 11).value == 68);
    CHECK(saturating_rescale(WideAccumulator{0}, 15, 11).value == 0);
    CHECK(saturating_rescale(WideAccumulator{1 << 30}, 15, 10).value == 1023);
    CHECK(saturating_rescale(WideAccumulator{-1}, 15, 11).value == 0);
    CHECK(saturating_rescale(WideAccumulator{32767}, 15, 11).value == 0);
    CHECK(saturating_rescale(WideAccumulator{32768}, 15, 11).value == 1);
    CHECK_THROWS_AS(saturating_rescale(WideAccumulator{0}, 14, 11), std::invalid_argument);
}

TEST_CASE("floor_shift is a true floor division by powers of two") {
    CHECK(floor_shift(-1, 15) == -1);
    CHECK(floor_shift(-32769, 15) == -2);
    CHECK(floor_shift(-32768, 15) == -1);
    CHECK(floor_shift(65535, 15) == 1);
}

TEST_CASE("CrispSample construction enforces the width bound") {
    CHECK(CrispSample::make(2047, 11).value == 2047);
    CHECK_THROWS_AS(CrispSample::make(2048, 11), std::domain_error);
    CHECK_THROWS_AS(CrispSample::make(1024, 10), std::domain_error);
    CHECK_THROWS_AS(CrispSample::make(0, 12), std::invalid_argument);

    std::mt19937_64 rng(2024);
    for (int i = 0; i < 10000; ++i) {
        const int width = (rng() & 1) ? 11 : 10;
        const auto value = static_cast<std::uint32_t>(rng() % (1u << 12));
        if (value <= full_scale(width)) {
            const auto s = CrispSample::make(value, width);
            CHECK(s.value <= full_scale(width));
        } else {
            CHECK_THROWS_AS(CrispSample::make(value, width), std::domain_error);
        }
    }
}

TEST_CASE("quantize and saturating_rescale are monotone") {
    std::mt19937_64 rng(7);
    auto unit = [&] { return static_cast<double>(rng() % 1000001) / 1000000.0; };
    for (int i = 0; i < 5000; ++i) {
        double a = unit();
        double b = unit();
        if (a > b) std::swap(a, b);
        CHECK(quantize(a, 11).value <= quantize(b, 11).value);
        CHECK(quantize(a, 10).value <= quantize(b, 10).value);

        auto acc = [&] {
            return static_cast<std::int64_t>(rng() % (1ull << 40)) - (1ll << 39);
        };
        std::int64_t x = acc();
        std::int64_t y = acc();
        if (x > y) std::swap(x, y);
        CHECK(saturating_rescale(WideAccumulator{x}, 15, 11).value <=
              saturating_rescale(WideAccumulator{y}, 15, 11).value);
    }
}

TEST_SUITE_END();
