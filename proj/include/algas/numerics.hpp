#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace algas {

// Channel bus widths. Radar carries the 11-bit bus, lidar the 10-bit bus;
// the assignment is fixed system-wide.
inline constexpr int kRadarWidth = 11;
inline constexpr int kLidarWidth = 10;

// Q1.15 coefficient scale shared by the FIR and FLS membership math.
inline constexpr int kFracBits = 15;
inline constexpr std::int32_t kQ15One = 1 << kFracBits;  // 32768

inline constexpr std::uint16_t full_scale(int width) {
    return static_cast<std::uint16_t>((1u << width) - 1u);
}

// A bounded unsigned distance reading. LSB = one distance quantum.
// Width is fixed per channel for the lifetime of a run.
struct CrispSample {
    std::uint16_t value = 0;
    std::uint8_t width = kRadarWidth;

    static CrispSample make(std::uint32_t value, int width) {
        if (width != kRadarWidth && width != kLidarWidth) {
            throw std::invalid_argument("CrispSample: unsupported width " +
                                        std::to_string(width));
        }
        if (value > full_scale(width)) {
            throw std::domain_error("CrispSample: value " + std::to_string(value) +
                                    " exceeds " + std::to_string(width) + "-bit range");
        }
        return CrispSample{static_cast<std::uint16_t>(value),
                           static_cast<std::uint8_t>(width)};
    }

    friend bool operator==(const CrispSample&, const CrispSample&) = default;
};

// Q1.15 signed coefficient. Represented value = raw / 2^15.
struct QCoeff {
    std::int32_t raw = 0;

    static QCoeff from_raw(std::int32_t raw) {
        if (raw <= -(1 << 16) || raw >= (1 << 16)) {
            throw std::domain_error("QCoeff: raw out of range");
        }
        return QCoeff{raw};
    }
};

// Accumulator with headroom for 15 MACs of width-11 x Q1.15 products
// (needs width + 15 + ceil(log2 15) = 30 bits; int64 is ample).
struct WideAccumulator {
    std::int64_t raw = 0;
};

// Maps a unitless ratio in [0,1] onto the channel universe.
// Ties round half up.
inline CrispSample quantize(double real_value, int width) {
    if (width != kRadarWidth && width != kLidarWidth) {
        throw std::invalid_argument("quantize: unsupported width");
    }
    if (!(real_value >= 0.0 && real_value <= 1.0)) {
        throw std::domain_error("quantize: value outside [0,1]");
    }
    const double scaled = real_value * full_scale(width);
    auto v = static_cast<std::uint32_t>(scaled + 0.5);
    return CrispSample::make(v, width);
}

// Truncation toward negative infinity, any divisor power of two.
inline std::int64_t floor_shift(std::int64_t v, int bits) {
    return v >> bits;  // arithmetic shift: well-defined for signed since C++20
}

// Output stage of the AAC chain: drop the fractional bits (floor) and
// saturate into the channel universe.
inline CrispSample saturating_rescale(WideAccumulator acc, int frac_bits, int out_width) {
    if (frac_bits != kFracBits) {
        throw std::invalid_argument("saturating_rescale: frac_bits must be 15");
    }
    if (out_width != kRadarWidth && out_width != kLidarWidth) {
        throw std::invalid_argument("saturating_rescale: unsupported width");
    }
    std::int64_t shifted = floor_shift(acc.raw, frac_bits);
    const std::int64_t hi = full_scale(out_width);
    if (shifted < 0) shifted = 0;
    if (shifted > hi) shifted = hi;
    return CrispSample{static_cast<std::uint16_t>(shifted),
                       static_cast<std::uint8_t>(out_width)};
}

}  // namespace algas
