#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "algas/numerics.hpp"

namespace algas {

// Inter-corner message payload. Wire layout (8 bytes, fields big-endian in
// declared order): corner id (2 bits) | tick (32) | fused distance (11) |
// verdict code (3) packed into bytes 0..5, byte 6 reserved zero, byte 7 a
// sum-complement checksum over bytes 0..6.
struct HsdciFields {
    std::uint8_t corner = 0;    // 0..3
    std::uint32_t tick = 0;
    std::uint16_t distance = 0;  // 11-bit universe
    std::uint8_t verdict = 0;    // 0..5
    friend bool operator==(const HsdciFields&, const HsdciFields&) = default;
};

using HsdciFrame = std::array<std::uint8_t, 8>;

HsdciFrame encode_frame(const HsdciFields& fields);  // throws on field overflow
std::optional<HsdciFields> decode_frame(const HsdciFrame& frame);

struct PairStatus {
    std::uint8_t corner_a = 0;
    std::uint8_t corner_b = 2;
    std::int32_t delta = 0;
    std::int32_t margin = 0;
    bool within_margin = true;  // delta <= margin (boundary inclusive)
    bool comm_fault = false;    // checksum failure; counts as out-of-margin
    friend bool operator==(const PairStatus&, const PairStatus&) = default;
};

PairStatus diff_pair_check(std::int32_t a, std::int32_t b, std::int32_t margin);

}  // namespace algas
