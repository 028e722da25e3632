#include "algas/hsdci.hpp"

#include <cstdlib>
#include <stdexcept>

namespace algas {

namespace {

std::uint8_t sum_complement(const HsdciFrame& frame) {
    std::uint32_t sum = 0;
    for (int i = 0; i < 7; ++i) sum += frame[static_cast<std::size_t>(i)];
    return static_cast<std::uint8_t>((256 - (sum & 0xFF)) & 0xFF);
}

}  // namespace

HsdciFrame encode_frame(const HsdciFields& fields) {
    if (fields.corner > 3) throw std::domain_error("encode_frame: corner id above 2 bits");
    if (fields.distance > full_scale(kRadarWidth)) {
        throw std::domain_error("encode_frame: distance above 11 bits");
    }
    if (fields.verdict > 5) throw std::domain_error("encode_frame: verdict code above 5");
    const std::uint64_t packed = (static_cast<std::uint64_t>(fields.corner) << 46) |
                                 (static_cast<std::uint64_t>(fields.tick) << 14) |
                                 (static_cast<std::uint64_t>(fields.distance) << 3) |
                                 static_cast<std::uint64_t>(fields.verdict);
    HsdciFrame frame{};
    for (int i = 0; i < 6; ++i) {
        frame[static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>((packed >> (8 * (5 - i))) & 0xFF);
    }
    frame[6] = 0;  // reserved
    frame[7] = sum_complement(frame);
    return frame;
}

std::optional<HsdciFields> decode_frame(const HsdciFrame& frame) {
    std::uint32_t sum = 0;
    for (const auto byte : frame) sum += byte;
    if ((sum & 0xFF) != 0) return std::nullopt;  // checksum mismatch
    if (frame[6] != 0) return std::nullopt;      // reserved byte must be zero
    std::uint64_t packed = 0;
    for (int i = 0; i < 6; ++i) {
        packed = (packed << 8) | frame[static_cast<std::size_t>(i)];
    }
    HsdciFields fields;
    fields.corner = static_cast<std::uint8_t>((packed >> 46) & 0x3);
    fields.tick = static_cast<std::uint32_t>((packed >> 14) & 0xFFFFFFFFu);
    fields.distance = static_cast<std::uint16_t>((packed >> 3) & 0x7FF);
    fields.verdict = static_cast<std::uint8_t>(packed & 0x7);
    if (fields.verdict > 5) return std::nullopt;
    return fields;
}

PairStatus diff_pair_check(std::int32_t a, std::int32_t b, std::int32_t margin) {
    PairStatus status;
    status.delta = std::abs(a - b);
    status.margin = margin;
    status.within_margin = status.delta <= margin;
    return status;
}

}  // namespace algas
