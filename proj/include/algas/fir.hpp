#pragma once

#include <array>
#include <cstdint>

#include "algas/numerics.hpp"

namespace algas {

inline constexpr int kFirTaps = 15;
// q15(1/15), rounded. Sum over 15 taps = 32775.
inline constexpr std::int32_t kFirCoeffRaw = 2185;
// Group delay of the symmetric 15-tap window, used for scenario alignment.
inline constexpr int kFirGroupDelay = (kFirTaps - 1) / 2;

enum class FirMode : std::uint8_t { Functional, Timed };

struct FirOutput {
    CrispSample sample;
    std::uint64_t valid_from_tick = 0;
};

// One systolic moving-average FIR channel filter.
//
// Functional mode evaluates the full 15-tap MAC against the delay line and
// rescales immediately. Timed mode models the AAC cascade: partial sums
// march through one accumulator register per tap while the sample stream
// marches through a two-register pipe per stage, so the output stream is
// the functional stream delayed by exactly 15 ticks.
class FirFilter {
  public:
    FirFilter(int channel_width, FirMode mode);

    FirOutput step(CrispSample x);
    void reset();

    int channel_width() const { return width_; }
    FirMode mode() const { return mode_; }
    std::uint64_t tick() const { return tick_; }

  private:
    int width_;
    FirMode mode_;
    std::array<QCoeff, kFirTaps> coeffs_{};
    std::array<std::uint16_t, kFirTaps> delay_line_{};  // [0] most recent
    std::array<std::uint16_t, kFirTaps> stage_xa_{};    // per-stage sample regs
    std::array<std::uint16_t, kFirTaps> stage_xb_{};
    std::array<WideAccumulator, kFirTaps> stage_regs_{};
    std::uint64_t tick_ = 0;
};

}  // namespace algas
