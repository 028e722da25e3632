#include "algas/fir.hpp"

#include <stdexcept>
#include <string>

namespace algas {

FirFilter::FirFilter(int channel_width, FirMode mode)
    : width_(channel_width), mode_(mode) {
    if (channel_width != kRadarWidth && channel_width != kLidarWidth) {
        throw std::invalid_argument("FirFilter: unsupported channel width " +
                                    std::to_string(channel_width));
    }
    std::int32_t sum = 0;
    for (auto& c : coeffs_) {
        c = QCoeff::from_raw(kFirCoeffRaw);
        sum += c.raw;
    }
    if (sum != kFirTaps * kFirCoeffRaw) {
        throw std::logic_error("FirFilter: coefficient sum mismatch");
    }
    reset();
}

void FirFilter::reset() {
    delay_line_.fill(0);
    stage_xa_.fill(0);
    stage_xb_.fill(0);
    stage_regs_.fill(WideAccumulator{});
    tick_ = 0;
}

FirOutput FirFilter::step(CrispSample x) {
    if (x.width != width_) {
        throw std::invalid_argument("FirFilter: sample width mismatch");
    }

    // Delay line holds the most recent min(t, 15) inputs, zero-padded.
    for (int k = kFirTaps - 1; k > 0; --k) {
        delay_line_[static_cast<std::size_t>(k)] = delay_line_[static_cast<std::size_t>(k - 1)];
    }
    delay_line_[0] = x.value;

    FirOutput out;
    if (mode_ == FirMode::Functional) {
        WideAccumulator acc;
        for (int k = 0; k < kFirTaps; ++k) {
            acc.raw += static_cast<std::int64_t>(coeffs_[static_cast<std::size_t>(k)].raw) *
                       delay_line_[static_cast<std::size_t>(k)];
        }
        out.sample = saturating_rescale(acc, kFracBits, width_);
        out.valid_from_tick = tick_;
    } else {
        // Register semantics: the emitted value is the tail register as left
        // by the previous tick, then all stages latch simultaneously from
        // old state. Stage s multiplies the sample delayed by 2s ticks, so
        // psum[14] telescopes to the window ending 14 ticks back; emitting
        // pre-update adds the 15th.
        out.sample = saturating_rescale(stage_regs_[kFirTaps - 1], kFracBits, width_);
        // Window-end alignment: this output reflects inputs up to tick - 15.
        out.valid_from_tick = tick_ >= kFirTaps ? tick_ - kFirTaps : 0;

        const std::array<std::uint16_t, kFirTaps> xa = stage_xa_;
        const std::array<std::uint16_t, kFirTaps> xb = stage_xb_;
        const std::array<WideAccumulator, kFirTaps> psum = stage_regs_;
        for (int s = 0; s < kFirTaps; ++s) {
            const auto i = static_cast<std::size_t>(s);
            stage_xb_[i] = (s == 0) ? x.value : xa[i - 1];
            stage_xa_[i] = xb[i];
            const std::int64_t carry = (s == 0) ? 0 : psum[i - 1].raw;
            stage_regs_[i].raw =
                carry + static_cast<std::int64_t>(coeffs_[i].raw) * stage_xb_[i];
        }
    }
    ++tick_;
    return out;
}

}  // namespace algas
