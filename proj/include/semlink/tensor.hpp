#ifndef SEMLINK_TENSOR_HPP
#define SEMLINK_TENSOR_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "semlink/error.hpp"

namespace semlink {

// Frame stack in the normalized pixel domain [0,1], stored row-major,
// frame-major. channels is 3 for RGB content and 1 for sketches.
class VideoTensor {
public:
    VideoTensor(std::uint32_t frames, std::uint32_t height, std::uint32_t width,
                std::uint32_t channels, std::vector<float> data);

    std::uint32_t frames() const noexcept { return frames_; }
    std::uint32_t height() const noexcept { return height_; }
    std::uint32_t width() const noexcept { return width_; }
    std::uint32_t channels() const noexcept { return channels_; }

    const std::vector<float>& data() const noexcept { return data_; }

    std::size_t frame_elements() const noexcept {
        return static_cast<std::size_t>(height_) * width_ * channels_;
    }
    std::size_t total_elements() const noexcept { return data_.size(); }

    float at(std::uint32_t f, std::uint32_t y, std::uint32_t x, std::uint32_t c) const {
        return data_[((static_cast<std::size_t>(f) * height_ + y) * width_ + x) * channels_ + c];
    }

    static VideoTensor zeros(std::uint32_t frames, std::uint32_t height,
                             std::uint32_t width, std::uint32_t channels);

private:
    std::uint32_t frames_, height_, width_, channels_;
    std::vector<float> data_;
};

// Returns frame `f` (1-based, 1 <= f <= F) as a single-frame tensor.
VideoTensor frame_slice(const VideoTensor& video, std::uint32_t f);

struct BitSequence {
    std::vector<std::uint8_t> bits;  // each element 0 or 1

    std::size_t size() const noexcept { return bits.size(); }
    std::uint8_t operator[](std::size_t i) const { return bits[i]; }
};

// Complex baseband symbols. Encoders in this project emit unit average
// power; `power_scale` records the gain applied by power normalization
// (known side information at the receiver) and `zero_power` marks the
// degenerate all-zero input where no gain is defined.
struct SymbolSequence {
    std::vector<std::complex<double>> symbols;
    double power_scale = 1.0;
    bool zero_power = false;

    std::size_t size() const noexcept { return symbols.size(); }
};

double mean_symbol_power(const SymbolSequence& seq) noexcept;

// Assertion hook for analog encoder boundaries: mean |x|^2 within `tol`
// of 1 for nonzero sequences. Digital QAM sequences satisfy this only in
// expectation (the constellation has unit energy, a finite payload need
// not), so the hook applies to power-normalized outputs.
void check_unit_power(const SymbolSequence& seq, double tol = 1e-6);

// Bit budget of a token payload. Fractional token counts are legal here
// (dataset averages); concrete payload generation uses integers.
double bits_from_tokens(double n_tokens, double bits_per_token);

}  // namespace semlink

#endif
