#include "semlink/tensor.hpp"

#include <cmath>
#include <string>

namespace semlink {

VideoTensor::VideoTensor(std::uint32_t frames, std::uint32_t height, std::uint32_t width,
                         std::uint32_t channels, std::vector<float> data)
    : frames_(frames), height_(height), width_(width), channels_(channels),
      data_(std::move(data)) {
    if (frames_ < 1 || height_ < 1 || width_ < 1)
        raise(ErrorKind::Shape, "video dimensions must be at least 1");
    if (channels_ != 1 && channels_ != 3)
        raise(ErrorKind::Shape, "channel count must be 1 (sketch) or 3 (RGB)");
    const std::size_t expected =
        static_cast<std::size_t>(frames_) * height_ * width_ * channels_;
    if (data_.size() != expected)
        raise(ErrorKind::Shape, "data length " + std::to_string(data_.size()) +
                                    " does not match dimensions (expected " +
                                    std::to_string(expected) + ")");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        const float v = data_[i];
        if (!(v >= 0.0f && v <= 1.0f))
            raise(ErrorKind::Shape,
                  "pixel value out of [0,1] at element " + std::to_string(i));
    }
}

VideoTensor VideoTensor::zeros(std::uint32_t frames, std::uint32_t height,
                               std::uint32_t width, std::uint32_t channels) {
    const std::size_t n = static_cast<std::size_t>(frames) * height * width * channels;
    return VideoTensor(frames, height, width, channels, std::vector<float>(n, 0.0f));
}

VideoTensor frame_slice(const VideoTensor& video, std::uint32_t f) {
    if (f < 1 || f > video.frames())
        raise(ErrorKind::Range, "frame index " + std::to_string(f) +
                                    " out of range [1," +
                                    std::to_string(video.frames()) + "]");
    const std::size_t n = video.frame_elements();
    const std::size_t offset = static_cast<std::size_t>(f - 1) * n;
    std::vector<float> out(video.data().begin() + offset,
                           video.data().begin() + offset + n);
    return VideoTensor(1, video.height(), video.width(), video.channels(), std::move(out));
}

double mean_symbol_power(const SymbolSequence& seq) noexcept {
    if (seq.symbols.empty()) return 0.0;
    double acc = 0.0;
    for (const auto& s : seq.symbols) acc += std::norm(s);
    return acc / static_cast<double>(seq.symbols.size());
}

void check_unit_power(const SymbolSequence& seq, double tol) {
    if (seq.symbols.empty() || seq.zero_power) return;
    const double p = mean_symbol_power(seq);
    if (std::abs(p - 1.0) > tol)
        raise(ErrorKind::Contract,
              "symbol sequence mean power " + std::to_string(p) + " violates unit-power contract");
}

double bits_from_tokens(double n_tokens, double bits_per_token) {
    if (n_tokens < 0.0)
        raise(ErrorKind::Domain, "token count must be non-negative");
    if (bits_per_token < 1.0)
        raise(ErrorKind::Domain, "bits per token must be at least 1");
    return n_tokens * bits_per_token;
}

}  // namespace semlink
