#ifndef SEMLINK_BUDGET_HPP
#define SEMLINK_BUDGET_HPP

#include <cstdint>

#include "semlink/code_rate.hpp"

namespace semlink {

// Source dimensions entering the channel-bandwidth-ratio denominator.
struct VideoDims {
    std::uint32_t channels = 3;  // C_in
    std::uint32_t height = 256;  // H
    std::uint32_t width = 256;   // W
    std::uint32_t frames = 8;    // F

    double pixel_count() const noexcept {
        return static_cast<double>(channels) * height * width * frames;
    }
};

// Per-scheme symbol accounting. Counts are fractional in budget mode
// (dataset averages); concrete transmissions round up to whole symbols.
struct LinkBudget {
    double text_symbols = 0.0;    // description payload
    double visual_symbols = 0.0;  // analog payload or opaque codec budget
    double total_symbols = 0.0;
    double denominator = 0.0;  // C_in * H * W * F
    double cbr = 0.0;          // total_symbols / denominator
};

// Symbols needed for a coded, modulated bit payload: n_bits / (M * R_c).
double description_symbols(double n_bits, int modulation_bits, const CodeRate& rate);

// cbr = K / (C_in * H * W * F); every dimension must be at least 1.
double cbr(double symbols, const VideoDims& dims);

LinkBudget make_budget(double text_symbols, double visual_symbols, const VideoDims& dims);

}  // namespace semlink

#endif
