#ifndef SEMLINK_TURBO_HPP
#define SEMLINK_TURBO_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "semlink/code_rate.hpp"
#include "semlink/tensor.hpp"

namespace semlink {

// Rate-1/3 parallel-concatenated turbo code: two identical 8-state recursive
// systematic convolutional encoders with octal generators (13, 15), both
// trellis-terminated, joined by a quadratic-permutation-polynomial
// interleaver pi(i) = (f1*i + f2*i^2) mod L.
//
// Codeword layout: systematic(L) || parity1(L) || parity2(L) ||
// tail1_sys(m) || tail1_par(m) || tail2_sys(m) || tail2_par(m),
// so the length is 3L + 4m with m = memory.
struct TurboCodeSpec {
    unsigned feedback_octal = 013;     // 1 + D^2 + D^3
    unsigned feedforward_octal = 015;  // 1 + D + D^3
    int memory = 3;
    std::vector<std::uint32_t> interleaver;  // bijection on [0, L)
    int decode_iterations = 8;
    double extrinsic_scale = 0.75;  // max-log extrinsic damping

    std::size_t message_length() const noexcept { return interleaver.size(); }
    std::size_t tail_length() const noexcept { return 4 * static_cast<std::size_t>(memory); }
    std::size_t codeword_length() const noexcept {
        return 3 * message_length() + tail_length();
    }
    CodeRate native_rate() const noexcept { return CodeRate{1, 3}; }

    // Builds the default spec for a given message length. The interleaver
    // parameters are derived deterministically from L (f1 smallest odd
    // value >= max(3, L/16) coprime to L; f2 a multiple of the radical of L
    // near L/8) and the permutation is verified to be a bijection.
    static TurboCodeSpec standard(std::size_t message_length, int decode_iterations = 8);
};

// QPP permutation for explicit parameters; throws Config if not bijective.
std::vector<std::uint32_t> qpp_interleaver(std::size_t length, std::uint64_t f1,
                                           std::uint64_t f2);

BitSequence turbo_encode(const BitSequence& message, const TurboCodeSpec& spec);

struct TurboDecodeResult {
    BitSequence message;
    int iterations_used = 0;
};

// Iterative max-log BCJR decoding with extrinsic exchange. Stops early when
// the two constituent decoders' hard decisions agree within one iteration.
// LLR convention: positive means bit 0.
TurboDecodeResult turbo_decode(const std::vector<double>& llrs, const TurboCodeSpec& spec);

}  // namespace semlink

#endif
