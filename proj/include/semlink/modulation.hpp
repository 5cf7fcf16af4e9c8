#ifndef SEMLINK_MODULATION_HPP
#define SEMLINK_MODULATION_HPP

#include <complex>
#include <vector>

#include "semlink/tensor.hpp"

namespace semlink {

// Gray-mapped square QAM with unit average constellation energy.
//
// Labeling convention (fixed): a symbol label is the M transmitted bits in
// order; the first M/2 bits select the in-phase level, the last M/2 the
// quadrature level, each through a per-axis Gray code with 0... mapping to
// the most positive level. 4-QAM: bit 0 -> real sign, bit 1 -> imaginary
// sign, 0 -> positive. 16-QAM per-axis levels {+3,+1,-1,-3}/sqrt(10) for
// bit pairs {00,01,11,10}.
class ModulationScheme {
public:
    static ModulationScheme qam4();
    static ModulationScheme qam16();
    static ModulationScheme from_order_bits(int order_bits);

    int order_bits() const noexcept { return order_bits_; }   // M, bits per symbol
    int point_count() const noexcept { return 1 << order_bits_; }

    // Constellation point for a label whose bit i (transmit order) is
    // (label >> (M-1-i)) & 1.
    std::complex<double> point(unsigned label) const { return points_[label]; }
    const std::vector<std::complex<double>>& constellation() const noexcept {
        return points_;
    }

    const char* name() const noexcept { return order_bits_ == 2 ? "4-QAM" : "16-QAM"; }

private:
    explicit ModulationScheme(int order_bits);
    int order_bits_;
    std::vector<std::complex<double>> points_;
};

enum class DemodMode { Exact, MaxLog };

SymbolSequence modulate(const BitSequence& bits, const ModulationScheme& scheme);

// Per-bit LLR = log P(b=0|y) / P(b=1|y); positive means bit 0 more likely.
// Exact mode enumerates the constellation, max-log keeps the nearest point
// per hypothesis.
std::vector<double> soft_demodulate(const SymbolSequence& symbols, double sigma2,
                                    const ModulationScheme& scheme, DemodMode mode);

// Nearest constellation point in Euclidean distance, ties broken toward the
// lexicographically smallest label.
BitSequence hard_demodulate(const SymbolSequence& symbols, const ModulationScheme& scheme);

}  // namespace semlink

#endif
