#ifndef SEMLINK_CHANNEL_HPP
#define SEMLINK_CHANNEL_HPP

#include <cstdint>

#include "semlink/tensor.hpp"

namespace semlink {

// AWGN parameters. sigma2 is the total complex noise variance (sigma2/2 per
// real dimension); sigma2 = 0 is the ideal-channel sentinel.
struct NoiseParams {
    double snr_db = 0.0;
    double sigma2 = 1.0;
    std::uint64_t rng_seed = 0;

    static NoiseParams from_snr(double snr_db, std::uint64_t rng_seed,
                                double signal_power = 1.0);
    static NoiseParams ideal() { return NoiseParams{0.0, 0.0, 0}; }
};

// sigma2 = signal_power / 10^(snr_db/10). SNR is per-symbol (Es/N0) with all
// encoders emitting unit average power, so signal_power is 1 throughout.
double sigma2_from_snr(double snr_db, double signal_power);

// Per-bit SNR for reporting: Eb/N0 = Es/N0 - 10 log10(bits_per_symbol * code_rate).
double ebn0_db_from_esn0_db(double esn0_db, double bits_per_symbol, double code_rate);

// y_i = x_i + n_i with n_i i.i.d. circularly symmetric complex Gaussian of
// total variance sigma2, realized from (rng_seed, i) only — deterministic,
// independent of the input values.
SymbolSequence awgn(const SymbolSequence& symbols, const NoiseParams& params);

}  // namespace semlink

#endif
