#include "semlink/channel.hpp"

#include <cmath>

#include "semlink/rng.hpp"

namespace semlink {

double sigma2_from_snr(double snr_db, double signal_power) {
    if (!(signal_power > 0.0))
        raise(ErrorKind::Domain, "signal power must be positive");
    return signal_power / std::pow(10.0, snr_db / 10.0);
}

double ebn0_db_from_esn0_db(double esn0_db, double bits_per_symbol, double code_rate) {
    if (!(bits_per_symbol > 0.0) || !(code_rate > 0.0))
        raise(ErrorKind::Domain, "bits per symbol and code rate must be positive");
    return esn0_db - 10.0 * std::log10(bits_per_symbol * code_rate);
}

NoiseParams NoiseParams::from_snr(double snr_db, std::uint64_t rng_seed,
                                  double signal_power) {
    return NoiseParams{snr_db, sigma2_from_snr(snr_db, signal_power), rng_seed};
}

SymbolSequence awgn(const SymbolSequence& symbols, const NoiseParams& params) {
    if (params.sigma2 < 0.0)
        raise(ErrorKind::Domain, "noise variance must be non-negative");
    SymbolSequence out = symbols;
    if (params.sigma2 == 0.0) return out;

    const double per_dim = std::sqrt(params.sigma2 / 2.0);
    for (std::size_t i = 0; i < out.symbols.size(); ++i) {
        const auto [re, im] = rng_normal_pair(params.rng_seed, i);
        out.symbols[i] += std::complex<double>(per_dim * re, per_dim * im);
    }
    return out;
}

}  // namespace semlink
