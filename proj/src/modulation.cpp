#include "semlink/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace semlink {
namespace {

// Per-axis Gray levels, most positive first. Index is the axis bit pattern.
double axis_level(unsigned axis_bits, int bits_per_axis) {
    if (bits_per_axis == 1) {
        return axis_bits == 0 ? 1.0 : -1.0;
    }
    // 2 bits: 00 -> +3, 01 -> +1, 11 -> -1, 10 -> -3 (Gray along the axis).
    static constexpr double levels[4] = {3.0, 1.0, -3.0, -1.0};
    return levels[axis_bits & 3];
}

}  // namespace

ModulationScheme::ModulationScheme(int order_bits) : order_bits_(order_bits) {
    const int half = order_bits_ / 2;
    // Mean per-axis energy of the level set; total constellation energy is
    // twice that, so the scale makes it exactly 1.
    double axis_energy = 0.0;
    for (unsigned b = 0; b < (1u << half); ++b) {
        const double v = axis_level(b, half);
        axis_energy += v * v;
    }
    axis_energy /= static_cast<double>(1u << half);
    const double scale = 1.0 / std::sqrt(2.0 * axis_energy);

    points_.resize(1u << order_bits_);
    for (unsigned label = 0; label < points_.size(); ++label) {
        const unsigned i_bits = label >> half;
        const unsigned q_bits = label & ((1u << half) - 1);
        points_[label] = scale * std::complex<double>(axis_level(i_bits, half),
                                                      axis_level(q_bits, half));
    }
}

ModulationScheme ModulationScheme::qam4() { return ModulationScheme(2); }
ModulationScheme ModulationScheme::qam16() { return ModulationScheme(4); }

ModulationScheme ModulationScheme::from_order_bits(int order_bits) {
    if (order_bits != 2 && order_bits != 4)
        raise(ErrorKind::Config, "modulation order must be 2 (4-QAM) or 4 (16-QAM)");
    return ModulationScheme(order_bits);
}

SymbolSequence modulate(const BitSequence& bits, const ModulationScheme& scheme) {
    const int m = scheme.order_bits();
    if (bits.size() % m != 0)
        raise(ErrorKind::Framing, "bit count " + std::to_string(bits.size()) +
                                      " not divisible by modulation order " +
                                      std::to_string(m));
    SymbolSequence out;
    out.symbols.resize(bits.size() / m);
    for (std::size_t s = 0; s < out.symbols.size(); ++s) {
        unsigned label = 0;
        for (int b = 0; b < m; ++b)
            label = (label << 1) | (bits[s * m + b] & 1);
        out.symbols[s] = scheme.point(label);
    }
    return out;
}

std::vector<double> soft_demodulate(const SymbolSequence& symbols, double sigma2,
                                    const ModulationScheme& scheme, DemodMode mode) {
    if (!(sigma2 > 0.0))
        raise(ErrorKind::Domain, "soft demodulation requires positive noise variance");
    const int m = scheme.order_bits();
    const auto& points = scheme.constellation();
    std::vector<double> llrs(symbols.size() * m);

    std::vector<double> neg_dist(points.size());
    for (std::size_t s = 0; s < symbols.size(); ++s) {
        const auto y = symbols.symbols[s];
        for (std::size_t c = 0; c < points.size(); ++c)
            neg_dist[c] = -std::norm(y - points[c]) / sigma2;

        for (int b = 0; b < m; ++b) {
            const unsigned bit_mask = 1u << (m - 1 - b);
            if (mode == DemodMode::MaxLog) {
                double best0 = -std::numeric_limits<double>::infinity();
                double best1 = best0;
                for (std::size_t c = 0; c < points.size(); ++c) {
                    if (c & bit_mask) best1 = std::max(best1, neg_dist[c]);
                    else best0 = std::max(best0, neg_dist[c]);
                }
                llrs[s * m + b] = best0 - best1;
            } else {
                // log-sum-exp per hypothesis, anchored at the max for stability
                double max0 = -std::numeric_limits<double>::infinity();
                double max1 = max0;
                for (std::size_t c = 0; c < points.size(); ++c) {
                    if (c & bit_mask) max1 = std::max(max1, neg_dist[c]);
                    else max0 = std::max(max0, neg_dist[c]);
                }
                double sum0 = 0.0, sum1 = 0.0;
                for (std::size_t c = 0; c < points.size(); ++c) {
                    if (c & bit_mask) sum1 += std::exp(neg_dist[c] - max1);
                    else sum0 += std::exp(neg_dist[c] - max0);
                }
                llrs[s * m + b] = (max0 + std::log(sum0)) - (max1 + std::log(sum1));
            }
        }
    }
    return llrs;
}

BitSequence hard_demodulate(const SymbolSequence& symbols, const ModulationScheme& scheme) {
    const int m = scheme.order_bits();
    const auto& points = scheme.constellation();
    BitSequence out;
    out.bits.resize(symbols.size() * m);
    for (std::size_t s = 0; s < symbols.size(); ++s) {
        const auto y = symbols.symbols[s];
        unsigned best_label = 0;
        double best_dist = std::norm(y - points[0]);
        for (unsigned c = 1; c < points.size(); ++c) {
            const double d = std::norm(y - points[c]);
            if (d < best_dist) {  // strict: ties keep the smaller label
                best_dist = d;
                best_label = c;
            }
        }
        for (int b = 0; b < m; ++b)
            out.bits[s * m + b] =
                static_cast<std::uint8_t>((best_label >> (m - 1 - b)) & 1);
    }
    return out;
}

}  // namespace semlink
