#ifndef SEMLINK_JSCC_HPP
#define SEMLINK_JSCC_HPP

#include <cstdint>
#include <string>

#include "semlink/tensor.hpp"

namespace semlink {

// Analog joint source-channel mapping for single frames. The linear baseline
// is a fixed orthonormal 2-D cosine basis per channel: coefficients are
// ordered by (u+v, u, channel), the lowest 2*symbol_budget are kept,
// consecutive reals are paired into complex symbols and the output is power
// normalized. decode() of a noiseless roundtrip equals the clamped
// orthogonal projection onto the retained basis.
//
// The external kind exchanges data through files in exchange_dir so a learned
// model can be slotted in offline: encode writes source.gvt and ingests
// symbols.gvt (dims 1 x N_s x 2 x 1, re/im pairs; power-normalized on load
// with the gain folded into power_scale); decode writes received.gvt (symbols
// divided by power_scale) and reads reconstruction.gvt.
enum class MapperKind { LinearBaseline, External };

struct AnalogMapperSpec {
    std::uint32_t height = 0;
    std::uint32_t width = 0;
    std::uint32_t channels = 1;
    std::size_t symbol_budget = 0;  // complex symbols per frame
    MapperKind kind = MapperKind::LinearBaseline;
    std::string exchange_dir;
};

// output = input * sqrt(count / sum |x_i|^2); the applied gain multiplies
// power_scale. Empty or all-zero input passes through with zero_power set.
SymbolSequence power_normalize(const SymbolSequence& symbols);

SymbolSequence jscc_encode(const VideoTensor& image, const AnalogMapperSpec& spec);
VideoTensor jscc_decode(const SymbolSequence& symbols, const AnalogMapperSpec& spec);

}  // namespace semlink

#endif
