#ifndef SEMLINK_TENSOR_IO_HPP
#define SEMLINK_TENSOR_IO_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "semlink/tensor.hpp"

// File formats.
//
// GVT container: magic "GVT1" (4 bytes), then F, H, W, C as unsigned 32-bit
// little-endian, then F*H*W*C IEEE-754 little-endian 32-bit floats,
// row-major, frame-major. The raw layer places no constraint on the values;
// the VideoTensor layer additionally requires C in {1,3} and values in [0,1].
//
// Images: binary PPM (P6, color) and PGM (P5, gray), maxval 255. Pixel bytes
// map to the normalized domain by value/255.

namespace semlink {

struct GvtData {
    std::array<std::uint32_t, 4> dims;  // F, H, W, C
    std::vector<float> values;
};

GvtData read_gvt(const std::string& path);
void write_gvt(const std::string& path, const GvtData& data);

VideoTensor read_tensor(const std::string& path);
void write_tensor(const VideoTensor& video, const std::string& path);

// Single-frame image I/O. PPM for channels=3, PGM for channels=1.
VideoTensor read_image(const std::string& path);
void write_image(const VideoTensor& frame, const std::string& path);

}  // namespace semlink

#endif
