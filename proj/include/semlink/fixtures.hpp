#ifndef SEMLINK_FIXTURES_HPP
#define SEMLINK_FIXTURES_HPP

#include <string>

#include "semlink/tensor.hpp"

namespace semlink {

// Deterministic synthetic payloads for demos and tests: a line-drawing
// sketch, a smooth RGB frame, and a short clip with a moving highlight.
VideoTensor demo_sketch(std::uint32_t height = 256, std::uint32_t width = 256);
VideoTensor demo_frame(std::uint32_t height = 256, std::uint32_t width = 256);
VideoTensor demo_video(std::uint32_t frames = 8, std::uint32_t height = 256,
                       std::uint32_t width = 256);

// Writes sketch.pgm, sketch.gvt, frame.ppm, frame.gvt and video.gvt into dir.
void write_demo_fixtures(const std::string& dir);

}  // namespace semlink

#endif
