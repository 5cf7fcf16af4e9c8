#include "semlink/fixtures.hpp"

#include <cmath>
#include <filesystem>

#include "semlink/tensor_io.hpp"

namespace semlink {
namespace {

float clamp01(double v) {
    return static_cast<float>(v < 0.0 ? 0.0 : v > 1.0 ? 1.0 : v);
}

}  // namespace

VideoTensor demo_sketch(std::uint32_t height, std::uint32_t width) {
    std::vector<float> data(static_cast<std::size_t>(height) * width, 0.0f);
    const double cx = width / 2.0, cy = height / 2.0;
    const double r = 0.35 * std::min(height, width);
    for (std::uint32_t y = 0; y < height; ++y) {
        for (std::uint32_t x = 0; x < width; ++x) {
            const double d = std::hypot(x - cx, y - cy);
            const bool circle = std::abs(d - r) < 1.5;
            const bool diagonal = std::abs(static_cast<double>(x) - y) < 1.5;
            const bool box = (x == width / 8 || x == 7 * width / 8) &&
                             y > height / 8 && y < 7 * height / 8;
            if (circle || diagonal || box) data[y * static_cast<std::size_t>(width) + x] = 1.0f;
        }
    }
    return VideoTensor(1, height, width, 1, std::move(data));
}

VideoTensor demo_frame(std::uint32_t height, std::uint32_t width) {
    std::vector<float> data(static_cast<std::size_t>(height) * width * 3);
    for (std::uint32_t y = 0; y < height; ++y) {
        for (std::uint32_t x = 0; x < width; ++x) {
            const double u = static_cast<double>(x) / (width - 1);
            const double v = static_cast<double>(y) / (height - 1);
            const std::size_t i = (y * static_cast<std::size_t>(width) + x) * 3;
            data[i] = clamp01(u);
            data[i + 1] = clamp01(v);
            data[i + 2] = clamp01(0.5 + 0.5 * std::sin(6.28318 * (u + v)));
        }
    }
    return VideoTensor(1, height, width, 3, std::move(data));
}

VideoTensor demo_video(std::uint32_t frames, std::uint32_t height, std::uint32_t width) {
    std::vector<float> data(static_cast<std::size_t>(frames) * height * width * 3);
    std::size_t i = 0;
    for (std::uint32_t f = 0; f < frames; ++f) {
        const double t = frames > 1 ? static_cast<double>(f) / (frames - 1) : 0.0;
        const double sx = 0.15 + 0.6 * t;  // highlight drifts across the frame
        for (std::uint32_t y = 0; y < height; ++y) {
            for (std::uint32_t x = 0; x < width; ++x) {
                const double u = static_cast<double>(x) / (width - 1);
                const double v = static_cast<double>(y) / (height - 1);
                const bool bright =
                    std::abs(u - sx) < 0.1 && std::abs(v - 0.5) < 0.1;
                data[i++] = clamp01(bright ? 0.95 : 0.25 + 0.5 * u);
                data[i++] = clamp01(bright ? 0.9 : 0.25 + 0.5 * v);
                data[i++] = clamp01(bright ? 0.2 : 0.4 + 0.3 * t);
            }
        }
    }
    return VideoTensor(frames, height, width, 3, std::move(data));
}

void write_demo_fixtures(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const VideoTensor sketch = demo_sketch();
    const VideoTensor frame = demo_frame();
    const VideoTensor video = demo_video();
    write_image(sketch, dir + "/sketch.pgm");
    write_tensor(sketch, dir + "/sketch.gvt");
    write_image(frame, dir + "/frame.ppm");
    write_tensor(frame, dir + "/frame.gvt");
    write_tensor(video, dir + "/video.gvt");
}

}  // namespace semlink
