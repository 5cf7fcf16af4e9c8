#ifndef SEMLINK_TEST_UTIL_HPP
#define SEMLINK_TEST_UTIL_HPP

#include <unistd.h>

#include <filesystem>
#include <string>

#include "semlink/rng.hpp"
#include "semlink/tensor.hpp"

namespace semlink_test {

// Unique scratch directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("semlink_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string str() const { return path_.string(); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline semlink::VideoTensor random_tensor(std::uint32_t frames, std::uint32_t height,
                                          std::uint32_t width, std::uint32_t channels,
                                          std::uint64_t seed) {
    const std::size_t n =
        static_cast<std::size_t>(frames) * height * width * channels;
    std::vector<float> data(n);
    for (std::size_t i = 0; i < n; ++i)
        data[i] = static_cast<float>(semlink::rng_unit(seed, i));
    return semlink::VideoTensor(frames, height, width, channels, std::move(data));
}

inline semlink::BitSequence random_bits(std::size_t count, std::uint64_t seed) {
    semlink::BitSequence bits;
    bits.bits.resize(count);
    for (std::size_t i = 0; i < count; ++i)
        bits.bits[i] = static_cast<std::uint8_t>(semlink::rng_word(seed, i) & 1);
    return bits;
}

}  // namespace semlink_test

#endif
