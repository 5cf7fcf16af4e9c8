#include "semlink/tensor_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>

namespace semlink {
namespace {

// Keeps F*H*W*C float payloads below 8 GiB.
constexpr std::uint64_t kMaxElements = 1ull << 31;

[[noreturn]] void format_error(const std::string& path, std::size_t byte_offset,
                               const std::string& what) {
    raise(ErrorKind::Format,
          path + ": " + what + " (byte offset " + std::to_string(byte_offset) + ")");
}

std::uint32_t load_u32le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void store_u32le(unsigned char* p, std::uint32_t v) {
    p[0] = static_cast<unsigned char>(v & 0xFF);
    p[1] = static_cast<unsigned char>((v >> 8) & 0xFF);
    p[2] = static_cast<unsigned char>((v >> 16) & 0xFF);
    p[3] = static_cast<unsigned char>((v >> 24) & 0xFF);
}

std::vector<unsigned char> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::Io, "cannot open " + path);
    in.seekg(0, std::ios::end);
    const auto size = in.tellg();
    in.seekg(0, std::ios::beg);
    std::vector<unsigned char> buf(static_cast<std::size_t>(size));
    if (size > 0) in.read(reinterpret_cast<char*>(buf.data()), size);
    if (!in) raise(ErrorKind::Io, "read failure on " + path);
    return buf;
}

void write_file(const std::string& path, const std::vector<unsigned char>& buf) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorKind::Io, "cannot create " + path);
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size()));
    if (!out) raise(ErrorKind::Io, "write failure on " + path);
}

}  // namespace

GvtData read_gvt(const std::string& path) {
    const auto buf = read_file(path);
    if (buf.size() < 4 || std::memcmp(buf.data(), "GVT1", 4) != 0)
        format_error(path, 0, "bad magic, expected GVT1");
    if (buf.size() < 20) format_error(path, buf.size(), "truncated header");

    GvtData out;
    std::uint64_t total = 1;
    for (int i = 0; i < 4; ++i) {
        out.dims[i] = load_u32le(buf.data() + 4 + 4 * i);
        if (out.dims[i] == 0)
            format_error(path, 4 + 4 * static_cast<std::size_t>(i), "zero dimension");
        total *= out.dims[i];
        if (total > kMaxElements)
            format_error(path, 4 + 4 * static_cast<std::size_t>(i), "dimension overflow");
    }
    const std::size_t payload = static_cast<std::size_t>(total) * 4;
    if (buf.size() < 20 + payload)
        format_error(path, buf.size(), "truncated payload, expected " +
                                           std::to_string(20 + payload) + " bytes");

    out.values.resize(static_cast<std::size_t>(total));
    static_assert(sizeof(float) == 4 && std::numeric_limits<float>::is_iec559);
    std::memcpy(out.values.data(), buf.data() + 20, payload);
    return out;
}

void write_gvt(const std::string& path, const GvtData& data) {
    std::uint64_t total = 1;
    for (int i = 0; i < 4; ++i) {
        if (data.dims[i] == 0) raise(ErrorKind::Shape, "zero dimension in GVT data");
        total *= data.dims[i];
    }
    if (total > kMaxElements) raise(ErrorKind::Shape, "dimension overflow in GVT data");
    if (data.values.size() != total)
        raise(ErrorKind::Shape, "GVT value count does not match dimensions");

    std::vector<unsigned char> buf(20 + data.values.size() * 4);
    std::memcpy(buf.data(), "GVT1", 4);
    for (int i = 0; i < 4; ++i) store_u32le(buf.data() + 4 + 4 * i, data.dims[i]);
    std::memcpy(buf.data() + 20, data.values.data(), data.values.size() * 4);
    write_file(path, buf);
}

VideoTensor read_tensor(const std::string& path) {
    GvtData raw = read_gvt(path);
    const auto [f, h, w, c] = raw.dims;
    if (c != 1 && c != 3)
        raise(ErrorKind::Format, path + ": channel count " + std::to_string(c) +
                                     " is not a video tensor (expected 1 or 3)");
    for (std::size_t i = 0; i < raw.values.size(); ++i) {
        const float v = raw.values[i];
        if (!(v >= 0.0f && v <= 1.0f))
            format_error(path, 20 + 4 * i, "value outside [0,1]");
    }
    return VideoTensor(f, h, w, c, std::move(raw.values));
}

void write_tensor(const VideoTensor& video, const std::string& path) {
    GvtData raw;
    raw.dims = {video.frames(), video.height(), video.width(), video.channels()};
    raw.values = video.data();
    write_gvt(path, raw);
}

namespace {

// Parses one whitespace-delimited ASCII token of a PNM header.
std::size_t next_token(const std::vector<unsigned char>& buf, std::size_t pos,
                       const std::string& path, std::string& token) {
    while (pos < buf.size() &&
           (buf[pos] == ' ' || buf[pos] == '\t' || buf[pos] == '\n' || buf[pos] == '\r')) {
        ++pos;
    }
    if (pos < buf.size() && buf[pos] == '#') {  // comment to end of line
        while (pos < buf.size() && buf[pos] != '\n') ++pos;
        return next_token(buf, pos, path, token);
    }
    const std::size_t start = pos;
    while (pos < buf.size() && buf[pos] > ' ') ++pos;
    if (start == pos) format_error(path, pos, "unexpected end of header");
    token.assign(buf.begin() + start, buf.begin() + pos);
    return pos;
}

}  // namespace

VideoTensor read_image(const std::string& path) {
    const auto buf = read_file(path);
    if (buf.size() < 2) format_error(path, 0, "not a PNM file");
    std::uint32_t channels = 0;
    if (buf[0] == 'P' && buf[1] == '6') channels = 3;
    else if (buf[0] == 'P' && buf[1] == '5') channels = 1;
    else format_error(path, 0, "bad magic, expected P5 or P6");

    std::string token;
    std::size_t pos = 2;
    pos = next_token(buf, pos, path, token);
    const long w = std::strtol(token.c_str(), nullptr, 10);
    pos = next_token(buf, pos, path, token);
    const long h = std::strtol(token.c_str(), nullptr, 10);
    pos = next_token(buf, pos, path, token);
    const long maxval = std::strtol(token.c_str(), nullptr, 10);
    if (w < 1 || h < 1) format_error(path, pos, "bad dimensions");
    if (maxval != 255) format_error(path, pos, "only maxval 255 is supported");
    ++pos;  // single whitespace byte after maxval

    const std::size_t n = static_cast<std::size_t>(w) * h * channels;
    if (buf.size() < pos + n) format_error(path, buf.size(), "truncated pixel data");
    std::vector<float> data(n);
    for (std::size_t i = 0; i < n; ++i)
        data[i] = static_cast<float>(buf[pos + i]) / 255.0f;
    return VideoTensor(1, static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(w),
                       channels, std::move(data));
}

void write_image(const VideoTensor& frame, const std::string& path) {
    if (frame.frames() != 1)
        raise(ErrorKind::Shape, "image I/O takes a single frame");
    char header[64];
    const int len = std::snprintf(header, sizeof(header), "P%c\n%u %u\n255\n",
                                  frame.channels() == 3 ? '6' : '5', frame.width(),
                                  frame.height());
    std::vector<unsigned char> buf(header, header + len);
    buf.reserve(buf.size() + frame.total_elements());
    for (const float v : frame.data()) {
        const float scaled = std::round(v * 255.0f);
        buf.push_back(static_cast<unsigned char>(scaled < 0.0f   ? 0
                                                 : scaled > 255.0f ? 255
                                                                   : scaled));
    }
    write_file(path, buf);
}

}  // namespace semlink
