#include "semlink/jscc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "semlink/tensor_io.hpp"

namespace semlink {
namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Orthonormal DCT-II matrix, row k applied against sample index n.
std::vector<double> dct_matrix(std::size_t n) {
    std::vector<double> d(n * n);
    const double a0 = std::sqrt(1.0 / static_cast<double>(n));
    const double ak = std::sqrt(2.0 / static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        const double scale = k == 0 ? a0 : ak;
        for (std::size_t i = 0; i < n; ++i)
            d[k * n + i] =
                scale * std::cos(kPi * (2.0 * i + 1.0) * k / (2.0 * static_cast<double>(n)));
    }
    return d;
}

// out[k][j] = sum_i d[k][i] * in[i][j] (rows), or the transposed variant.
void apply_rows(const std::vector<double>& d, std::size_t n, const std::vector<double>& in,
                std::size_t cols, std::vector<double>& out, bool transpose_d) {
    out.assign(n * cols, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const double w = transpose_d ? d[i * n + k] : d[k * n + i];
            if (w == 0.0) continue;
            const double* src = in.data() + i * cols;
            double* dst = out.data() + k * cols;
            for (std::size_t j = 0; j < cols; ++j) dst[j] += w * src[j];
        }
    }
}

// 2-D transform of one channel plane (height x width).
std::vector<double> dct2(const std::vector<double>& plane, std::size_t h, std::size_t w,
                         bool inverse) {
    const auto dh = dct_matrix(h);
    const auto dw = dct_matrix(w);
    std::vector<double> tmp, out;
    apply_rows(dh, h, plane, w, tmp, inverse);
    // column transform via transposes: (D_w * tmp^T)^T
    std::vector<double> tmp_t(w * h);
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) tmp_t[x * h + y] = tmp[y * w + x];
    std::vector<double> out_t;
    apply_rows(dw, w, tmp_t, h, out_t, inverse);
    out.resize(h * w);
    for (std::size_t x = 0; x < w; ++x)
        for (std::size_t y = 0; y < h; ++y) out[y * w + x] = out_t[x * h + y];
    return out;
}

// Retained-coefficient order: ascending (u+v, u, channel).
std::vector<std::size_t> coefficient_order(std::size_t h, std::size_t w, std::size_t c) {
    std::vector<std::size_t> order(h * w * c);
    std::iota(order.begin(), order.end(), 0);
    auto key = [h, w, c](std::size_t idx) {
        const std::size_t ch = idx % c;
        const std::size_t uv = idx / c;
        const std::size_t u = uv / w;
        const std::size_t v = uv % w;
        return std::tuple<std::size_t, std::size_t, std::size_t>(u + v, u, ch);
    };
    std::stable_sort(order.begin(), order.end(),
                     [&key](std::size_t a, std::size_t b) { return key(a) < key(b); });
    return order;
}

void check_shape(const VideoTensor& image, const AnalogMapperSpec& spec) {
    if (image.frames() != 1 || image.height() != spec.height ||
        image.width() != spec.width || image.channels() != spec.channels)
        raise(ErrorKind::Config, "image shape does not match mapper spec");
}

void check_budget(const AnalogMapperSpec& spec) {
    if (spec.symbol_budget < 1)
        raise(ErrorKind::Config, "symbol budget must be at least 1");
    const std::size_t dims =
        static_cast<std::size_t>(spec.height) * spec.width * spec.channels;
    if (spec.kind == MapperKind::LinearBaseline && 2 * spec.symbol_budget > dims)
        raise(ErrorKind::Config, "symbol budget exceeds half the source dimension");
}

// All channel planes transformed, flattened back to (y, x, c) indexing.
std::vector<double> forward_coefficients(const VideoTensor& image) {
    const std::size_t h = image.height(), w = image.width(), c = image.channels();
    std::vector<double> coeffs(h * w * c);
    std::vector<double> plane(h * w);
    for (std::size_t ch = 0; ch < c; ++ch) {
        for (std::size_t i = 0; i < h * w; ++i)
            plane[i] = static_cast<double>(image.data()[i * c + ch]);
        auto t = dct2(plane, h, w, false);
        for (std::size_t i = 0; i < h * w; ++i) coeffs[i * c + ch] = t[i];
    }
    return coeffs;
}

VideoTensor inverse_coefficients(const std::vector<double>& coeffs, std::uint32_t h,
                                 std::uint32_t w, std::uint32_t c) {
    std::vector<float> pixels(static_cast<std::size_t>(h) * w * c);
    std::vector<double> plane(static_cast<std::size_t>(h) * w);
    for (std::size_t ch = 0; ch < c; ++ch) {
        for (std::size_t i = 0; i < plane.size(); ++i) plane[i] = coeffs[i * c + ch];
        auto t = dct2(plane, h, w, true);
        for (std::size_t i = 0; i < plane.size(); ++i) {
            const double v = std::clamp(t[i], 0.0, 1.0);
            pixels[i * c + ch] = static_cast<float>(v);
        }
    }
    return VideoTensor(1, h, w, c, std::move(pixels));
}

SymbolSequence external_encode(const VideoTensor& image, const AnalogMapperSpec& spec) {
    write_tensor(image, spec.exchange_dir + "/source.gvt");
    const GvtData raw = read_gvt(spec.exchange_dir + "/symbols.gvt");
    if (raw.dims[0] != 1 || raw.dims[1] != spec.symbol_budget || raw.dims[2] != 2 ||
        raw.dims[3] != 1)
        raise(ErrorKind::Framing, "external symbols.gvt does not hold " +
                                      std::to_string(spec.symbol_budget) +
                                      " re/im pairs");
    SymbolSequence seq;
    seq.symbols.resize(spec.symbol_budget);
    for (std::size_t i = 0; i < spec.symbol_budget; ++i)
        seq.symbols[i] = {static_cast<double>(raw.values[2 * i]),
                          static_cast<double>(raw.values[2 * i + 1])};
    return power_normalize(seq);
}

VideoTensor external_decode(const SymbolSequence& symbols, const AnalogMapperSpec& spec) {
    GvtData raw;
    raw.dims = {1, static_cast<std::uint32_t>(symbols.size()), 2, 1};
    raw.values.resize(symbols.size() * 2);
    const double inv_gain = symbols.zero_power ? 1.0 : 1.0 / symbols.power_scale;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        raw.values[2 * i] = static_cast<float>(symbols.symbols[i].real() * inv_gain);
        raw.values[2 * i + 1] = static_cast<float>(symbols.symbols[i].imag() * inv_gain);
    }
    write_gvt(spec.exchange_dir + "/received.gvt", raw);
    VideoTensor out = read_tensor(spec.exchange_dir + "/reconstruction.gvt");
    if (out.frames() != 1 || out.height() != spec.height || out.width() != spec.width ||
        out.channels() != spec.channels)
        raise(ErrorKind::Framing, "external reconstruction.gvt shape mismatch");
    return out;
}

}  // namespace

SymbolSequence power_normalize(const SymbolSequence& symbols) {
    SymbolSequence out = symbols;
    if (out.symbols.empty()) {
        out.zero_power = true;
        return out;
    }
    double sum = 0.0;
    for (const auto& s : out.symbols) sum += std::norm(s);
    if (sum == 0.0) {
        out.zero_power = true;
        return out;
    }
    const double gain = std::sqrt(static_cast<double>(out.symbols.size()) / sum);
    for (auto& s : out.symbols) s *= gain;
    out.power_scale *= gain;
    out.zero_power = false;
    return out;
}

SymbolSequence jscc_encode(const VideoTensor& image, const AnalogMapperSpec& spec) {
    check_budget(spec);
    check_shape(image, spec);
    if (spec.kind == MapperKind::External) return external_encode(image, spec);

    const auto coeffs = forward_coefficients(image);
    const auto order =
        coefficient_order(spec.height, spec.width, spec.channels);

    SymbolSequence seq;
    seq.symbols.resize(spec.symbol_budget);
    for (std::size_t i = 0; i < spec.symbol_budget; ++i)
        seq.symbols[i] = {coeffs[order[2 * i]], coeffs[order[2 * i + 1]]};
    seq = power_normalize(seq);
    check_unit_power(seq);
    return seq;
}

VideoTensor jscc_decode(const SymbolSequence& symbols, const AnalogMapperSpec& spec) {
    check_budget(spec);
    if (symbols.size() != spec.symbol_budget)
        raise(ErrorKind::Framing, "symbol count " + std::to_string(symbols.size()) +
                                      " does not match budget " +
                                      std::to_string(spec.symbol_budget));
    if (spec.kind == MapperKind::External) return external_decode(symbols, spec);

    const std::size_t dims =
        static_cast<std::size_t>(spec.height) * spec.width * spec.channels;
    std::vector<double> coeffs(dims, 0.0);
    const auto order = coefficient_order(spec.height, spec.width, spec.channels);
    const double inv_gain = symbols.zero_power ? 0.0 : 1.0 / symbols.power_scale;
    for (std::size_t i = 0; i < spec.symbol_budget; ++i) {
        coeffs[order[2 * i]] = symbols.symbols[i].real() * inv_gain;
        coeffs[order[2 * i + 1]] = symbols.symbols[i].imag() * inv_gain;
    }
    return inverse_coefficients(coeffs, spec.height, spec.width, spec.channels);
}

}  // namespace semlink
