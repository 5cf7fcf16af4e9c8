#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "semlink/channel.hpp"
#include "semlink/jscc.hpp"
#include "semlink/metrics.hpp"
#include "semlink/tensor_io.hpp"
#include "test_util.hpp"

using namespace semlink;
using semlink_test::random_tensor;
using semlink_test::TempDir;

namespace {

AnalogMapperSpec linear_spec(std::uint32_t h, std::uint32_t w, std::uint32_t c,
                             std::size_t budget) {
    AnalogMapperSpec spec;
    spec.height = h;
    spec.width = w;
    spec.channels = c;
    spec.symbol_budget = budget;
    return spec;
}

// Projection oracle: explicit retained-basis inner products. The basis
// vectors are outer products of 1-D DCT rows; ordering matches the mapper
// contract (u+v, then u, then channel).
std::vector<double> dct_row(std::size_t n, std::size_t k) {
    std::vector<double> row(n);
    const double scale = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (std::size_t i = 0; i < n; ++i)
        row[i] = scale * std::cos(M_PI * (2.0 * i + 1.0) * k / (2.0 * n));
    return row;
}

VideoTensor projection_oracle(const VideoTensor& image, std::size_t kept_coeffs) {
    const std::size_t h = image.height(), w = image.width(), c = image.channels();
    struct Key {
        std::size_t u, v, ch;
    };
    std::vector<Key> keys;
    for (std::size_t u = 0; u < h; ++u)
        for (std::size_t v = 0; v < w; ++v)
            for (std::size_t ch = 0; ch < c; ++ch) keys.push_back({u, v, ch});
    std::stable_sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
        return std::tuple(a.u + a.v, a.u, a.ch) < std::tuple(b.u + b.v, b.u, b.ch);
    });

    std::vector<double> recon(h * w * c, 0.0);
    for (std::size_t t = 0; t < kept_coeffs; ++t) {
        const auto [u, v, ch] = keys[t];
        const auto ru = dct_row(h, u);
        const auto rv = dct_row(w, v);
        double coeff = 0.0;
        for (std::size_t y = 0; y < h; ++y)
            for (std::size_t x = 0; x < w; ++x)
                coeff += ru[y] * rv[x] *
                         static_cast<double>(image.data()[(y * w + x) * c + ch]);
        for (std::size_t y = 0; y < h; ++y)
            for (std::size_t x = 0; x < w; ++x)
                recon[(y * w + x) * c + ch] += coeff * ru[y] * rv[x];
    }
    std::vector<float> clamped(recon.size());
    for (std::size_t i = 0; i < recon.size(); ++i)
        clamped[i] = static_cast<float>(std::clamp(recon[i], 0.0, 1.0));
    return VideoTensor(1, image.height(), image.width(), image.channels(),
                       std::move(clamped));
}

}  // namespace

TEST_CASE("power_normalize") {
    SUBCASE("scales to unit power") {
        SymbolSequence s;
        s.symbols = {{3.0, 0.0}};
        const auto out = power_normalize(s);
        CHECK(out.symbols[0].real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(out.power_scale == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("unit-power input is unchanged") {
        SymbolSequence s;
        s.symbols = {{1.0, 0.0}, {0.0, 1.0}};
        const auto out = power_normalize(s);
        CHECK(out.symbols[0].real() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(out.power_scale == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("all-zero input is flagged, not scaled") {
        SymbolSequence s;
        s.symbols = {{0.0, 0.0}, {0.0, 0.0}};
        const auto out = power_normalize(s);
        CHECK(out.zero_power);
        CHECK(out.symbols[0] == std::complex<double>(0.0, 0.0));
    }
}

TEST_CASE("encoder emits exactly the budget with unit power") {
    const auto spec = linear_spec(32, 32, 1, 150);
    for (int trial = 0; trial < 10; ++trial) {
        const auto image = random_tensor(1, 32, 32, 1, 100 + trial);
        const auto symbols = jscc_encode(image, spec);
        CHECK(symbols.size() == 150);
        CHECK(mean_symbol_power(symbols) == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("sketch budget from a 32x32x2 encoder output is 1024 symbols") {
    const auto spec = linear_spec(256, 256, 1, 32 * 32 * 2 / 2);
    CHECK(spec.symbol_budget == 1024);
    const auto image = random_tensor(1, 256, 256, 1, 7);
    CHECK(jscc_encode(image, spec).size() == 1024);
}

TEST_CASE("all-zero image is flagged and decodes to zeros") {
    const auto spec = linear_spec(16, 16, 1, 32);
    const auto zero = VideoTensor::zeros(1, 16, 16, 1);
    const auto symbols = jscc_encode(zero, spec);
    CHECK(symbols.zero_power);
    for (const auto& s : symbols.symbols) CHECK(std::norm(s) == 0.0);
    const auto recon = jscc_decode(symbols, spec);
    for (float v : recon.data()) CHECK(v == 0.0f);
}

TEST_CASE("errors on mismatched shape or count") {
    const auto spec = linear_spec(16, 16, 1, 32);
    CHECK_THROWS_AS(jscc_encode(random_tensor(1, 8, 16, 1, 1), spec), Error);
    SymbolSequence s;
    s.symbols.assign(31, {1.0, 0.0});
    CHECK_THROWS_AS(jscc_decode(s, spec), Error);
    CHECK_THROWS_AS(jscc_encode(random_tensor(1, 4, 4, 1, 1), linear_spec(4, 4, 1, 9)),
                    Error);
}

TEST_CASE("noiseless roundtrip equals the projection oracle") {
    const auto spec = linear_spec(64, 64, 1, 512);
    const auto image = random_tensor(1, 64, 64, 1, 42);
    const auto recon = jscc_decode(jscc_encode(image, spec), spec);
    const auto oracle = projection_oracle(image, 2 * spec.symbol_budget);
    for (std::size_t i = 0; i < recon.total_elements(); ++i)
        CHECK(std::abs(recon.data()[i] - oracle.data()[i]) < 1e-5);
}

TEST_CASE("full-dimension budget reconstructs exactly") {
    const auto spec = linear_spec(16, 16, 1, 16 * 16 / 2);
    const auto image = random_tensor(1, 16, 16, 1, 9);
    const auto recon = jscc_decode(jscc_encode(image, spec), spec);
    for (std::size_t i = 0; i < recon.total_elements(); ++i)
        CHECK(std::abs(recon.data()[i] - image.data()[i]) < 1e-5);
}

TEST_CASE("deterministic encoding") {
    const auto spec = linear_spec(32, 32, 1, 128);
    const auto image = random_tensor(1, 32, 32, 1, 15);
    const auto a = jscc_encode(image, spec);
    const auto b = jscc_encode(image, spec);
    CHECK(a.symbols == b.symbols);
}

TEST_CASE("reconstruction MSE is non-decreasing in noise variance") {
    const auto spec = linear_spec(32, 32, 1, 96);
    const auto image = random_tensor(1, 32, 32, 1, 23);
    const auto tx = jscc_encode(image, spec);

    double previous = -1.0;
    int grid_index = 0;
    for (const double sigma2 : {0.0, 0.05, 0.2, 0.5, 1.0}) {
        // average several noise draws per grid point
        double acc = 0.0;
        const int trials = 24;
        for (int t = 0; t < trials; ++t) {
            const auto rx =
                awgn(tx, NoiseParams{0.0, sigma2, 5000ull + 100 * grid_index + t});
            acc += mse(image, jscc_decode(rx, spec));
        }
        acc /= trials;
        CHECK(acc >= previous - 1e-6);
        previous = acc;
        ++grid_index;
    }
}

TEST_CASE("external mapper exchanges payloads through files") {
    TempDir dir("ext");
    AnalogMapperSpec spec = linear_spec(8, 8, 1, 16);
    spec.kind = MapperKind::External;
    spec.exchange_dir = dir.str();

    const auto image = random_tensor(1, 8, 8, 1, 3);

    SUBCASE("missing symbols file is an I/O error") {
        CHECK_THROWS_AS(jscc_encode(image, spec), Error);
    }
    SUBCASE("roundtrip through the exchange directory") {
        // stand-in for the offline model: identity on the first 32 values
        GvtData symbols;
        symbols.dims = {1, 16, 2, 1};
        symbols.values.assign(32, 0.0f);
        for (std::size_t i = 0; i < 32; ++i) symbols.values[i] = image.data()[i];
        write_gvt(dir.file("symbols.gvt"), symbols);

        const auto seq = jscc_encode(image, spec);
        CHECK(seq.size() == 16);
        CHECK(mean_symbol_power(seq) == doctest::Approx(1.0).epsilon(1e-5));
        // the model's source view landed on disk
        const auto source = read_tensor(dir.file("source.gvt"));
        CHECK(source.data() == image.data());

        write_tensor(image, dir.file("reconstruction.gvt"));
        const auto recon = jscc_decode(seq, spec);
        CHECK(recon.data() == image.data());
        // received.gvt holds the de-normalized symbols for the model
        const auto received = read_gvt(dir.file("received.gvt"));
        CHECK(received.dims[1] == 16);
        for (std::size_t i = 0; i < 8; ++i)
            CHECK(received.values[i] ==
                  doctest::Approx(image.data()[i]).epsilon(1e-5));
    }
}
