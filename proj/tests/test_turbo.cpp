#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "semlink/channel.hpp"
#include "semlink/modulation.hpp"
#include "semlink/turbo.hpp"
#include "test_util.hpp"

using namespace semlink;
using semlink_test::random_bits;

namespace {

std::vector<double> noiseless_llrs(const BitSequence& bits, double magnitude = 50.0) {
    std::vector<double> llrs(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        llrs[i] = bits[i] ? -magnitude : magnitude;
    return llrs;
}

double turbo_ber_at(double snr_db, std::size_t message_bits, std::uint64_t seed) {
    const std::size_t l = 1024;
    const auto spec = TurboCodeSpec::standard(l);
    const auto qam4 = ModulationScheme::qam4();
    const double sigma2 = sigma2_from_snr(snr_db, 1.0);

    std::size_t errors = 0, sent = 0;
    std::size_t block = 0;
    while (sent < message_bits) {
        const auto message = random_bits(l, rng_word(seed, block));
        const auto coded = turbo_encode(message, spec);
        const auto tx = modulate(coded, qam4);
        const auto rx = awgn(tx, NoiseParams{snr_db, sigma2, rng_word(seed, block + 1'000'000)});
        const auto llrs = soft_demodulate(rx, sigma2, qam4, DemodMode::Exact);
        const auto decoded = turbo_decode(llrs, spec);
        for (std::size_t i = 0; i < l; ++i)
            errors += decoded.message.bits[i] != message.bits[i];
        sent += l;
        ++block;
    }
    return static_cast<double>(errors) / static_cast<double>(sent);
}

}  // namespace

TEST_CASE("interleaver is a bijection and standard specs are deterministic") {
    for (std::size_t l : {40u, 64u, 768u, 1024u, 1000u, 648u}) {
        const auto spec = TurboCodeSpec::standard(l);
        REQUIRE(spec.interleaver.size() == l);
        auto sorted = spec.interleaver;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < l; ++i) CHECK(sorted[i] == i);
        const auto again = TurboCodeSpec::standard(l);
        CHECK(again.interleaver == spec.interleaver);
    }
    CHECK_THROWS_AS(qpp_interleaver(16, 2, 4), Error);  // even f1 cannot be a bijection
}

TEST_CASE("all-zero message encodes to the all-zero codeword") {
    const auto spec = TurboCodeSpec::standard(64);
    BitSequence zero;
    zero.bits.assign(64, 0);
    const auto coded = turbo_encode(zero, spec);
    CHECK(coded.size() == 3 * 64 + 12);
    CHECK(std::count(coded.bits.begin(), coded.bits.end(), 1) == 0);
}

TEST_CASE("codeword length is 3L plus both tails") {
    const auto spec = TurboCodeSpec::standard(1024);
    const auto coded = turbo_encode(random_bits(1024, 5), spec);
    CHECK(coded.size() == 3 * 1024 + 4 * 3);
}

TEST_CASE("encoding is linear") {
    const auto spec = TurboCodeSpec::standard(128);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_bits(128, 100 + trial);
        const auto b = random_bits(128, 200 + trial);
        BitSequence axb;
        axb.bits.resize(128);
        for (std::size_t i = 0; i < 128; ++i) axb.bits[i] = a.bits[i] ^ b.bits[i];
        const auto ea = turbo_encode(a, spec);
        const auto eb = turbo_encode(b, spec);
        const auto eab = turbo_encode(axb, spec);
        for (std::size_t i = 0; i < eab.size(); ++i)
            CHECK(eab.bits[i] == (ea.bits[i] ^ eb.bits[i]));
    }
}

TEST_CASE("length mismatches are rejected") {
    const auto spec = TurboCodeSpec::standard(64);
    CHECK_THROWS_AS(turbo_encode(random_bits(63, 1), spec), Error);
    CHECK_THROWS_AS(turbo_decode(std::vector<double>(100, 1.0), spec), Error);
}

TEST_CASE("noiseless roundtrip decodes exactly in one iteration") {
    const auto spec = TurboCodeSpec::standard(256);
    for (int trial = 0; trial < 100; ++trial) {
        const auto message = random_bits(256, 900 + trial);
        const auto coded = turbo_encode(message, spec);
        const auto result = turbo_decode(noiseless_llrs(coded), spec);
        CHECK(result.message.bits == message.bits);
        CHECK(result.iterations_used == 1);
    }
}

TEST_CASE("zero block errors at 4 dB over 100 blocks") {
    // Es/N0 4 dB on 4-QAM at rate 1/3 is Eb/N0 5.8 dB, far above the
    // waterfall; calibrated against the uncoded oracle before freezing.
    const std::size_t l = 1024;
    const auto spec = TurboCodeSpec::standard(l);
    const auto qam4 = ModulationScheme::qam4();
    const double sigma2 = sigma2_from_snr(4.0, 1.0);

    std::size_t block_errors = 0;
    for (int block = 0; block < 100; ++block) {
        const auto message = random_bits(l, 7000 + block);
        const auto coded = turbo_encode(message, spec);
        const auto rx =
            awgn(modulate(coded, qam4), NoiseParams{4.0, sigma2, 80000ull + block});
        const auto llrs = soft_demodulate(rx, sigma2, qam4, DemodMode::Exact);
        const auto decoded = turbo_decode(llrs, spec);
        if (decoded.message.bits != message.bits) ++block_errors;
    }
    CHECK(block_errors == 0);
}

TEST_CASE("BER is non-increasing from 0 to 3 dB" * doctest::timeout(600)) {
    const std::size_t bits_per_point = 1'000'000;
    double previous = 1.0;
    for (double snr : {0.0, 1.0, 2.0, 3.0}) {
        const double ber = turbo_ber_at(snr, bits_per_point, 0xBE5Full);
        CHECK(ber <= previous + 1e-12);
        previous = ber;
    }
}
