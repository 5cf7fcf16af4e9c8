#include <doctest.h>

#include "semlink/budget.hpp"
#include "semlink/strategy.hpp"

using namespace semlink;

TEST_CASE("description symbol arithmetic") {
    CHECK(description_symbols(765.04, 2, CodeRate{1, 3}) ==
          doctest::Approx(1147.56).epsilon(1e-12));
    CHECK(description_symbols(0.0, 2, CodeRate{1, 3}) == 0.0);
    CHECK(description_symbols(600.0, 4, CodeRate{1, 2}) ==
          doctest::Approx(300.0).epsilon(1e-12));
    CHECK_THROWS_AS(description_symbols(100.0, 3, CodeRate{1, 3}), Error);
    CHECK_THROWS_AS(description_symbols(100.0, 2, CodeRate{2, 5}), Error);
    CHECK_THROWS_AS(description_symbols(-1.0, 2, CodeRate{1, 3}), Error);
}

TEST_CASE("channel bandwidth ratio") {
    const VideoDims dims;  // 3 x 256 x 256 x 8
    CHECK(cbr(1147.56, dims) == doctest::Approx(0.0007295989990234375).epsilon(1e-9));
    CHECK(cbr(2171.56, dims) == doctest::Approx(0.0013806406656901042).epsilon(1e-9));
    CHECK(cbr(dims.pixel_count(), dims) == doctest::Approx(1.0).epsilon(1e-15));
    VideoDims bad = dims;
    bad.frames = 0;
    CHECK_THROWS_AS(cbr(1.0, bad), Error);
    CHECK_THROWS_AS(cbr(-1.0, dims), Error);
}

TEST_CASE("published budget chain reproduces every intermediate") {
    // 95.63 tokens -> 765.04 bits -> 1147.56 symbols -> 2171.56 with the
    // 1024-symbol sketch -> exact ratio 0.00138
    const double bits = 95.63 * 8.0;
    CHECK(bits == doctest::Approx(765.04).epsilon(1e-9));
    const double text_symbols = description_symbols(bits, 2, CodeRate{1, 3});
    CHECK(text_symbols == doctest::Approx(1147.56).epsilon(1e-9));
    const double total = text_symbols + 1024.0;
    CHECK(total == doctest::Approx(2171.56).epsilon(1e-9));
    CHECK(cbr(total, VideoDims{}) ==
          doctest::Approx(0.0013806406656901042).epsilon(1e-6));
}

TEST_CASE("scheme budgets match the catalog figures") {
    const VideoDims dims;

    SUBCASE("description only") {
        const auto b = scheme_budget(catalog_scheme(SchemeKind::DescOnly), dims);
        CHECK(b.text_symbols == doctest::Approx(1147.56).epsilon(1e-9));
        CHECK(b.visual_symbols == 0.0);
        CHECK(b.cbr == doctest::Approx(0.0007295989990234375).epsilon(1e-9));
    }
    SUBCASE("single sketch plus description") {
        const auto b = scheme_budget(catalog_scheme(SchemeKind::SketchDesc), dims);
        CHECK(b.total_symbols == doctest::Approx(2171.56).epsilon(1e-9));
        CHECK(b.cbr == doctest::Approx(0.0013806406656901042).epsilon(1e-9));
    }
    SUBCASE("first frame plus description reproduces the 0.0031 figure") {
        const auto b = scheme_budget(catalog_scheme(SchemeKind::FirstFrameDesc), dims);
        CHECK(b.total_symbols == doctest::Approx(4875.56).epsilon(1e-9));
        CHECK(b.cbr == doctest::Approx(0.0031).epsilon(0.0001 / 0.0031));
        CHECK(b.cbr == doctest::Approx(0.003099797566731771).epsilon(1e-9));
    }
    SUBCASE("sketch sequence carries the opaque stream budget") {
        const auto b = scheme_budget(catalog_scheme(SchemeKind::SketchesDesc), dims);
        CHECK(b.visual_symbols == doctest::Approx(4089.4464).epsilon(1e-9));
        CHECK(b.cbr == doctest::Approx(0.0033295989990234378).epsilon(1e-9));
    }
    SUBCASE("opaque codec budgets") {
        CHECK(scheme_budget(catalog_scheme(SchemeKind::H26xLdpc), dims).total_symbols ==
              doctest::Approx(7864.32).epsilon(1e-9));
        CHECK(scheme_budget(catalog_scheme(SchemeKind::Dvst), dims).total_symbols ==
              doctest::Approx(6291.456).epsilon(1e-9));
        // per-frame 983.04 rounds up to 984 whole symbols
        CHECK(scheme_budget(catalog_scheme(SchemeKind::DjsccRgb), dims).total_symbols ==
              doctest::Approx(7872.0).epsilon(1e-9));
    }
}

TEST_CASE("budgets are additive and monotone") {
    const VideoDims dims;
    for (double text : {0.0, 100.5, 1147.56}) {
        for (double visual : {0.0, 1024.0, 4089.4464}) {
            const auto whole = make_budget(text, visual, dims);
            const auto text_only = make_budget(text, 0.0, dims);
            const auto visual_only = make_budget(0.0, visual, dims);
            CHECK(whole.cbr ==
                  doctest::Approx(text_only.cbr + visual_only.cbr).epsilon(1e-12));
            CHECK(whole.total_symbols ==
                  doctest::Approx(text + visual).epsilon(1e-9));
        }
    }
    // growing any payload never reduces the ratio
    double previous = -1.0;
    for (double bits : {0.0, 100.0, 765.04, 2000.0}) {
        const double c =
            cbr(description_symbols(bits, 2, CodeRate{1, 3}), dims);
        CHECK(c >= previous);
        previous = c;
    }
}
