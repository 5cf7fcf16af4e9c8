#include <doctest.h>

#include "semlink/strategy.hpp"

using namespace semlink;

TEST_CASE("adaptive table reproduces all six rows") {
    const auto table = LdpcConfigTable::standard();
    REQUIRE(table.rows.size() == 6);
    const struct {
        double snr;
        CodeRate rate;
        int bits;
    } expected[] = {
        {0, {1, 3}, 2}, {2, {1, 2}, 2}, {4, {2, 3}, 2},
        {6, {3, 4}, 2}, {8, {1, 2}, 4}, {10, {2, 3}, 4},
    };
    for (int i = 0; i < 6; ++i) {
        CHECK(table.rows[i].snr_db == expected[i].snr);
        CHECK(table.rows[i].rate == expected[i].rate);
        CHECK(table.rows[i].modulation_bits == expected[i].bits);
    }
}

TEST_CASE("table lookups") {
    CHECK(select_ldpc_config(0.0).rate == CodeRate{1, 3});
    CHECK(select_ldpc_config(0.0).modulation_bits == 2);
    CHECK(select_ldpc_config(6.0).rate == CodeRate{3, 4});
    CHECK(select_ldpc_config(10.0).rate == CodeRate{2, 3});
    CHECK(select_ldpc_config(10.0).modulation_bits == 4);

    SUBCASE("nearest lower row") {
        CHECK(select_ldpc_config(3.0).rate == CodeRate{1, 2});
        CHECK(select_ldpc_config(7.9).rate == CodeRate{3, 4});
        CHECK(select_ldpc_config(11.5).rate == CodeRate{2, 3});
    }
    SUBCASE("below the floor") {
        CHECK_THROWS_AS(select_ldpc_config(-0.1), Error);
    }
}

TEST_CASE("table serialization roundtrip is the identity") {
    const auto table = LdpcConfigTable::standard();
    const auto text = table.serialize();
    const auto back = LdpcConfigTable::parse(text);
    REQUIRE(back.rows.size() == table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        CHECK(back.rows[i].snr_db == table.rows[i].snr_db);
        CHECK(back.rows[i].rate == table.rows[i].rate);
        CHECK(back.rows[i].modulation_bits == table.rows[i].modulation_bits);
    }
    CHECK(back.serialize() == text);
    CHECK_THROWS_AS(LdpcConfigTable::parse("garbage line"), Error);
}

TEST_CASE("threshold scheme selection") {
    const auto catalog = default_catalog();
    SUBCASE("above threshold prefers the first-frame scheme") {
        CHECK(select_scheme(10.0, 2.0, catalog).kind == SchemeKind::FirstFrameDesc);
    }
    SUBCASE("below threshold falls back to description only") {
        CHECK(select_scheme(0.0, 2.0, catalog).kind == SchemeKind::DescOnly);
    }
    SUBCASE("equality is not above: strict inequality") {
        CHECK(select_scheme(2.0, 2.0, catalog).kind == SchemeKind::DescOnly);
    }
    SUBCASE("preference order is respected when entries are missing") {
        std::vector<SchemeConfig> partial = {catalog_scheme(SchemeKind::DescOnly),
                                             catalog_scheme(SchemeKind::SketchDesc)};
        CHECK(select_scheme(5.0, 0.0, partial).kind == SchemeKind::SketchDesc);
    }
    SUBCASE("empty catalog is a configuration error") {
        CHECK_THROWS_AS(select_scheme(5.0, 0.0, {}), Error);
    }
    SUBCASE("selection is deterministic") {
        for (int i = 0; i < 5; ++i)
            CHECK(select_scheme(7.0, 1.0, catalog).kind ==
                  select_scheme(7.0, 1.0, catalog).kind);
    }
}

TEST_CASE("catalog invariants") {
    const auto catalog = default_catalog();
    CHECK(catalog.size() == 7);
    for (const auto& s : catalog) {
        const bool known_cbr =
            s.published_cbr == 0.0007 || s.published_cbr == 0.001 ||
            s.published_cbr == 0.003 || s.published_cbr == 0.0031 ||
            s.published_cbr == 0.004 || s.published_cbr == 0.005;
        CHECK(known_cbr);
        if (s.kind == SchemeKind::DescOnly)
            CHECK(s.visual_chain.payload == VisualPayload::None);
        if (s.kind == SchemeKind::H26xLdpc || s.kind == SchemeKind::DjsccRgb ||
            s.kind == SchemeKind::Dvst)
            CHECK_FALSE(s.text_chain.has_value());
    }
    CHECK(scheme_kind_from_name("first_frame_desc") == SchemeKind::FirstFrameDesc);
    CHECK_FALSE(scheme_kind_from_name("nonsense").has_value());
}

TEST_CASE("transmit chain descriptions") {
    SUBCASE("description only") {
        const auto stages = build_tx_chain(catalog_scheme(SchemeKind::DescOnly));
        REQUIRE(stages.size() == 6);
        CHECK(stages[1].name == "text/turbo_encode");
        CHECK(stages[1].detail.find("1/3") != std::string::npos);
        CHECK(stages[2].detail == "4-QAM");
        CHECK(stages[5].name == "text/turbo_decode");
    }
    SUBCASE("adaptive chain at 8 dB uses rate 1/2 and 16-QAM") {
        const auto stages = build_tx_chain(catalog_scheme(SchemeKind::H26xLdpc), 8.0);
        bool saw_rate = false, saw_mod = false;
        for (const auto& s : stages) {
            if (s.name == "visual/ldpc_encode") saw_rate = s.detail == "rate 1/2";
            if (s.name == "visual/modulate") saw_mod = s.detail == "16-QAM";
        }
        CHECK(saw_rate);
        CHECK(saw_mod);
        CHECK_THROWS_AS(build_tx_chain(catalog_scheme(SchemeKind::H26xLdpc)), Error);
    }
    SUBCASE("first frame runs text and visual chains side by side") {
        const auto stages = build_tx_chain(catalog_scheme(SchemeKind::FirstFrameDesc));
        bool text_seen = false, visual_seen = false;
        for (const auto& s : stages) {
            if (s.name.rfind("text/", 0) == 0) text_seen = true;
            if (s.name == "visual/jscc_encode")
                visual_seen = s.detail.find("3728") != std::string::npos;
        }
        CHECK(text_seen);
        CHECK(visual_seen);
    }
}
