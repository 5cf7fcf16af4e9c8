#include "semlink/strategy.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace semlink {

const char* scheme_kind_name(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::DescOnly: return "desc_only";
        case SchemeKind::SketchDesc: return "sketch_desc";
        case SchemeKind::SketchesDesc: return "sketches_desc";
        case SchemeKind::FirstFrameDesc: return "first_frame_desc";
        case SchemeKind::H26xLdpc: return "h26x_ldpc";
        case SchemeKind::DjsccRgb: return "djscc_rgb";
        case SchemeKind::Dvst: return "dvst";
    }
    return "unknown";
}

std::optional<SchemeKind> scheme_kind_from_name(const std::string& name) {
    const SchemeKind kinds[] = {SchemeKind::DescOnly,      SchemeKind::SketchDesc,
                                SchemeKind::SketchesDesc,  SchemeKind::FirstFrameDesc,
                                SchemeKind::H26xLdpc,      SchemeKind::DjsccRgb,
                                SchemeKind::Dvst};
    for (auto k : kinds)
        if (name == scheme_kind_name(k)) return k;
    return std::nullopt;
}

const SchemeKind kVisualPreferenceOrder[3] = {
    SchemeKind::FirstFrameDesc, SchemeKind::SketchesDesc, SchemeKind::SketchDesc};

namespace {

AnalogMapperSpec sketch_mapper() {
    AnalogMapperSpec m;
    m.height = 256;
    m.width = 256;
    m.channels = 1;
    m.symbol_budget = 1024;  // 32*32*2 encoder outputs paired into symbols
    return m;
}

AnalogMapperSpec first_frame_mapper() {
    AnalogMapperSpec m;
    m.height = 256;
    m.width = 256;
    m.channels = 3;
    m.symbol_budget = 3728;  // reproduces the 0.0031 budget with the text chain
    return m;
}

AnalogMapperSpec rgb_frame_mapper() {
    AnalogMapperSpec m;
    m.height = 256;
    m.width = 256;
    m.channels = 3;
    // whole-video budget at CBR 0.005 split evenly over the frames; the
    // fractional per-frame count rounds up to whole symbols
    m.symbol_budget = static_cast<std::size_t>(std::ceil(0.005 * 3 * 256 * 256));
    return m;
}

}  // namespace

SchemeConfig catalog_scheme(SchemeKind kind) {
    SchemeConfig s;
    s.kind = kind;
    switch (kind) {
        case SchemeKind::DescOnly:
            s.text_chain = TextChainConfig{};
            s.published_cbr = 0.0007;
            break;
        case SchemeKind::SketchDesc:
            s.text_chain = TextChainConfig{};
            s.visual_chain.payload = VisualPayload::AnalogMapper;
            s.visual_chain.mapper = sketch_mapper();
            s.published_cbr = 0.001;
            break;
        case SchemeKind::SketchesDesc:
            s.text_chain = TextChainConfig{};
            s.visual_chain.payload = VisualPayload::OpaqueBudget;
            s.visual_chain.opaque_cbr = 0.0026;  // whole sketch stream as one budget
            s.published_cbr = 0.003;
            break;
        case SchemeKind::FirstFrameDesc:
            s.text_chain = TextChainConfig{};
            s.visual_chain.payload = VisualPayload::AnalogMapper;
            s.visual_chain.mapper = first_frame_mapper();
            s.published_cbr = 0.0031;
            break;
        case SchemeKind::H26xLdpc:
            s.visual_chain.payload = VisualPayload::LdpcChain;
            s.visual_chain.opaque_cbr = 0.005;
            s.published_cbr = 0.005;
            break;
        case SchemeKind::DjsccRgb:
            s.visual_chain.payload = VisualPayload::AnalogMapper;
            s.visual_chain.mapper = rgb_frame_mapper();
            s.visual_chain.per_frame = true;
            s.published_cbr = 0.005;
            break;
        case SchemeKind::Dvst:
            s.visual_chain.payload = VisualPayload::OpaqueBudget;
            s.visual_chain.opaque_cbr = 0.004;
            s.published_cbr = 0.004;
            break;
    }
    return s;
}

std::vector<SchemeConfig> default_catalog() {
    return {catalog_scheme(SchemeKind::DescOnly),
            catalog_scheme(SchemeKind::SketchDesc),
            catalog_scheme(SchemeKind::SketchesDesc),
            catalog_scheme(SchemeKind::FirstFrameDesc),
            catalog_scheme(SchemeKind::H26xLdpc),
            catalog_scheme(SchemeKind::DjsccRgb),
            catalog_scheme(SchemeKind::Dvst)};
}

LinkBudget scheme_budget(const SchemeConfig& scheme, const VideoDims& dims) {
    double text = 0.0;
    if (scheme.text_chain) {
        const auto& t = *scheme.text_chain;
        text = description_symbols(t.avg_description_bits, t.modulation_bits, t.rate);
    }
    double visual = 0.0;
    switch (scheme.visual_chain.payload) {
        case VisualPayload::None:
            break;
        case VisualPayload::AnalogMapper: {
            const double per_frame =
                static_cast<double>(scheme.visual_chain.mapper.symbol_budget);
            if (per_frame < 1.0)
                raise(ErrorKind::Config, "analog mapper budget is missing");
            visual = scheme.visual_chain.per_frame ? per_frame * dims.frames : per_frame;
            break;
        }
        case VisualPayload::LdpcChain:
        case VisualPayload::OpaqueBudget:
            if (scheme.visual_chain.opaque_cbr <= 0.0)
                raise(ErrorKind::Config, "opaque budget is missing");
            visual = scheme.visual_chain.opaque_cbr * dims.pixel_count();
            break;
    }
    return make_budget(text, visual, dims);
}

LdpcConfigTable LdpcConfigTable::standard() {
    LdpcConfigTable t;
    t.rows = {
        {0.0, CodeRate{1, 3}, 2}, {2.0, CodeRate{1, 2}, 2},  {4.0, CodeRate{2, 3}, 2},
        {6.0, CodeRate{3, 4}, 2}, {8.0, CodeRate{1, 2}, 4},  {10.0, CodeRate{2, 3}, 4},
    };
    return t;
}

std::string LdpcConfigTable::serialize() const {
    std::ostringstream out;
    for (const auto& r : rows) {
        char line[64];
        std::snprintf(line, sizeof(line), "%g %d/%d %d\n", r.snr_db, r.rate.numerator,
                      r.rate.denominator, r.modulation_bits);
        out << line;
    }
    return out.str();
}

LdpcConfigTable LdpcConfigTable::parse(const std::string& text) {
    LdpcConfigTable t;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double snr;
        int num, den, bits;
        if (std::sscanf(line.c_str(), "%lf %d/%d %d", &snr, &num, &den, &bits) != 4)
            raise(ErrorKind::Format, "malformed LDPC table row: " + line);
        t.rows.push_back({snr, CodeRate::checked(num, den), bits});
    }
    if (t.rows.empty()) raise(ErrorKind::Format, "empty LDPC table");
    return t;
}

LdpcConfigRow select_ldpc_config(double snr_db, const LdpcConfigTable& table) {
    if (table.rows.empty()) raise(ErrorKind::Config, "empty LDPC table");
    if (snr_db < table.rows.front().snr_db)
        raise(ErrorKind::UnsupportedRegime,
              "SNR " + std::to_string(snr_db) + " dB is below the adaptive table floor");
    const LdpcConfigRow* chosen = &table.rows.front();
    for (const auto& r : table.rows) {
        if (r.snr_db <= snr_db) chosen = &r;  // nearest lower row
    }
    return *chosen;
}

LdpcConfigRow select_ldpc_config(double snr_db) {
    static const LdpcConfigTable table = LdpcConfigTable::standard();
    return select_ldpc_config(snr_db, table);
}

SchemeConfig select_scheme(double snr_db, double threshold_db,
                           const std::vector<SchemeConfig>& catalog) {
    if (catalog.empty()) raise(ErrorKind::Config, "empty scheme catalog");
    if (snr_db > threshold_db) {  // strictly greater sends visuals
        for (SchemeKind preferred : kVisualPreferenceOrder) {
            for (const auto& s : catalog)
                if (s.kind == preferred) return s;
        }
    }
    for (const auto& s : catalog)
        if (s.kind == SchemeKind::DescOnly) return s;
    raise(ErrorKind::Config, "catalog holds no description-only fallback");
}

std::vector<ChainStage> build_tx_chain(const SchemeConfig& scheme,
                                       std::optional<double> snr_db) {
    std::vector<ChainStage> stages;
    auto text_stages = [&stages](const TextChainConfig& t) {
        char rate[32];
        std::snprintf(rate, sizeof(rate), "rate %d/%d, L=%d", t.rate.numerator,
                      t.rate.denominator, t.payload_bits);
        stages.push_back({"text/bits", std::to_string(t.payload_bits) + " payload bits"});
        stages.push_back({"text/turbo_encode", rate});
        stages.push_back({"text/modulate", t.modulation_bits == 2 ? "4-QAM" : "16-QAM"});
        stages.push_back({"text/awgn", "complex Gaussian noise"});
        stages.push_back({"text/soft_demodulate", "exact LLRs"});
        stages.push_back({"text/turbo_decode",
                          std::to_string(t.turbo_iterations) + " iterations"});
    };
    auto analog_stages = [&stages](const AnalogMapperSpec& m, bool per_frame) {
        const std::string scope = per_frame ? "every frame" : "single frame";
        stages.push_back({"visual/frame", scope});
        stages.push_back({"visual/jscc_encode",
                          std::to_string(m.symbol_budget) + " symbols, unit power"});
        stages.push_back({"visual/awgn", "complex Gaussian noise"});
        stages.push_back({"visual/jscc_decode", "clamped reconstruction"});
    };

    switch (scheme.kind) {
        case SchemeKind::DescOnly:
            text_stages(*scheme.text_chain);
            break;
        case SchemeKind::SketchDesc:
        case SchemeKind::FirstFrameDesc:
            text_stages(*scheme.text_chain);
            analog_stages(scheme.visual_chain.mapper, false);
            break;
        case SchemeKind::SketchesDesc:
            text_stages(*scheme.text_chain);
            stages.push_back({"visual/opaque_budget",
                              "sketch stream modeled as CBR " +
                                  std::to_string(scheme.visual_chain.opaque_cbr)});
            break;
        case SchemeKind::H26xLdpc: {
            if (!snr_db)
                raise(ErrorKind::Config,
                      "the adaptive LDPC chain needs an operating SNR");
            const LdpcConfigRow row = select_ldpc_config(*snr_db);
            char rate[32];
            std::snprintf(rate, sizeof(rate), "rate %d/%d", row.rate.numerator,
                          row.rate.denominator);
            stages.push_back({"visual/bitstream", "opaque codec payload"});
            stages.push_back({"visual/ldpc_encode", rate});
            stages.push_back(
                {"visual/modulate", row.modulation_bits == 2 ? "4-QAM" : "16-QAM"});
            stages.push_back({"visual/awgn", "complex Gaussian noise"});
            stages.push_back({"visual/soft_demodulate", "exact LLRs"});
            stages.push_back({"visual/ldpc_decode", "normalized min-sum"});
            break;
        }
        case SchemeKind::DjsccRgb:
            analog_stages(scheme.visual_chain.mapper, true);
            break;
        case SchemeKind::Dvst:
            stages.push_back({"visual/opaque_budget",
                              "key-frame/differential stream modeled as CBR " +
                                  std::to_string(scheme.visual_chain.opaque_cbr)});
            break;
    }
    return stages;
}

}  // namespace semlink
