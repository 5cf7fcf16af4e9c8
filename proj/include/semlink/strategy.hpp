#ifndef SEMLINK_STRATEGY_HPP
#define SEMLINK_STRATEGY_HPP

#include <optional>
#include <string>
#include <vector>

#include "semlink/budget.hpp"
#include "semlink/code_rate.hpp"
#include "semlink/jscc.hpp"

namespace semlink {

enum class SchemeKind {
    DescOnly,
    SketchDesc,
    SketchesDesc,
    FirstFrameDesc,
    H26xLdpc,
    DjsccRgb,
    Dvst,
};

const char* scheme_kind_name(SchemeKind kind);
std::optional<SchemeKind> scheme_kind_from_name(const std::string& name);

// Coded text chain: turbo at the configured rate plus QAM.
struct TextChainConfig {
    double avg_description_bits = 765.04;  // dataset average, fractional
    int payload_bits = 768;                // concrete per-trial payload
    int modulation_bits = 2;               // 4-QAM
    CodeRate rate{1, 3};
    int turbo_iterations = 8;
};

// Visual payload: an analog mapper, an adaptive LDPC chain carrying an opaque
// bitstream, or a pure symbol budget with no modeled transmission.
enum class VisualPayload { None, AnalogMapper, LdpcChain, OpaqueBudget };

struct VisualChainConfig {
    VisualPayload payload = VisualPayload::None;
    AnalogMapperSpec mapper;     // AnalogMapper
    double opaque_cbr = 0.0;     // LdpcChain / OpaqueBudget: budget as a CBR
    bool per_frame = false;      // AnalogMapper applied to every frame
};

struct SchemeConfig {
    SchemeKind kind = SchemeKind::DescOnly;
    std::optional<TextChainConfig> text_chain;
    VisualChainConfig visual_chain;
    double published_cbr = 0.0;  // the reported figure, carried as metadata
};

// The seven-scheme catalog with default budgets for 8-frame 256x256 video.
std::vector<SchemeConfig> default_catalog();
SchemeConfig catalog_scheme(SchemeKind kind);

// Exact symbol accounting for a catalog entry.
LinkBudget scheme_budget(const SchemeConfig& scheme, const VideoDims& dims);

// SNR-adaptive LDPC configuration at constant CBR 0.005. Rows are defined on
// {0,2,4,6,8,10} dB; lookups take the nearest row at or below the requested
// SNR and anything below the 0 dB floor is an unsupported regime.
struct LdpcConfigRow {
    double snr_db;
    CodeRate rate;
    int modulation_bits;
};

struct LdpcConfigTable {
    std::vector<LdpcConfigRow> rows;

    static LdpcConfigTable standard();
    std::string serialize() const;
    static LdpcConfigTable parse(const std::string& text);
};

LdpcConfigRow select_ldpc_config(double snr_db);
LdpcConfigRow select_ldpc_config(double snr_db, const LdpcConfigTable& table);

// Threshold rule: above the threshold send description plus visuals (first
// matching entry of the preference order), otherwise description only.
SchemeConfig select_scheme(double snr_db, double threshold_db,
                           const std::vector<SchemeConfig>& catalog);

// Preference order used by select_scheme for description+visual schemes.
extern const SchemeKind kVisualPreferenceOrder[3];

// Human-readable stage list of the transmit pipeline. H26xLdpc needs the
// operating SNR to resolve its adaptive row.
struct ChainStage {
    std::string name;
    std::string detail;
};

std::vector<ChainStage> build_tx_chain(const SchemeConfig& scheme,
                                       std::optional<double> snr_db = std::nullopt);

}  // namespace semlink

#endif
