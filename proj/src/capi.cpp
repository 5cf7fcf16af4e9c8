#include "semlink.h"

#include <cstdio>
#include <cstring>
#include <new>
#include <string>

#include "semlink/channel.hpp"
#include "semlink/error.hpp"
#include "semlink/experiment.hpp"
#include "semlink/fixtures.hpp"
#include "semlink/strategy.hpp"

struct semlink_experiment {
    semlink::ExperimentConfig config;
};

namespace {

thread_local std::string g_last_error;

semlink_status status_from_kind(semlink::ErrorKind kind) {
    using semlink::ErrorKind;
    switch (kind) {
        case ErrorKind::Config: return SEMLINK_ERR_CONFIG;
        case ErrorKind::Io: return SEMLINK_ERR_IO;
        case ErrorKind::Format: return SEMLINK_ERR_FORMAT;
        case ErrorKind::Domain: return SEMLINK_ERR_DOMAIN;
        case ErrorKind::Range: return SEMLINK_ERR_RANGE;
        case ErrorKind::Framing: return SEMLINK_ERR_FRAMING;
        case ErrorKind::Shape: return SEMLINK_ERR_SHAPE;
        case ErrorKind::Contract: return SEMLINK_ERR_CONTRACT;
        case ErrorKind::UnsupportedRegime: return SEMLINK_ERR_UNSUPPORTED;
    }
    return SEMLINK_ERR_INTERNAL;
}

template <typename Fn>
semlink_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return SEMLINK_OK;
    } catch (const semlink::Error& e) {
        g_last_error = e.what();
        return status_from_kind(e.kind());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SEMLINK_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return SEMLINK_ERR_INTERNAL;
    }
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::string schemes_listing() {
    std::string out;
    out += "scheme            published_cbr  exact_cbr     chains\n";
    const semlink::VideoDims dims;
    for (const auto& s : semlink::default_catalog()) {
        const auto budget = semlink::scheme_budget(s, dims);
        char line[160];
        std::string chains;
        if (s.text_chain) chains += "text(turbo 1/3 + 4-QAM)";
        switch (s.visual_chain.payload) {
            case semlink::VisualPayload::None: break;
            case semlink::VisualPayload::AnalogMapper:
                if (!chains.empty()) chains += " + ";
                chains += "analog(" +
                          std::to_string(s.visual_chain.mapper.symbol_budget) +
                          " symbols" + (s.visual_chain.per_frame ? "/frame)" : ")");
                break;
            case semlink::VisualPayload::LdpcChain:
                if (!chains.empty()) chains += " + ";
                chains += "adaptive LDPC + QAM";
                break;
            case semlink::VisualPayload::OpaqueBudget:
                if (!chains.empty()) chains += " + ";
                chains += "opaque budget";
                break;
        }
        std::snprintf(line, sizeof(line), "%-17s %-14g %-13.6g %s\n",
                      semlink::scheme_kind_name(s.kind), s.published_cbr, budget.cbr,
                      chains.c_str());
        out += line;
    }
    out += "\nadaptive LDPC/modulation table (CBR 0.005):\n";
    for (const auto& row : semlink::LdpcConfigTable::standard().rows) {
        char line[120];
        const double ebn0 = semlink::ebn0_db_from_esn0_db(
            row.snr_db, row.modulation_bits, row.rate.value());
        std::snprintf(line, sizeof(line),
                      "  %2g dB -> rate %d/%d, %s   (Eb/N0 %.2f dB)\n", row.snr_db,
                      row.rate.numerator, row.rate.denominator,
                      row.modulation_bits == 2 ? "4-QAM" : "16-QAM", ebn0);
        out += line;
    }
    return out;
}

std::string budget_listing(const std::string& name) {
    const auto kind = semlink::scheme_kind_from_name(name);
    if (!kind)
        semlink::raise(semlink::ErrorKind::Config, "unknown scheme: " + name);
    const auto scheme = semlink::catalog_scheme(*kind);
    const semlink::VideoDims dims;
    const auto b = semlink::scheme_budget(scheme, dims);
    char buf[320];
    std::snprintf(buf, sizeof(buf),
                  "scheme:          %s\n"
                  "text_symbols:    %.6g\n"
                  "visual_symbols:  %.6g\n"
                  "total_symbols:   %.6g\n"
                  "denominator:     %.0f\n"
                  "cbr_exact:       %.9g\n"
                  "cbr_published:   %g\n",
                  name.c_str(), b.text_symbols, b.visual_symbols, b.total_symbols,
                  b.denominator, b.cbr, scheme.published_cbr);
    return buf;
}

}  // namespace

extern "C" {

const char* semlink_version(void) { return "1.0.0"; }

const char* semlink_last_error(void) { return g_last_error.c_str(); }

void semlink_string_free(char* s) { delete[] s; }

semlink_status semlink_experiment_open(const char* config_path,
                                       semlink_experiment** out) {
    if (!config_path || !out) {
        g_last_error = "null argument";
        return SEMLINK_ERR_CONFIG;
    }
    *out = nullptr;
    return guarded([&] {
        auto config = semlink::parse_config_file(config_path);
        *out = new semlink_experiment{std::move(config)};
    });
}

semlink_status semlink_experiment_run(semlink_experiment* experiment, char** csv_out) {
    if (!experiment) {
        g_last_error = "null experiment handle";
        return SEMLINK_ERR_CONFIG;
    }
    return guarded([&] {
        const std::string csv = semlink::run_to_file(experiment->config);
        if (csv_out) *csv_out = copy_string(csv);
    });
}

const char* semlink_experiment_output_path(const semlink_experiment* experiment) {
    return experiment ? experiment->config.output_path.c_str() : "";
}

void semlink_experiment_close(semlink_experiment* experiment) { delete experiment; }

semlink_status semlink_schemes_text(char** out) {
    if (!out) {
        g_last_error = "null argument";
        return SEMLINK_ERR_CONFIG;
    }
    return guarded([&] { *out = copy_string(schemes_listing()); });
}

semlink_status semlink_budget_text(const char* scheme_name, char** out) {
    if (!scheme_name || !out) {
        g_last_error = "null argument";
        return SEMLINK_ERR_CONFIG;
    }
    return guarded([&] { *out = copy_string(budget_listing(scheme_name)); });
}

semlink_status semlink_write_demo_fixtures(const char* dir) {
    if (!dir) {
        g_last_error = "null argument";
        return SEMLINK_ERR_CONFIG;
    }
    return guarded([&] { semlink::write_demo_fixtures(dir); });
}

}  // extern "C"
