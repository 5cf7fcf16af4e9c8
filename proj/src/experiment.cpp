#include "semlink/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "semlink/channel.hpp"
#include "semlink/ldpc.hpp"
#include "semlink/metrics.hpp"
#include "semlink/modulation.hpp"
#include "semlink/rng.hpp"
#include "semlink/tensor_io.hpp"
#include "semlink/turbo.hpp"

namespace semlink {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_values(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        raise(ErrorKind::Config, "key " + key + ": bad numeric value '" + value + "'");
    return v;
}

long parse_long(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const long v = std::strtol(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0')
        raise(ErrorKind::Config, "key " + key + ": bad integer value '" + value + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    raise(ErrorKind::Config, "key " + key + ": bad boolean value '" + value + "'");
}

std::string join_path(const std::string& base, const std::string& rel) {
    if (rel.empty() || rel.front() == '/' || base.empty()) return rel;
    return base + "/" + rel;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& base_dir) {
    ExperimentConfig cfg;
    SchemeRun* current = nullptr;

    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        const std::string line = trim(raw);
        if (line.empty() || line.front() == '#') continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                raise(ErrorKind::Config, "unterminated section header: " + line);
            const auto inner = trim(line.substr(1, line.size() - 2));
            if (inner.rfind("scheme", 0) != 0)
                raise(ErrorKind::Config, "unknown section: " + inner);
            const std::string name = trim(inner.substr(6));
            if (name.empty()) raise(ErrorKind::Config, "scheme section needs a name");
            for (const auto& s : cfg.schemes)
                if (s.name == name)
                    raise(ErrorKind::Config, "duplicate scheme section: " + name);
            cfg.schemes.push_back(SchemeRun{name, SchemeConfig{}, ""});
            current = &cfg.schemes.back();
            current->scheme.kind = SchemeKind::DescOnly;
            current->scheme.published_cbr = 0.0;
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            raise(ErrorKind::Config, "expected key = value, got: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            raise(ErrorKind::Config, "empty key or value in: " + line);

        if (!current) {
            if (key == "snr_grid") {
                cfg.snr_grid_db.clear();
                for (const auto& v : split_values(value))
                    cfg.snr_grid_db.push_back(parse_double(key, v));
            } else if (key == "trials") {
                cfg.trials = static_cast<int>(parse_long(key, value));
            } else if (key == "base_seed") {
                cfg.base_seed = static_cast<std::uint64_t>(parse_long(key, value));
            } else if (key == "output") {
                cfg.output_path = join_path(base_dir, value);
            } else if (key == "loss_k") {
                cfg.loss_k = LossWeights::checked(parse_double(key, value)).k;
            } else if (key == "threads") {
                cfg.threads = static_cast<int>(parse_long(key, value));
            } else if (key == "emit_wall_time") {
                cfg.emit_wall_time = parse_bool(key, value);
            } else if (key == "video_channels") {
                cfg.dims.channels = static_cast<std::uint32_t>(parse_long(key, value));
            } else if (key == "video_height") {
                cfg.dims.height = static_cast<std::uint32_t>(parse_long(key, value));
            } else if (key == "video_width") {
                cfg.dims.width = static_cast<std::uint32_t>(parse_long(key, value));
            } else if (key == "video_frames") {
                cfg.dims.frames = static_cast<std::uint32_t>(parse_long(key, value));
            } else {
                raise(ErrorKind::Config, "unknown global key: " + key);
            }
            continue;
        }

        if (key == "kind") {
            const auto kind = scheme_kind_from_name(value);
            if (!kind) raise(ErrorKind::Config, "unknown scheme kind: " + value);
            const std::string fixture = current->fixture_path;
            current->scheme = catalog_scheme(*kind);
            current->fixture_path = fixture;
        } else if (key == "fixture") {
            current->fixture_path = join_path(base_dir, value);
        } else if (key == "description_bits") {
            if (!current->scheme.text_chain)
                raise(ErrorKind::Config, "scheme has no text chain");
            current->scheme.text_chain->payload_bits =
                static_cast<int>(parse_long(key, value));
        } else if (key == "avg_description_bits") {
            if (!current->scheme.text_chain)
                raise(ErrorKind::Config, "scheme has no text chain");
            current->scheme.text_chain->avg_description_bits = parse_double(key, value);
        } else if (key == "turbo_iterations") {
            if (!current->scheme.text_chain)
                raise(ErrorKind::Config, "scheme has no text chain");
            current->scheme.text_chain->turbo_iterations =
                static_cast<int>(parse_long(key, value));
        } else if (key == "symbol_budget") {
            if (current->scheme.visual_chain.payload != VisualPayload::AnalogMapper)
                raise(ErrorKind::Config, "scheme has no analog mapper");
            current->scheme.visual_chain.mapper.symbol_budget =
                static_cast<std::size_t>(parse_long(key, value));
        } else {
            raise(ErrorKind::Config, "unknown scheme key: " + key);
        }
    }

    if (cfg.schemes.empty()) raise(ErrorKind::Config, "config defines no schemes");
    if (cfg.snr_grid_db.empty())
        raise(ErrorKind::Config, "empty SNR grid");
    if (cfg.trials < 1) raise(ErrorKind::Config, "trials must be at least 1");
    if (cfg.threads < 1) raise(ErrorKind::Config, "threads must be at least 1");
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::Io, "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string dir = ".";
    const auto slash = path.find_last_of('/');
    if (slash != std::string::npos) dir = path.substr(0, slash);
    return parse_config_text(buf.str(), dir);
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t scheme_id,
                          std::uint64_t snr_index, std::uint64_t trial_index) {
    std::uint64_t h = mix64(base_seed + kGoldenGamma);
    h = mix64(h ^ ((scheme_id + 1) * 0x9E3779B97F4A7C15ull));
    h = mix64(h ^ ((snr_index + 1) * 0xC2B2AE3D27D4EB4Full));
    h = mix64(h ^ ((trial_index + 1) * 0x165667B19E3779F9ull));
    return h;
}

namespace {

// Distinct sub-streams of one trial seed.
enum StreamTag : std::uint64_t {
    kPayloadStream = 1,
    kTextChannelStream = 2,
    kVisualChannelStream = 3,
};

BitSequence random_bits(std::uint64_t seed, std::size_t count) {
    BitSequence bits;
    bits.bits.resize(count);
    for (std::size_t i = 0; i < count; ++i)
        bits.bits[i] = static_cast<std::uint8_t>(rng_word(seed, i) & 1);
    return bits;
}

struct TextChainResult {
    double ber = 0.0;
    double bler = 0.0;
};

TextChainResult run_text_chain(const TextChainConfig& cfg, double snr_db,
                               std::uint64_t trial_seed) {
    const std::size_t l = static_cast<std::size_t>(cfg.payload_bits);
    const auto spec = TurboCodeSpec::standard(l, cfg.turbo_iterations);
    const auto scheme = ModulationScheme::from_order_bits(cfg.modulation_bits);

    const BitSequence message = random_bits(derive_stream(trial_seed, kPayloadStream), l);
    const BitSequence coded = turbo_encode(message, spec);
    const SymbolSequence tx = modulate(coded, scheme);
    const auto noise = NoiseParams::from_snr(snr_db, derive_stream(trial_seed, kTextChannelStream));
    const SymbolSequence rx = awgn(tx, noise);
    const auto llrs = soft_demodulate(rx, noise.sigma2, scheme, DemodMode::Exact);
    const auto decoded = turbo_decode(llrs, spec);

    std::size_t errors = 0;
    for (std::size_t i = 0; i < l; ++i)
        errors += decoded.message.bits[i] != message.bits[i];
    TextChainResult r;
    r.ber = static_cast<double>(errors) / static_cast<double>(l);
    r.bler = errors > 0 ? 1.0 : 0.0;
    return r;
}

struct VisualMetrics {
    double mse_value;
    double psnr_value;
    double ssim_value;
    double loss_value;
};

VisualMetrics measure_visual(const VideoTensor& original, const VideoTensor& recon,
                             double loss_k) {
    VisualMetrics m{};
    m.mse_value = mse(original, recon);
    const ScoreReport report = score_frames(original, recon);
    m.psnr_value = report.mean_psnr;
    m.ssim_value = report.mean_ssim;
    GradientMagnitudeDistance proxy;
    m.loss_value = weighted_loss(original, recon, LossWeights::checked(loss_k), proxy);
    return m;
}

VisualMetrics run_analog_chain(const VideoTensor& source, const AnalogMapperSpec& base_spec,
                               bool per_frame, double snr_db, std::uint64_t trial_seed,
                               double loss_k) {
    AnalogMapperSpec spec = base_spec;
    spec.height = source.height();
    spec.width = source.width();
    spec.channels = source.channels();

    const std::uint32_t frames = per_frame ? source.frames() : 1;
    std::vector<float> recon_data;
    recon_data.reserve(static_cast<std::size_t>(frames) * source.frame_elements());

    for (std::uint32_t f = 1; f <= frames; ++f) {
        const VideoTensor frame = frame_slice(source, f);
        SymbolSequence tx = jscc_encode(frame, spec);
        const auto noise = NoiseParams::from_snr(
            snr_db, derive_stream(trial_seed, kVisualChannelStream + f - 1));
        const SymbolSequence rx = awgn(tx, noise);
        const VideoTensor recon = jscc_decode(rx, spec);
        recon_data.insert(recon_data.end(), recon.data().begin(), recon.data().end());
    }

    const VideoTensor reference =
        per_frame ? source : frame_slice(source, 1);
    const VideoTensor recon(frames, source.height(), source.width(), source.channels(),
                            std::move(recon_data));
    return measure_visual(reference, recon, loss_k);
}

struct LdpcChainResult {
    double ber = 0.0;
    double bler = 0.0;
};

LdpcChainResult run_ldpc_chain(double target_symbols, double snr_db,
                               std::uint64_t trial_seed) {
    const LdpcConfigRow row = select_ldpc_config(snr_db);
    const LdpcCodeSpec code = LdpcCodeSpec::standard(row.rate);
    const auto scheme = ModulationScheme::from_order_bits(row.modulation_bits);

    // as many whole codeword blocks as fit the symbol budget, at least one
    const double symbols_per_block =
        static_cast<double>(code.n) / row.modulation_bits;
    const std::size_t blocks = std::max<std::size_t>(
        1, static_cast<std::size_t>(target_symbols / symbols_per_block));

    const std::uint64_t payload_seed = derive_stream(trial_seed, kPayloadStream);
    const auto noise =
        NoiseParams::from_snr(snr_db, derive_stream(trial_seed, kVisualChannelStream));

    std::size_t bit_errors = 0, block_errors = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
        const BitSequence message =
            random_bits(derive_stream(payload_seed, b), code.k);
        const BitSequence coded = ldpc_encode(message, code);
        const SymbolSequence tx = modulate(coded, scheme);
        NoiseParams block_noise = noise;
        block_noise.rng_seed = derive_stream(noise.rng_seed, b);
        const SymbolSequence rx = awgn(tx, block_noise);
        const auto llrs = soft_demodulate(rx, noise.sigma2, scheme, DemodMode::Exact);
        const auto decoded = ldpc_decode(llrs, code);
        std::size_t errors = 0;
        for (std::size_t i = 0; i < code.k; ++i)
            errors += decoded.message.bits[i] != message.bits[i];
        bit_errors += errors;
        block_errors += errors > 0 ? 1 : 0;
    }
    LdpcChainResult r;
    r.ber = static_cast<double>(bit_errors) / (static_cast<double>(blocks) * code.k);
    r.bler = static_cast<double>(block_errors) / static_cast<double>(blocks);
    return r;
}

VideoTensor load_fixture(const std::string& path) {
    if (path.empty()) raise(ErrorKind::Config, "scheme needs a fixture path");
    const auto dot = path.find_last_of('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    if (ext == "ppm" || ext == "pgm") return read_image(path);
    return read_tensor(path);
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string format_optional(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

}  // namespace

std::vector<TrialRecord> run_experiment(const ExperimentConfig& config) {
    if (config.schemes.empty()) raise(ErrorKind::Config, "config defines no schemes");

    // Fixtures load once per scheme and are shared by all trials.
    std::vector<std::optional<VideoTensor>> fixtures(config.schemes.size());
    for (std::size_t s = 0; s < config.schemes.size(); ++s) {
        const auto& run = config.schemes[s];
        if (run.scheme.visual_chain.payload == VisualPayload::AnalogMapper)
            fixtures[s] = load_fixture(run.fixture_path);
    }

    const std::size_t cells =
        config.schemes.size() * config.snr_grid_db.size() * config.trials;
    std::vector<TrialRecord> records(cells);

    auto run_cell = [&](std::size_t cell) {
        const std::size_t per_scheme = config.snr_grid_db.size() * config.trials;
        const std::size_t scheme_id = cell / per_scheme;
        const std::size_t snr_index = (cell % per_scheme) / config.trials;
        const std::size_t trial_index = cell % config.trials;

        const auto& run = config.schemes[scheme_id];
        const double snr_db = config.snr_grid_db[snr_index];
        const std::uint64_t seed =
            derive_seed(config.base_seed, scheme_id, snr_index, trial_index);

        TrialRecord rec;
        rec.scheme = run.name;
        rec.snr_db = snr_db;
        rec.trial_index = static_cast<int>(trial_index);
        const LinkBudget budget = scheme_budget(run.scheme, config.dims);
        rec.cbr_exact = budget.cbr;
        rec.cbr_published = run.scheme.published_cbr;

        const auto start = std::chrono::steady_clock::now();
        try {
            if (run.scheme.text_chain) {
                const auto text = run_text_chain(*run.scheme.text_chain, snr_db, seed);
                rec.ber_text = text.ber;
                rec.bler_text = text.bler;
            }
            switch (run.scheme.visual_chain.payload) {
                case VisualPayload::None:
                case VisualPayload::OpaqueBudget:
                    break;
                case VisualPayload::AnalogMapper: {
                    const auto metrics = run_analog_chain(
                        *fixtures[scheme_id], run.scheme.visual_chain.mapper,
                        run.scheme.visual_chain.per_frame, snr_db, seed, config.loss_k);
                    rec.visual_mse = metrics.mse_value;
                    rec.psnr = metrics.psnr_value;
                    rec.ssim = metrics.ssim_value;
                    rec.weighted_loss = metrics.loss_value;
                    break;
                }
                case VisualPayload::LdpcChain: {
                    const double target =
                        run.scheme.visual_chain.opaque_cbr * config.dims.pixel_count();
                    const auto result = run_ldpc_chain(target, snr_db, seed);
                    rec.ber_text = result.ber;
                    rec.bler_text = result.bler;
                    break;
                }
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::UnsupportedRegime) throw;
            // outside the defined tables: flag the row, keep the sweep going
            rec.unsupported = true;
            const double nan = std::nan("");
            rec.ber_text = nan;
            rec.bler_text = nan;
        }
        if (config.emit_wall_time) {
            rec.wall_time =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                    .count();
        }
        records[cell] = std::move(rec);
    };

    if (config.threads <= 1) {
        for (std::size_t cell = 0; cell < cells; ++cell) run_cell(cell);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (int t = 0; t < config.threads; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t cell = next.fetch_add(1);
                    if (cell >= cells) return;
                    try {
                        run_cell(cell);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }
    return records;
}

std::string records_to_csv(const std::vector<TrialRecord>& records) {
    std::ostringstream out;
    out << "scheme,snr_db,trial_index,cbr_exact,cbr_published,ber_text,bler_text,"
           "visual_mse,psnr,ssim,weighted_loss,wall_time\n";
    for (const auto& r : records) {
        out << r.scheme << ',' << format_double(r.snr_db) << ',' << r.trial_index << ','
            << format_double(r.cbr_exact) << ',' << format_double(r.cbr_published) << ','
            << format_optional(r.ber_text) << ',' << format_optional(r.bler_text) << ','
            << format_optional(r.visual_mse) << ',' << format_optional(r.psnr) << ','
            << format_optional(r.ssim) << ',' << format_optional(r.weighted_loss) << ','
            << format_double(r.wall_time) << '\n';
    }
    return out.str();
}

std::string run_to_file(const ExperimentConfig& config) {
    const auto records = run_experiment(config);
    const std::string csv = records_to_csv(records);
    if (!config.output_path.empty()) {
        std::ofstream out(config.output_path, std::ios::trunc | std::ios::binary);
        if (!out) raise(ErrorKind::Io, "cannot create " + config.output_path);
        out << csv;
        if (!out) raise(ErrorKind::Io, "write failure on " + config.output_path);
    }
    return csv;
}

}  // namespace semlink
