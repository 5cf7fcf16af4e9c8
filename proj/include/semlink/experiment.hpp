#ifndef SEMLINK_EXPERIMENT_HPP
#define SEMLINK_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semlink/strategy.hpp"

namespace semlink {

// One configured scheme section of an experiment.
struct SchemeRun {
    std::string name;  // section label, used in the CSV scheme column
    SchemeConfig scheme;
    std::string fixture_path;  // visual payload source, where applicable
};

struct ExperimentConfig {
    std::vector<SchemeRun> schemes;
    std::vector<double> snr_grid_db = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    int trials = 1;
    std::uint64_t base_seed = 7777;
    std::string output_path;
    VideoDims dims;
    double loss_k = 0.3;
    int threads = 1;
    // Wall-clock timing varies run to run, so it is reported as 0 unless
    // explicitly enabled; enabling it gives up byte-identical reports.
    bool emit_wall_time = false;
};

// Flat key-value format with one [scheme NAME] section per scheme; see the
// repository README for the grammar. Relative fixture paths resolve against
// base_dir.
ExperimentConfig parse_config_text(const std::string& text, const std::string& base_dir);
ExperimentConfig parse_config_file(const std::string& path);

// One row per (scheme, snr, trial). Optional fields render empty when the
// scheme has no such measurement and "nan" when the operating point is
// outside the supported regime (flagged row).
struct TrialRecord {
    std::string scheme;
    double snr_db = 0.0;
    int trial_index = 0;
    double cbr_exact = 0.0;
    double cbr_published = 0.0;
    std::optional<double> ber_text;
    std::optional<double> bler_text;
    std::optional<double> visual_mse;
    std::optional<double> psnr;
    std::optional<double> ssim;
    std::optional<double> weighted_loss;
    double wall_time = 0.0;
    bool unsupported = false;
};

// Documented seed mix: h = mix64(base + G); then for each index i of
// (scheme_id, snr_index, trial_index) with multiplier m_i,
// h = mix64(h ^ ((i + 1) * m_i)); multipliers are 0x9E3779B97F4A7C15,
// 0xC2B2AE3D27D4EB4F, 0x165667B19E3779F9. mix64 is the SplitMix64 finalizer.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t scheme_id,
                          std::uint64_t snr_index, std::uint64_t trial_index);

std::vector<TrialRecord> run_experiment(const ExperimentConfig& config);

std::string records_to_csv(const std::vector<TrialRecord>& records);

// Runs and writes the CSV to config.output_path; returns the CSV text.
std::string run_to_file(const ExperimentConfig& config);

}  // namespace semlink

#endif
