#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ofdm_sensing/channel.hpp"
#include "ofdm_sensing/config.hpp"
#include "ofdm_sensing/decimator.hpp"
#include "ofdm_sensing/dfos.hpp"
#include "ofdm_sensing/fos.hpp"
#include "ofdm_sensing/metrics.hpp"
#include "ofdm_sensing/preproc.hpp"

namespace ofdmsense {

enum class NoiseMode { none, time, grid };

std::string_view to_string(NoiseMode mode);
NoiseMode parse_noise_mode(std::string_view name);

/**
 * Everything an experiment run needs. Defaults reproduce the three-target
 * detection scenario (24 GHz, N=1024, Q=128, M=256, Hamming windows, P=16).
 */
struct ExperimentConfig {
    OfdmConfig ofdm;
    std::vector<Target> targets = {{50.0, -10.0, {1.0, 0.0}},
                                   {56.0, -10.0, {1.0, 0.0}},
                                   {56.0, 0.0, {1.0, 0.0}}};
    std::size_t taps_per_branch = 16;
    WindowKind range_window = WindowKind::hamming;
    WindowKind doppler_window = WindowKind::hamming;
    NoiseMode noise_mode = NoiseMode::time;
    double snr_db = 10.0;  // time mode: SNR of the received frame; grid mode: gamma
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    std::size_t n_peaks = 0;  // 0: one per target
    PeakGuard peak_guard;
    NoiseGuard snr_guard;
    std::vector<std::size_t> p_list = {1, 2, 4, 8, 16, 24, 32, 40, 48};
    std::vector<double> gamma_list_db = {-30.0, -20.0, -10.0, 0.0};
    double random_range_min_m = 0.0;
    double random_range_max_m = 200.0;
    double random_velocity_min_mps = -110.0;
    double random_velocity_max_mps = 110.0;
    double range_cut_velocity_mps = -10.0;
    double velocity_cut_range_m = 56.0;
    std::size_t bench_repetitions = 20;

    std::size_t peaks_requested() const { return n_peaks != 0 ? n_peaks : targets.size(); }

    bool operator==(const ExperimentConfig&) const = default;
};

// Single-target Monte-Carlo setup: M = 1, rectangular windows, grid noise.
ExperimentConfig monte_carlo_defaults();

// Invalid experiment configuration; key() names the offending entry.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(message), key_(std::move(key)) {}

    const std::string& key() const { return key_; }

private:
    std::string key_;
};

// Checks every module precondition; messages name the offending key.
void validate(const ExperimentConfig& config);

// Flat JSON object, SI units in key names. Unknown keys, type errors and
// failed validation raise ConfigError with the line of the offending key.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const ExperimentConfig& config);

enum class MethodSelection { fos, dfos, both };

MethodSelection parse_method(std::string_view name);

struct DetectResult {
    std::optional<Rdm> fos;
    std::optional<Rdm> dfos;
    std::vector<Detection> fos_detections;
    std::vector<Detection> dfos_detections;
    std::optional<DecimatorSpec> decimator;
    EchoGrid grid;
    AmbiguityLimits limits;
};

// Echo grid of the configured targets, noise applied per noise_mode.
EchoGrid simulate_grid(const ExperimentConfig& config);

// Full chain through the selected pipelines on the configured scenario. When
// `grid` is supplied it replaces the simulated echo grid.
DetectResult run_detect(const ExperimentConfig& config, MethodSelection methods,
                        const EchoGrid* grid = nullptr);

// Writes detections.csv, rdm_<method>.csv, range_cut.csv and velocity_cut.csv.
void write_detect_outputs(const DetectResult& result, const ExperimentConfig& config,
                          const std::filesystem::path& dir);

struct SweepRow {
    std::size_t taps_per_branch = 0;
    double gamma_db = 0.0;
    std::size_t trials = 0;
    double mean_snr_db = 0.0;
    double std_db = 0.0;
};

struct SnrSweepRow {
    double gamma_db = 0.0;
    SnrReport fos;
    SnrReport dfos;
};

// Mean DFOS-RDM SNR per P at gamma = snr_db over random single targets.
// Trial i uses the same target, data and noise for every P.
std::vector<SweepRow> run_sweep_p(const ExperimentConfig& config, std::size_t parallel = 1);

// Mean FOS and DFOS RDM SNR per gamma, both on the same realization.
std::vector<SnrSweepRow> run_snr_sweep(const ExperimentConfig& config, std::size_t parallel = 1);

struct StageTiming {
    std::string stage;
    double median_s = 0.0;
    double min_s = 0.0;
    std::size_t repetitions = 0;
};

struct BenchReport {
    ComplexityReport analytic;
    std::vector<StageTiming> stages;

    const StageTiming& stage(std::string_view name) const;
};

BenchReport run_bench(const ExperimentConfig& config);

std::string bench_summary(const BenchReport& report, const ExperimentConfig& config);

}  // namespace ofdmsense
