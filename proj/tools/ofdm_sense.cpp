// ofdm-sense: FOS / DFOS experiment runner.
//
//   ofdm-sense detect     [--config F] [--method fos|dfos|both] [--out DIR] [--seed S]
//   ofdm-sense rdm        [--config F] [--method ...] [--import-grid F] [--export-grid] [--export-taps]
//   ofdm-sense sweep-p    [--config F] [--trials N] [--parallel N]
//   ofdm-sense snr-sweep  [--config F] [--trials N] [--parallel N]
//   ofdm-sense bench      [--config F]
//
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "ofdm_sensing/csv.hpp"
#include "ofdm_sensing/experiment.hpp"

namespace {

using namespace ofdmsense;

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::size_t> trials;
    std::string method = "both";
    std::size_t parallel = 1;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--config", opt.config_path, "Experiment config (flat JSON)");
    cmd->add_option("--seed", opt.seed, "Override the config seed");
    cmd->add_option("--out", opt.out, "Output directory");
    cmd->add_option("--method", opt.method, "fos, dfos or both")
        ->check(CLI::IsMember({"fos", "dfos", "both"}));
    cmd->add_option("--trials", opt.trials, "Monte-Carlo trials");
    cmd->add_option("--parallel", opt.parallel, "Worker threads for trial loops")
        ->check(CLI::PositiveNumber);
}

ExperimentConfig resolve(const CommonOptions& opt, ExperimentConfig base) {
    ExperimentConfig cfg = opt.config_path.empty() ? std::move(base) : load_config(opt.config_path);
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.out) cfg.output_dir = *opt.out;
    if (opt.trials) cfg.trials = *opt.trials;
    validate(cfg);
    return cfg;
}

void print_detections(const char* label, const std::vector<Detection>& dets) {
    for (std::size_t i = 0; i < dets.size(); ++i)
        std::cout << label << " peak " << i << ": r = " << format_number(dets[i].range_m)
                  << " m, v = " << format_number(dets[i].velocity_mps) << " m/s (bins "
                  << dets[i].range_bin << ", " << dets[i].doppler_bin_signed << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"OFDM sensing simulator: FFT-based and decimation-based range-Doppler processing"};
    app.require_subcommand(1);

    CommonOptions detect_opt, rdm_opt, sweep_opt, snr_opt, bench_opt;
    auto* detect = app.add_subcommand("detect", "Full chain through FOS and/or DFOS with detections");
    add_common(detect, detect_opt);
    auto* rdm = app.add_subcommand("rdm", "Dump a single range-Doppler map");
    add_common(rdm, rdm_opt);
    std::string import_grid;
    bool export_grid = false;
    bool export_taps = false;
    rdm->add_option("--import-grid", import_grid, "Read the echo grid from an m,n,re,im CSV");
    rdm->add_flag("--export-grid", export_grid, "Write echo_grid.csv");
    rdm->add_flag("--export-taps", export_taps, "Write filter_taps.csv");
    auto* sweep = app.add_subcommand("sweep-p", "DFOS-RDM SNR versus taps per branch");
    add_common(sweep, sweep_opt);
    auto* snr = app.add_subcommand("snr-sweep", "FOS and DFOS RDM SNR versus echo SNR");
    add_common(snr, snr_opt);
    auto* bench = app.add_subcommand("bench", "Operation counts and wall-clock timings");
    add_common(bench, bench_opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (detect->parsed()) {
            const ExperimentConfig cfg = resolve(detect_opt, ExperimentConfig{});
            const DetectResult r = run_detect(cfg, parse_method(detect_opt.method));
            write_detect_outputs(r, cfg, cfg.output_dir);
            print_detections("fos ", r.fos_detections);
            print_detections("dfos", r.dfos_detections);
        } else if (rdm->parsed()) {
            ExperimentConfig cfg = resolve(rdm_opt, ExperimentConfig{});
            const EchoGrid grid = import_grid.empty()
                                      ? simulate_grid(cfg)
                                      : EchoGrid{parse_echo_grid_csv(read_text_file(import_grid)), {}};
            cfg.n_peaks = 0;
            cfg.targets.clear();
            const DetectResult r = run_detect(cfg, parse_method(rdm_opt.method), &grid);
            const std::filesystem::path dir = cfg.output_dir;
            if (r.fos) write_text_file(dir / "rdm_fos.csv", rdm_csv(*r.fos));
            if (r.dfos) write_text_file(dir / "rdm_dfos.csv", rdm_csv(*r.dfos));
            if (export_grid) write_text_file(dir / "echo_grid.csv", echo_grid_csv(grid.samples));
            if (export_taps)
                write_text_file(dir / "filter_taps.csv",
                                taps_csv(design_filter(cfg.taps_per_branch, cfg.ofdm)));
        } else if (sweep->parsed()) {
            const ExperimentConfig cfg = resolve(sweep_opt, monte_carlo_defaults());
            const auto rows = run_sweep_p(cfg, sweep_opt.parallel);
            const std::string csv = sweep_p_csv(rows);
            write_text_file(std::filesystem::path(cfg.output_dir) / "sweep_p.csv", csv);
            std::cout << csv;
        } else if (snr->parsed()) {
            const ExperimentConfig cfg = resolve(snr_opt, monte_carlo_defaults());
            const auto rows = run_snr_sweep(cfg, snr_opt.parallel);
            const std::string csv = snr_sweep_csv(rows);
            write_text_file(std::filesystem::path(cfg.output_dir) / "snr_sweep.csv", csv);
            std::cout << csv;
        } else if (bench->parsed()) {
            const ExperimentConfig cfg = resolve(bench_opt, ExperimentConfig{});
            const BenchReport report = run_bench(cfg);
            const std::filesystem::path dir = cfg.output_dir;
            write_text_file(dir / "complexity.csv", complexity_csv(report.analytic));
            write_text_file(dir / "bench.csv", bench_csv(report));
            std::cout << bench_summary(report, cfg);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
