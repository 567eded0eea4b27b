#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ofdm_sensing/csv.hpp"
#include "ofdm_sensing/experiment.hpp"
#include "ofdm_sensing/random.hpp"
#include "ofdm_sensing/waveform.hpp"

namespace ofdmsense {
namespace {

// Runs body(i) for i in [0, count) on `parallel` workers. Each index is
// handled by exactly one worker, so per-index outputs never depend on the
// worker count.
template <typename Body>
void for_each_trial(std::size_t count, std::size_t parallel, Body&& body) {
    parallel = std::max<std::size_t>(1, std::min(parallel, count));
    if (parallel == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(parallel);
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < parallel; ++w) {
        workers.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += parallel) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : workers) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// Noiseless echo grid and matching noise-only grid of one Monte-Carlo trial.
struct TrialGrids {
    EchoGrid signal;
    EchoGrid noise;
};

Target random_target(const ExperimentConfig& cfg, std::size_t trial) {
    Rng rng(derive_seed(cfg.seed, SeedStream::targets, trial));
    std::uniform_real_distribution<double> range(cfg.random_range_min_m, cfg.random_range_max_m);
    std::uniform_real_distribution<double> velocity(cfg.random_velocity_min_mps,
                                                    cfg.random_velocity_max_mps);
    Target t;
    t.range_m = range(rng);
    t.velocity_mps = velocity(rng);
    return t;
}

// gamma_db feeds grid noise directly, or sets the frame SNR in time mode.
TrialGrids make_trial(const ExperimentConfig& cfg, std::size_t trial, double gamma_db) {
    if (cfg.noise_mode == NoiseMode::none)
        throw std::runtime_error("rdm_snr: noise floor is numerically zero (noiseless map); "
                                 "Monte-Carlo SNR studies need noise_mode time or grid");
    const Target target = random_target(cfg, trial);
    const DataGrid data = generate_data(cfg.ofdm, derive_seed(cfg.seed, SeedStream::data, trial));
    const TxFrame tx = modulate(data, cfg.ofdm);
    const EchoFrame echo = synthesize_echo(tx, std::span(&target, 1), cfg.ofdm);

    TrialGrids g{preprocess(echo, data, cfg.ofdm), {}};
    if (cfg.noise_mode == NoiseMode::grid) {
        g.noise.samples = grid_noise(cfg.ofdm.n_symbols, cfg.ofdm.n_subcarriers, gamma_db,
                                     derive_seed(cfg.seed, SeedStream::grid_noise, trial));
        g.noise.gamma_db = gamma_db;
    } else {
        const EchoFrame noise =
            awgn_for(echo, gamma_db, derive_seed(cfg.seed, SeedStream::time_noise, trial));
        g.noise = preprocess(noise, data, cfg.ofdm);
    }
    return g;
}

double dfos_trial_snr(const TrialGrids& g, const DecimatorSpec& spec, const ExperimentConfig& cfg) {
    const Rdm sig = dfos_rdm(decimate_grid(g.signal, spec), spec, cfg.ofdm, cfg.range_window,
                             cfg.doppler_window);
    const Rdm noise = dfos_rdm(decimate_grid(g.noise, spec), spec, cfg.ofdm, cfg.range_window,
                               cfg.doppler_window);
    return split_rdm_snr(sig, noise, cfg.snr_guard);
}

double fos_trial_snr(const TrialGrids& g, const ExperimentConfig& cfg) {
    const Rdm sig = fos_rdm(g.signal, cfg.ofdm, cfg.range_window, cfg.doppler_window);
    const Rdm noise = fos_rdm(g.noise, cfg.ofdm, cfg.range_window, cfg.doppler_window);
    return split_rdm_snr(sig, noise, cfg.snr_guard);
}

}  // namespace

EchoGrid simulate_grid(const ExperimentConfig& cfg) {
    validate(cfg);
    const DataGrid data = generate_data(cfg.ofdm, derive_seed(cfg.seed, SeedStream::data));
    const TxFrame tx = modulate(data, cfg.ofdm);
    EchoFrame echo = synthesize_echo(tx, cfg.targets, cfg.ofdm);
    if (cfg.noise_mode == NoiseMode::time)
        echo = add_awgn(echo, cfg.snr_db, derive_seed(cfg.seed, SeedStream::time_noise));
    EchoGrid grid = preprocess(echo, data, cfg.ofdm);
    if (cfg.noise_mode == NoiseMode::grid)
        grid = inject_grid_noise(grid, cfg.snr_db, derive_seed(cfg.seed, SeedStream::grid_noise));
    return grid;
}

DetectResult run_detect(const ExperimentConfig& cfg, MethodSelection methods, const EchoGrid* grid) {
    validate(cfg);
    DetectResult r;
    r.grid = grid != nullptr ? *grid : simulate_grid(cfg);
    if (r.grid.samples.rows() != cfg.ofdm.n_symbols || r.grid.samples.cols() != cfg.ofdm.n_subcarriers)
        throw std::invalid_argument("echo grid is " + std::to_string(r.grid.samples.rows()) + "x" +
                                    std::to_string(r.grid.samples.cols()) + ", config expects " +
                                    std::to_string(cfg.ofdm.n_symbols) + "x" +
                                    std::to_string(cfg.ofdm.n_subcarriers));
    r.limits = ambiguity_limits(cfg.ofdm);
    const std::size_t peaks = cfg.peaks_requested();

    if (methods != MethodSelection::dfos) {
        r.fos = fos_rdm(r.grid, cfg.ofdm, cfg.range_window, cfg.doppler_window);
        if (peaks > 0) r.fos_detections = estimate_fos(*r.fos, cfg.ofdm, peaks, cfg.peak_guard);
    }
    if (methods != MethodSelection::fos) {
        r.decimator = design_filter(cfg.taps_per_branch, cfg.ofdm);
        r.dfos = dfos_rdm(decimate_grid(r.grid, *r.decimator), *r.decimator, cfg.ofdm,
                          cfg.range_window, cfg.doppler_window);
        if (peaks > 0) r.dfos_detections = estimate_dfos(*r.dfos, cfg.ofdm, peaks, cfg.peak_guard);
    }
    return r;
}

void write_detect_outputs(const DetectResult& r, const ExperimentConfig& cfg,
                          const std::filesystem::path& dir) {
    std::vector<MethodDetections> dets;
    if (r.fos) dets.emplace_back(RdmMethod::fos, r.fos_detections);
    if (r.dfos) dets.emplace_back(RdmMethod::dfos, r.dfos_detections);
    write_text_file(dir / "detections.csv", detections_csv(dets));

    std::string range_cuts;
    std::string velocity_cuts;
    for (const Rdm* rdm : {r.fos ? &*r.fos : nullptr, r.dfos ? &*r.dfos : nullptr}) {
        if (rdm == nullptr) continue;
        write_text_file(dir / ("rdm_" + std::string(to_string(rdm->method)) + ".csv"), rdm_csv(*rdm));

        const auto m = static_cast<long>(rdm->doppler_bins());
        const long b = std::lround(cfg.range_cut_velocity_mps / rdm->velocity_per_bin_mps);
        const auto doppler_bin = static_cast<std::size_t>(((b % m) + m) % m);
        const auto delay = static_cast<std::size_t>(std::llround(cfg.velocity_cut_range_m / rdm->range_per_delay_m));
        const std::size_t range_bin = rdm->bin_of_delay(delay);

        const std::string rc = range_cut_csv(*rdm, doppler_bin);
        const std::string vc = velocity_cut_csv(*rdm, range_bin);
        // One header per file, rows of both methods.
        range_cuts += range_cuts.empty() ? rc : rc.substr(rc.find('\n') + 1);
        velocity_cuts += velocity_cuts.empty() ? vc : vc.substr(vc.find('\n') + 1);
    }
    write_text_file(dir / "range_cut.csv", range_cuts);
    write_text_file(dir / "velocity_cut.csv", velocity_cuts);
}

std::vector<SweepRow> run_sweep_p(const ExperimentConfig& cfg, std::size_t parallel) {
    validate(cfg);
    std::vector<DecimatorSpec> specs;
    for (std::size_t p : cfg.p_list) specs.push_back(design_filter(p, cfg.ofdm));

    // snr[i * |P| + j]: trial i, P index j.
    std::vector<double> snr(cfg.trials * specs.size());
    for_each_trial(cfg.trials, parallel, [&](std::size_t i) {
        const TrialGrids g = make_trial(cfg, i, cfg.snr_db);
        for (std::size_t j = 0; j < specs.size(); ++j)
            snr[i * specs.size() + j] = dfos_trial_snr(g, specs[j], cfg);
    });

    std::vector<SweepRow> rows;
    std::vector<double> column(cfg.trials);
    for (std::size_t j = 0; j < specs.size(); ++j) {
        for (std::size_t i = 0; i < cfg.trials; ++i) column[i] = snr[i * specs.size() + j];
        const SnrReport rep = summarize_snr(column, cfg.snr_db);
        rows.push_back({cfg.p_list[j], cfg.snr_db, rep.trials, rep.snr_rdm_db, rep.std_db});
    }
    return rows;
}

std::vector<SnrSweepRow> run_snr_sweep(const ExperimentConfig& cfg, std::size_t parallel) {
    validate(cfg);
    const DecimatorSpec spec = design_filter(cfg.taps_per_branch, cfg.ofdm);
    std::vector<SnrSweepRow> rows;
    std::vector<double> fos(cfg.trials);
    std::vector<double> dfos(cfg.trials);
    for (double gamma : cfg.gamma_list_db) {
        for_each_trial(cfg.trials, parallel, [&](std::size_t i) {
            const TrialGrids g = make_trial(cfg, i, gamma);
            fos[i] = fos_trial_snr(g, cfg);
            dfos[i] = dfos_trial_snr(g, spec, cfg);
        });
        rows.push_back({gamma, summarize_snr(fos, gamma), summarize_snr(dfos, gamma)});
    }
    return rows;
}

const StageTiming& BenchReport::stage(std::string_view name) const {
    for (const auto& s : stages)
        if (s.stage == name) return s;
    throw std::out_of_range("no bench stage named " + std::string(name));
}

namespace {

template <typename Fn>
StageTiming time_stage(std::string name, std::size_t reps, Fn&& fn) {
    using clock = std::chrono::steady_clock;
    for (int w = 0; w < 2; ++w) fn();
    std::vector<double> t(reps);
    for (auto& v : t) {
        const auto start = clock::now();
        fn();
        v = std::chrono::duration<double>(clock::now() - start).count();
    }
    std::sort(t.begin(), t.end());
    const double median = reps % 2 == 1 ? t[reps / 2] : 0.5 * (t[reps / 2 - 1] + t[reps / 2]);
    return {std::move(name), median, t.front(), reps};
}

}  // namespace

BenchReport run_bench(const ExperimentConfig& cfg) {
    validate(cfg);
    BenchReport report;
    report.analytic = complexity_model(cfg.ofdm, cfg.taps_per_branch);

    const DataGrid data = generate_data(cfg.ofdm, derive_seed(cfg.seed, SeedStream::data));
    EchoFrame echo = synthesize_echo(modulate(data, cfg.ofdm), cfg.targets, cfg.ofdm);
    if (cfg.noise_mode == NoiseMode::time)
        echo = add_awgn(echo, cfg.snr_db, derive_seed(cfg.seed, SeedStream::time_noise));
    const EchoGrid grid = preprocess(echo, data, cfg.ofdm);
    const DecimatorSpec spec = design_filter(cfg.taps_per_branch, cfg.ofdm);
    const DecimatedGrid dgrid = decimate_grid(grid, spec);
    const std::size_t reps = cfg.bench_repetitions;
    const std::size_t peaks = std::max<std::size_t>(1, cfg.peaks_requested());

    // Results are folded into a sink so the optimizer keeps every stage.
    double sink = 0.0;
    report.stages.push_back(time_stage("fos_rdm_fft", reps, [&] {
        sink += std::abs(fos_rdm(grid, cfg.ofdm, cfg.range_window, cfg.doppler_window).values(0, 0));
    }));
    report.stages.push_back(time_stage("dfos_rdm_fft", reps, [&] {
        sink += std::abs(dfos_rdm(dgrid, spec, cfg.ofdm, cfg.range_window, cfg.doppler_window).values(0, 0));
    }));
    report.stages.push_back(time_stage("decimation_transform", reps, [&] {
        sink += std::abs(decimate_grid(grid, spec, BranchFiltering::transform).samples(0, 0));
    }));
    report.stages.push_back(time_stage("decimation_direct", reps, [&] {
        sink += std::abs(decimate_grid(grid, spec, BranchFiltering::direct).samples(0, 0));
    }));
    report.stages.push_back(time_stage("pipeline_fos", reps, [&] {
        const Rdm rdm = fos_rdm(preprocess(echo, data, cfg.ofdm), cfg.ofdm, cfg.range_window,
                                cfg.doppler_window);
        sink += estimate_fos(rdm, cfg.ofdm, peaks, cfg.peak_guard).front().peak_mag;
    }));
    report.stages.push_back(time_stage("pipeline_dfos", reps, [&] {
        const DecimatedGrid d = decimate_grid(preprocess(echo, data, cfg.ofdm), spec);
        const Rdm rdm = dfos_rdm(d, spec, cfg.ofdm, cfg.range_window, cfg.doppler_window);
        sink += estimate_dfos(rdm, cfg.ofdm, peaks, cfg.peak_guard).front().peak_mag;
    }));
    if (!std::isfinite(sink)) throw std::runtime_error("bench: non-finite result");
    return report;
}

std::string bench_summary(const BenchReport& report, const ExperimentConfig& cfg) {
    const auto& a = report.analytic;
    std::ostringstream os;
    os << "Complexity model (N=" << cfg.ofdm.n_subcarriers << ", Q=" << cfg.ofdm.cp_len
       << ", M=" << cfg.ofdm.n_symbols << ", D=" << cfg.ofdm.decimation_factor()
       << ", P=" << cfg.taps_per_branch << ", Q~=" << a.fft_size << ")\n"
       << "  FOS 2-D FFT          " << a.fos_rdm_ops << "\n"
       << "  DFOS 2-D FFT         " << a.dfos_rdm_ops << "\n"
       << "  decimation, once     " << a.decimation_ops_once << "\n"
       << "  decimation, per sym  " << a.decimation_ops_per_frame << "\n"
       << "  ratio (once)         " << format_number(a.ratio_once_accounting) << "\n"
       << "  ratio (per symbol)   " << format_number(a.ratio_per_symbol_accounting) << "\n"
       << "Wall clock, median of " << cfg.bench_repetitions << " runs\n";
    for (const auto& s : report.stages)
        os << "  " << s.stage << std::string(24 - std::min<std::size_t>(23, s.stage.size()), ' ')
           << format_number(s.median_s * 1e3) << " ms\n";
    const double ratio = report.stage("dfos_rdm_fft").median_s / report.stage("fos_rdm_fft").median_s;
    os << "  DFOS/FOS 2-D FFT time ratio " << format_number(ratio) << "\n";
    return os.str();
}

}  // namespace ofdmsense
