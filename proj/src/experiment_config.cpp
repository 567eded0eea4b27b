#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "ofdm_sensing/csv.hpp"
#include "ofdm_sensing/experiment.hpp"

namespace ofdmsense {

using nlohmann::json;

std::string_view to_string(NoiseMode mode) {
    switch (mode) {
        case NoiseMode::none: return "none";
        case NoiseMode::time: return "time";
        case NoiseMode::grid: return "grid";
    }
    return "none";
}

NoiseMode parse_noise_mode(std::string_view name) {
    if (name == "none") return NoiseMode::none;
    if (name == "time") return NoiseMode::time;
    if (name == "grid") return NoiseMode::grid;
    throw std::invalid_argument("unknown noise mode '" + std::string(name) + "' (none, time, grid)");
}

MethodSelection parse_method(std::string_view name) {
    if (name == "fos") return MethodSelection::fos;
    if (name == "dfos") return MethodSelection::dfos;
    if (name == "both") return MethodSelection::both;
    throw std::invalid_argument("unknown method '" + std::string(name) + "' (fos, dfos, both)");
}

ExperimentConfig monte_carlo_defaults() {
    ExperimentConfig cfg;
    cfg.ofdm.n_symbols = 1;
    cfg.targets.clear();
    cfg.range_window = WindowKind::rectangular;
    cfg.doppler_window = WindowKind::rectangular;
    cfg.noise_mode = NoiseMode::grid;
    cfg.snr_db = -10.0;
    return cfg;
}

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& msg) {
    throw ConfigError(key, key + ": " + msg);
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
    try {
        cfg.ofdm.validate();
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        const std::string key = msg.substr(0, msg.find(' '));
        bad(key, msg.substr(msg.find(' ') + 1));
    }
    const OfdmConfig& o = cfg.ofdm;
    for (std::size_t i = 0; i < cfg.targets.size(); ++i) {
        const Target& t = cfg.targets[i];
        try {
            delay_samples(t.range_m, o, DelayCheck::strict);
        } catch (const std::invalid_argument& e) {
            bad("target_range_m", "target " + std::to_string(i) + ": " + e.what());
        }
        if (!std::isfinite(t.velocity_mps))
            bad("target_velocity_mps", "target " + std::to_string(i) + " is not finite");
        if (!std::isfinite(t.reflection.real()) || !std::isfinite(t.reflection.imag()))
            bad("target_reflection_re", "target " + std::to_string(i) + " is not finite");
    }
    auto check_p = [&](std::size_t p, const std::string& key) {
        if (p < 1 || p * o.decimation_factor() > o.n_subcarriers)
            bad(key, "P = " + std::to_string(p) + " must satisfy 1 <= P and P*D <= N");
    };
    check_p(cfg.taps_per_branch, "taps_per_branch");
    if (cfg.p_list.empty()) bad("p_list", "must not be empty");
    for (std::size_t p : cfg.p_list) check_p(p, "p_list");
    if (cfg.gamma_list_db.empty()) bad("gamma_list_db", "must not be empty");
    for (double g : cfg.gamma_list_db)
        if (!std::isfinite(g)) bad("gamma_list_db", "entries must be finite");
    if (!std::isfinite(cfg.snr_db)) bad("snr_db", "must be finite");
    if (cfg.trials < 1) bad("trials", "must be at least 1");
    if (cfg.bench_repetitions < 1) bad("bench_repetitions", "must be at least 1");
    if (!(cfg.random_range_min_m >= 0.0) || !(cfg.random_range_max_m >= cfg.random_range_min_m))
        bad("random_range_min_m", "need 0 <= random_range_min_m <= random_range_max_m");
    try {
        delay_samples(cfg.random_range_max_m, o, DelayCheck::strict);
    } catch (const std::invalid_argument& e) {
        bad("random_range_max_m", e.what());
    }
    if (!std::isfinite(cfg.random_velocity_min_mps) || !std::isfinite(cfg.random_velocity_max_mps) ||
        cfg.random_velocity_min_mps > cfg.random_velocity_max_mps)
        bad("random_velocity_min_mps",
                          "need finite random_velocity_min_mps <= random_velocity_max_mps");
    if (!std::isfinite(cfg.range_cut_velocity_mps))
        bad("range_cut_velocity_mps", "must be finite");
    if (!(cfg.velocity_cut_range_m >= 0.0) || !std::isfinite(cfg.velocity_cut_range_m))
        bad("velocity_cut_range_m", "must be finite and non-negative");
}

namespace {

const std::set<std::string> kKnownKeys = {
    "n_subcarriers", "cp_len", "symbol_duration_s", "carrier_freq_hz", "n_symbols",
    "propagation_speed_mps", "target_range_m", "target_velocity_mps", "target_reflection_re",
    "target_reflection_im", "taps_per_branch", "range_window", "doppler_window", "noise_mode",
    "snr_db", "trials", "seed", "output_dir", "n_peaks", "peak_guard_range_bins",
    "peak_guard_doppler_bins", "snr_guard_range_bins", "snr_guard_doppler_bins", "p_list",
    "gamma_list_db", "random_range_min_m", "random_range_max_m", "random_velocity_min_mps",
    "random_velocity_max_mps", "range_cut_velocity_mps", "velocity_cut_range_m",
    "bench_repetitions"};

// 1-based line of the first occurrence of "key", 0 when absent.
std::size_t line_of(std::string_view text, const std::string& key) {
    if (key.empty()) return 0;
    const auto pos = text.find('"' + key + '"');
    if (pos == std::string_view::npos) return 0;
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

std::string where(std::string_view text, const std::string& key) {
    const std::size_t line = line_of(text, key);
    return line != 0 ? "line " + std::to_string(line) + ": " : "";
}

[[noreturn]] void fail_at(std::string_view text, const std::string& key, const std::string& msg) {
    throw ConfigError(key, where(text, key) + key + ": " + msg);
}

template <typename T>
void read(const json& j, std::string_view text, const char* key, T& dst) {
    if (!j.contains(key)) return;
    try {
        dst = j.at(key).get<T>();
    } catch (const json::exception& e) {
        fail_at(text, key, std::string("wrong type: ") + e.what());
    }
}

template <typename T>
void read_unsigned(const json& j, std::string_view text, const char* key, T& dst) {
    if (!j.contains(key)) return;
    const json& v = j.at(key);
    if (!v.is_number_unsigned()) fail_at(text, key, "expected a non-negative integer");
    dst = v.get<T>();
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("", "top level must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (!kKnownKeys.contains(key)) fail_at(text, key, "unknown key");

    ExperimentConfig cfg;
    read_unsigned(j, text, "n_subcarriers", cfg.ofdm.n_subcarriers);
    read_unsigned(j, text, "cp_len", cfg.ofdm.cp_len);
    read(j, text, "symbol_duration_s", cfg.ofdm.symbol_duration_s);
    read(j, text, "carrier_freq_hz", cfg.ofdm.carrier_freq_hz);
    read_unsigned(j, text, "n_symbols", cfg.ofdm.n_symbols);
    read(j, text, "propagation_speed_mps", cfg.ofdm.propagation_speed_mps);

    if (j.contains("target_range_m") || j.contains("target_velocity_mps")) {
        std::vector<double> ranges;
        std::vector<double> velocities;
        read(j, text, "target_range_m", ranges);
        read(j, text, "target_velocity_mps", velocities);
        if (ranges.size() != velocities.size())
            fail_at(text, "target_velocity_mps", "must have as many entries as target_range_m");
        std::vector<double> re(ranges.size(), 1.0);
        std::vector<double> im(ranges.size(), 0.0);
        read(j, text, "target_reflection_re", re);
        read(j, text, "target_reflection_im", im);
        if (re.size() != ranges.size()) fail_at(text, "target_reflection_re", "length must match target_range_m");
        if (im.size() != ranges.size()) fail_at(text, "target_reflection_im", "length must match target_range_m");
        cfg.targets.clear();
        for (std::size_t i = 0; i < ranges.size(); ++i)
            cfg.targets.push_back({ranges[i], velocities[i], {re[i], im[i]}});
    } else if (j.contains("target_reflection_re") || j.contains("target_reflection_im")) {
        fail_at(text, j.contains("target_reflection_re") ? "target_reflection_re" : "target_reflection_im",
                "given without target_range_m");
    }

    read_unsigned(j, text, "taps_per_branch", cfg.taps_per_branch);
    auto read_enum = [&](const char* key, auto parse, auto& dst) {
        if (!j.contains(key)) return;
        if (!j.at(key).is_string()) fail_at(text, key, "expected a string");
        try {
            dst = parse(j.at(key).get<std::string>());
        } catch (const std::invalid_argument& e) {
            fail_at(text, key, e.what());
        }
    };
    read_enum("range_window", parse_window_kind, cfg.range_window);
    read_enum("doppler_window", parse_window_kind, cfg.doppler_window);
    read_enum("noise_mode", parse_noise_mode, cfg.noise_mode);
    read(j, text, "snr_db", cfg.snr_db);
    read_unsigned(j, text, "trials", cfg.trials);
    read_unsigned(j, text, "seed", cfg.seed);
    read(j, text, "output_dir", cfg.output_dir);
    read_unsigned(j, text, "n_peaks", cfg.n_peaks);
    read_unsigned(j, text, "peak_guard_range_bins", cfg.peak_guard.range_bins);
    read_unsigned(j, text, "peak_guard_doppler_bins", cfg.peak_guard.doppler_bins);
    read_unsigned(j, text, "snr_guard_range_bins", cfg.snr_guard.range_bins);
    read_unsigned(j, text, "snr_guard_doppler_bins", cfg.snr_guard.doppler_bins);
    read(j, text, "p_list", cfg.p_list);
    read(j, text, "gamma_list_db", cfg.gamma_list_db);
    read(j, text, "random_range_min_m", cfg.random_range_min_m);
    read(j, text, "random_range_max_m", cfg.random_range_max_m);
    read(j, text, "random_velocity_min_mps", cfg.random_velocity_min_mps);
    read(j, text, "random_velocity_max_mps", cfg.random_velocity_max_mps);
    read(j, text, "range_cut_velocity_mps", cfg.range_cut_velocity_mps);
    read(j, text, "velocity_cut_range_m", cfg.velocity_cut_range_m);
    read_unsigned(j, text, "bench_repetitions", cfg.bench_repetitions);

    try {
        validate(cfg);
    } catch (const ConfigError& e) {
        throw ConfigError(e.key(), where(text, e.key()) + e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const std::runtime_error& e) {
        throw ConfigError("", e.what());
    }
    return parse_config(text);
}

std::string serialize_config(const ExperimentConfig& cfg) {
    json j;
    j["n_subcarriers"] = cfg.ofdm.n_subcarriers;
    j["cp_len"] = cfg.ofdm.cp_len;
    j["symbol_duration_s"] = cfg.ofdm.symbol_duration_s;
    j["carrier_freq_hz"] = cfg.ofdm.carrier_freq_hz;
    j["n_symbols"] = cfg.ofdm.n_symbols;
    j["propagation_speed_mps"] = cfg.ofdm.propagation_speed_mps;
    std::vector<double> ranges, velocities, re, im;
    for (const auto& t : cfg.targets) {
        ranges.push_back(t.range_m);
        velocities.push_back(t.velocity_mps);
        re.push_back(t.reflection.real());
        im.push_back(t.reflection.imag());
    }
    j["target_range_m"] = ranges;
    j["target_velocity_mps"] = velocities;
    j["target_reflection_re"] = re;
    j["target_reflection_im"] = im;
    j["taps_per_branch"] = cfg.taps_per_branch;
    j["range_window"] = std::string(to_string(cfg.range_window));
    j["doppler_window"] = std::string(to_string(cfg.doppler_window));
    j["noise_mode"] = std::string(to_string(cfg.noise_mode));
    j["snr_db"] = cfg.snr_db;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["output_dir"] = cfg.output_dir;
    j["n_peaks"] = cfg.n_peaks;
    j["peak_guard_range_bins"] = cfg.peak_guard.range_bins;
    j["peak_guard_doppler_bins"] = cfg.peak_guard.doppler_bins;
    j["snr_guard_range_bins"] = cfg.snr_guard.range_bins;
    j["snr_guard_doppler_bins"] = cfg.snr_guard.doppler_bins;
    j["p_list"] = cfg.p_list;
    j["gamma_list_db"] = cfg.gamma_list_db;
    j["random_range_min_m"] = cfg.random_range_min_m;
    j["random_range_max_m"] = cfg.random_range_max_m;
    j["random_velocity_min_mps"] = cfg.random_velocity_min_mps;
    j["random_velocity_max_mps"] = cfg.random_velocity_max_mps;
    j["range_cut_velocity_mps"] = cfg.range_cut_velocity_mps;
    j["velocity_cut_range_m"] = cfg.velocity_cut_range_m;
    j["bench_repetitions"] = cfg.bench_repetitions;
    return j.dump(2) + '\n';
}

}  // namespace ofdmsense
