#include "ofdm_sensing/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>


namespace ofdmsense {
namespace {

// Dynamic ranges beyond this are rounding noise, not a noise floor.
constexpr double kNoiselessRatio = 1e-15;

std::size_t cyclic_distance(std::size_t a, std::size_t b, std::size_t n) {
    const std::size_t d = a > b ? a - b : b - a;
    return std::min(d, n - d);
}

std::size_t argmax_bin(const Rdm& rdm) {
    const auto flat = rdm.values.flat();
    std::size_t best = 0;
    double best_p = -1.0;
    for (std::size_t i = 0; i < flat.size(); ++i) {
        const double p = std::norm(flat[i]);
        if (p > best_p) {
            best_p = p;
            best = i;
        }
    }
    return best;
}

double floor_outside(const Rdm& rdm, std::size_t peak_b, std::size_t peak_k, NoiseGuard guard) {
    const std::size_t rows = rdm.doppler_bins();
    const std::size_t cols = rdm.range_bins();
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t b = 0; b < rows; ++b) {
        const bool doppler_near = cyclic_distance(b, peak_b, rows) <= guard.doppler_bins;
        for (std::size_t k = 0; k < cols; ++k) {
            if (doppler_near && cyclic_distance(k, peak_k, cols) <= guard.range_bins) continue;
            acc += std::norm(rdm.values(b, k));
            ++count;
        }
    }
    if (count == 0) throw std::invalid_argument("rdm_snr: guard region covers the whole map");
    return acc / static_cast<double>(count);
}

std::uint64_t xlog2x(std::uint64_t x) {
    if (std::has_single_bit(x)) return x * static_cast<std::uint64_t>(std::bit_width(x) - 1);
    const double v = static_cast<double>(x);
    return static_cast<std::uint64_t>(std::llround(v * std::log2(v)));
}

}  // namespace

double rdm_snr(const Rdm& rdm, NoiseGuard guard) {
    if (rdm.values.size() == 0) throw std::invalid_argument("rdm_snr: empty map");
    const std::size_t peak = argmax_bin(rdm);
    const std::size_t cols = rdm.range_bins();
    const double peak_p = std::norm(rdm.values.flat()[peak]);
    const double floor = floor_outside(rdm, peak / cols, peak % cols, guard);
    if (!(floor > peak_p * kNoiselessRatio))
        throw std::runtime_error("rdm_snr: noise floor is numerically zero (noiseless map)");
    return 10.0 * std::log10(peak_p / floor);
}

double split_rdm_snr(const Rdm& signal, const Rdm& noise, NoiseGuard guard) {
    if (signal.values.rows() != noise.values.rows() || signal.values.cols() != noise.values.cols())
        throw std::invalid_argument("split_rdm_snr: maps differ in shape");
    const std::size_t peak = argmax_bin(signal);
    const std::size_t cols = signal.range_bins();
    const double peak_p = std::norm(signal.values.flat()[peak]);
    if (!(peak_p > 0.0)) throw std::runtime_error("split_rdm_snr: signal map is all zero");
    const double floor = floor_outside(noise, peak / cols, peak % cols, guard);
    if (!(floor > peak_p * kNoiselessRatio))
        throw std::runtime_error("rdm_snr: noise floor is numerically zero (noiseless map)");
    return 10.0 * std::log10(peak_p / floor);
}

ComplexityReport complexity_model(const OfdmConfig& config, std::size_t taps_per_branch) {
    config.validate();
    if (taps_per_branch < 1 || taps_per_branch > config.cp_len)
        throw std::invalid_argument("complexity_model: P must lie in [1, Q]");
    const std::uint64_t m = config.n_symbols;
    const std::uint64_t n = config.n_subcarriers;
    const std::uint64_t q = config.cp_len;
    const std::uint64_t d = config.decimation_factor();
    const std::uint64_t nfft = std::bit_ceil(static_cast<std::uint64_t>(taps_per_branch + q - 1));

    ComplexityReport r;
    r.fft_size = nfft;
    r.fos_rdm_ops = xlog2x(m * n);
    r.dfos_rdm_ops = xlog2x(m * q);
    r.decimation_ops_once = 2 * d * xlog2x(nfft);
    r.decimation_ops_per_frame = m * r.decimation_ops_once;
    r.ratio_once_accounting = static_cast<double>(r.fos_rdm_ops) /
                               static_cast<double>(r.dfos_rdm_ops + r.decimation_ops_once);
    r.ratio_per_symbol_accounting = static_cast<double>(r.fos_rdm_ops) /
                              static_cast<double>(r.dfos_rdm_ops + r.decimation_ops_per_frame);
    return r;
}

double mainlobe_width(std::span<const double> cut_db, std::size_t peak_bin, double axis_scale) {
    const std::size_t n = cut_db.size();
    if (peak_bin >= n) throw std::out_of_range("mainlobe_width: peak bin outside the cut");
    const double level = cut_db[peak_bin] - 3.0;

    // Fractional distance from the peak to the -3 dB crossing walking in `dir`.
    auto crossing = [&](int dir) {
        double prev = cut_db[peak_bin];
        for (std::size_t step = 1; step <= n / 2; ++step) {
            const long idx = (static_cast<long>(peak_bin) + dir * static_cast<long>(step)) %
                             static_cast<long>(n);
            const double cur = cut_db[static_cast<std::size_t>(idx < 0 ? idx + static_cast<long>(n) : idx)];
            if (cur <= level) return static_cast<double>(step - 1) + (prev - level) / (prev - cur);
            prev = cur;
        }
        throw std::runtime_error("mainlobe_width: no -3 dB crossing found");
    };
    return (crossing(-1) + crossing(+1)) * axis_scale;
}

namespace {

double to_db(cplx v) {
    const double mag = std::abs(v);
    return mag > 0.0 ? 20.0 * std::log10(mag) : -300.0;
}

}  // namespace

std::vector<double> range_cut_db(const Rdm& rdm, std::size_t doppler_bin) {
    if (doppler_bin >= rdm.doppler_bins()) throw std::out_of_range("range_cut_db: bad Doppler bin");
    std::vector<double> out(rdm.range_bins());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = to_db(rdm.values(doppler_bin, k));
    return out;
}

std::vector<double> doppler_cut_db(const Rdm& rdm, std::size_t range_bin) {
    if (range_bin >= rdm.range_bins()) throw std::out_of_range("doppler_cut_db: bad range bin");
    std::vector<double> out(rdm.doppler_bins());
    for (std::size_t b = 0; b < out.size(); ++b) out[b] = to_db(rdm.values(b, range_bin));
    return out;
}

SnrReport summarize_snr(std::span<const double> snr_db, double gamma_db) {
    SnrReport r;
    r.gamma_db = gamma_db;
    r.trials = snr_db.size();
    if (snr_db.empty()) return r;
    double sum = 0.0;
    for (double v : snr_db) sum += v;
    r.snr_rdm_db = sum / static_cast<double>(snr_db.size());
    double var = 0.0;
    for (double v : snr_db) var += (v - r.snr_rdm_db) * (v - r.snr_rdm_db);
    r.std_db = snr_db.size() > 1 ? std::sqrt(var / static_cast<double>(snr_db.size() - 1)) : 0.0;
    r.gain_db = r.snr_rdm_db - gamma_db;
    return r;
}

}  // namespace ofdmsense
