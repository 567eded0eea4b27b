#include "ofdm_sensing/fos.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

#include "fft.hpp"
#include "ofdm_sensing/dfos.hpp"

namespace ofdmsense {

WindowKind parse_window_kind(std::string_view name) {
    if (name == "rectangular") return WindowKind::rectangular;
    if (name == "hamming") return WindowKind::hamming;
    throw std::invalid_argument("unknown window kind '" + std::string(name) + "'");
}

std::string_view to_string(WindowKind kind) {
    return kind == WindowKind::hamming ? "hamming" : "rectangular";
}

std::string_view to_string(RdmMethod method) { return method == RdmMethod::fos ? "fos" : "dfos"; }

std::vector<double> make_window(WindowKind kind, std::size_t length) {
    if (length < 1) throw std::invalid_argument("make_window: length must be at least 1");
    std::vector<double> w(length, 1.0);
    if (kind == WindowKind::hamming && length > 1) {
        const double denom = static_cast<double>(length - 1);
        for (std::size_t n = 0; n < length; ++n)
            w[n] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) / denom);
    }
    return w;
}

long signed_doppler_bin(std::size_t bin, std::size_t n_bins) {
    if (bin >= n_bins) throw std::out_of_range("Doppler bin outside the map");
    const auto b = static_cast<long>(bin);
    return 2 * bin <= n_bins ? b : b - static_cast<long>(n_bins);
}

long Rdm::signed_doppler_bin(std::size_t bin) const {
    return ofdmsense::signed_doppler_bin(bin, doppler_bins());
}

double Rdm::velocity_of_bin(std::size_t bin) const {
    return static_cast<double>(signed_doppler_bin(bin)) * velocity_per_bin_mps;
}

std::size_t Rdm::delay_of_bin(std::size_t bin) const {
    if (bin >= range_bins()) throw std::out_of_range("range bin outside the map");
    if (method == RdmMethod::dfos) return recover_kr(bin, cp_len);
    return (n_subcarriers - bin) % n_subcarriers;
}

std::size_t Rdm::bin_of_delay(std::size_t delay) const {
    if (method == RdmMethod::dfos) return (cp_len / 2 + cp_len - delay % cp_len) % cp_len;
    return (n_subcarriers - delay % n_subcarriers) % n_subcarriers;
}

double Rdm::range_of_bin(std::size_t bin) const {
    return static_cast<double>(delay_of_bin(bin)) * range_per_delay_m;
}

Rdm fos_rdm(const EchoGrid& grid, const OfdmConfig& config, WindowKind range_window,
            WindowKind doppler_window) {
    config.validate();
    const std::size_t n = config.n_subcarriers;
    const std::size_t m_count = config.n_symbols;
    if (grid.samples.rows() != m_count || grid.samples.cols() != n)
        throw std::invalid_argument("fos_rdm: echo grid does not match config dimensions");

    const auto w_range = make_window(range_window, n);
    const auto w_doppler = make_window(doppler_window, m_count);

    Rdm rdm;
    rdm.method = RdmMethod::fos;
    rdm.range_window = range_window;
    rdm.doppler_window = doppler_window;
    rdm.n_subcarriers = n;
    rdm.cp_len = config.cp_len;
    rdm.range_per_delay_m = config.range_per_sample_m();
    rdm.velocity_per_bin_mps =
        config.propagation_speed_mps /
        (2.0 * static_cast<double>(m_count) * config.carrier_freq_hz * config.cp_symbol_duration_s());

    rdm.values = grid.samples;
    for (std::size_t m = 0; m < m_count; ++m) {
        auto row = rdm.values.row(m);
        for (std::size_t k = 0; k < n; ++k) row[k] *= w_doppler[m] * w_range[k];
    }
    detail::fft_rows(rdm.values, detail::FftDirection::forward);
    detail::fft_cols(rdm.values, detail::FftDirection::forward);
    return rdm;
}

namespace {

std::size_t cyclic_distance(std::size_t a, std::size_t b, std::size_t n) {
    const std::size_t d = a > b ? a - b : b - a;
    return std::min(d, n - d);
}

std::size_t wrap(std::size_t i, int delta, std::size_t n) {
    const auto len = static_cast<long>(n);
    return static_cast<std::size_t>((static_cast<long>(i) + delta % len + len) % len);
}

}  // namespace

std::vector<Detection> find_detections(const Rdm& rdm, std::size_t n_peaks, PeakGuard guard) {
    if (n_peaks < 1) throw std::invalid_argument("find_detections: n_peaks must be at least 1");
    const std::size_t rows = rdm.doppler_bins();
    const std::size_t cols = rdm.range_bins();

    std::vector<double> power(rows * cols);
    for (std::size_t i = 0; i < power.size(); ++i) power[i] = std::norm(rdm.values.flat()[i]);

    // (power, doppler, range), strongest first, ties by position.
    std::vector<std::tuple<double, std::size_t, std::size_t>> maxima;
    for (std::size_t b = 0; b < rows; ++b) {
        for (std::size_t k = 0; k < cols; ++k) {
            const double p = power[b * cols + k];
            if (!(p > 0.0)) continue;
            bool is_max = true;
            for (int db = -1; db <= 1 && is_max; ++db) {
                for (int dk = -1; dk <= 1; ++dk) {
                    const std::size_t nb = wrap(b, db, rows);
                    const std::size_t nk = wrap(k, dk, cols);
                    if (nb == b && nk == k) continue;
                    if (power[nb * cols + nk] > p) {
                        is_max = false;
                        break;
                    }
                }
            }
            if (is_max) maxima.emplace_back(p, b, k);
        }
    }
    std::sort(maxima.begin(), maxima.end(), [](const auto& a, const auto& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
        return std::tie(std::get<1>(a), std::get<2>(a)) < std::tie(std::get<1>(b), std::get<2>(b));
    });

    std::vector<Detection> out;
    for (const auto& [p, b, k] : maxima) {
        if (out.size() == n_peaks) break;
        const bool guarded = std::any_of(out.begin(), out.end(), [&](const Detection& d) {
            return cyclic_distance(d.doppler_bin, b, rows) <= guard.doppler_bins &&
                   cyclic_distance(d.range_bin, k, cols) <= guard.range_bins;
        });
        if (guarded) continue;
        Detection det;
        det.range_bin = k;
        det.doppler_bin = b;
        det.doppler_bin_signed = rdm.signed_doppler_bin(b);
        det.range_m = rdm.range_of_bin(k);
        det.velocity_mps = rdm.velocity_of_bin(b);
        det.peak_mag = std::sqrt(p);
        out.push_back(det);
    }
    if (out.size() < n_peaks)
        throw std::runtime_error("find_detections: requested " + std::to_string(n_peaks) +
                                 " peaks but only " + std::to_string(out.size()) +
                                 " separated local maxima exist");
    return out;
}

std::vector<Detection> estimate_fos(const Rdm& rdm, const OfdmConfig& config, std::size_t n_peaks,
                                    PeakGuard guard) {
    if (rdm.method != RdmMethod::fos)
        throw std::invalid_argument("estimate_fos: map was not produced by fos_rdm");
    if (rdm.range_bins() != config.n_subcarriers || rdm.doppler_bins() != config.n_symbols)
        throw std::invalid_argument("estimate_fos: map does not match config dimensions");
    return find_detections(rdm, n_peaks, guard);
}

AmbiguityLimits ambiguity_limits(const OfdmConfig& config) {
    const double c = config.propagation_speed_mps;
    const double b = config.bandwidth_hz();
    const double t_sym = config.cp_symbol_duration_s();
    const double lambda = config.wavelength_m();
    AmbiguityLimits lim;
    lim.max_range_m = c * static_cast<double>(config.cp_len) / (2.0 * b);
    lim.max_velocity_mps = lambda / (4.0 * t_sym);
    lim.range_resolution_m = c / (2.0 * b);
    lim.velocity_resolution_mps = lambda / (2.0 * t_sym * static_cast<double>(config.n_symbols));
    return lim;
}

}  // namespace ofdmsense
