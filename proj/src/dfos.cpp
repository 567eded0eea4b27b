#include "ofdm_sensing/dfos.hpp"

#include <stdexcept>
#include <string>

#include "fft.hpp"

namespace ofdmsense {

Rdm dfos_rdm(const DecimatedGrid& dgrid, const DecimatorSpec& spec, const OfdmConfig& config,
             WindowKind range_window, WindowKind doppler_window) {
    config.validate();
    const std::size_t q_count = config.cp_len;
    const std::size_t m_count = config.n_symbols;
    const std::size_t valid = spec.output_len();
    if (spec.cp_len != q_count || spec.n_subcarriers != config.n_subcarriers)
        throw std::invalid_argument("dfos_rdm: decimator spec does not match config");
    if (dgrid.samples.rows() != m_count || dgrid.samples.cols() != valid)
        throw std::invalid_argument("dfos_rdm: decimated grid must be M x (Q-P+1)");

    const auto w_range = make_window(range_window, valid);
    const auto w_doppler = make_window(doppler_window, m_count);

    Rdm rdm;
    rdm.method = RdmMethod::dfos;
    rdm.range_window = range_window;
    rdm.doppler_window = doppler_window;
    rdm.n_subcarriers = config.n_subcarriers;
    rdm.cp_len = q_count;
    rdm.range_per_delay_m = config.range_per_sample_m();
    rdm.velocity_per_bin_mps =
        config.propagation_speed_mps /
        (2.0 * static_cast<double>(m_count) * config.carrier_freq_hz * config.cp_symbol_duration_s());

    rdm.values = CMatrix(m_count, q_count);
    for (std::size_t m = 0; m < m_count; ++m) {
        auto src = dgrid.samples.row(m);
        auto dst = rdm.values.row(m);
        for (std::size_t n = 0; n < valid; ++n) dst[n] = src[n] * (w_range[n] * w_doppler[m]);
    }
    detail::fft_rows(rdm.values, detail::FftDirection::forward);
    detail::fft_cols(rdm.values, detail::FftDirection::forward);
    return rdm;
}

std::size_t recover_kr(std::size_t bin, std::size_t cp_len) {
    if (bin >= cp_len)
        throw std::out_of_range("recover_kr: bin " + std::to_string(bin) + " outside [0, " +
                                std::to_string(cp_len - 1) + "]");
    const std::size_t half = cp_len / 2;
    return bin <= half ? half - bin : 3 * half - bin;
}

std::vector<Detection> estimate_dfos(const Rdm& rdm, const OfdmConfig& config,
                                     std::size_t n_peaks, PeakGuard guard) {
    if (rdm.method != RdmMethod::dfos)
        throw std::invalid_argument("estimate_dfos: map was not produced by dfos_rdm");
    if (rdm.range_bins() != config.cp_len || rdm.doppler_bins() != config.n_symbols)
        throw std::invalid_argument("estimate_dfos: map does not match config dimensions");
    return find_detections(rdm, n_peaks, guard);
}

}  // namespace ofdmsense
