#pragma once

#include <cstddef>

namespace ofdmsense {

inline constexpr double kSpeedOfLight = 3.0e8;

/**
 * System constants of a CP-OFDM sensing frame.
 *
 * Defaults describe a 24 GHz system with 1024 sub-carriers, 11 us symbols
 * and a 128-sample cyclic prefix (decimation factor 8).
 */
struct OfdmConfig {
    std::size_t n_subcarriers = 1024;   // N
    std::size_t cp_len = 128;           // Q
    double symbol_duration_s = 11e-6;   // T
    double carrier_freq_hz = 24e9;      // f_c
    std::size_t n_symbols = 256;        // M
    double propagation_speed_mps = kSpeedOfLight;

    // Throws std::invalid_argument naming the first violated constraint.
    void validate() const;

    double sample_period_s() const { return symbol_duration_s / static_cast<double>(n_subcarriers); }
    double bandwidth_hz() const { return static_cast<double>(n_subcarriers) / symbol_duration_s; }
    // Duration of one CP-OFDM symbol, T + Q*T_s.
    double cp_symbol_duration_s() const {
        return symbol_duration_s + static_cast<double>(cp_len) * sample_period_s();
    }
    std::size_t decimation_factor() const { return n_subcarriers / cp_len; }
    double wavelength_m() const { return propagation_speed_mps / carrier_freq_hz; }
    std::size_t frame_len() const { return n_subcarriers + cp_len; }
    // Range spanned by one sample of round-trip delay, c*T_s/2.
    double range_per_sample_m() const { return propagation_speed_mps * sample_period_s() / 2.0; }

    bool operator==(const OfdmConfig&) const = default;
};

bool is_power_of_two(std::size_t v);

}  // namespace ofdmsense
