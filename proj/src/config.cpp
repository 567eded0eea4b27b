#include "ofdm_sensing/config.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ofdmsense {

bool is_power_of_two(std::size_t v) { return std::has_single_bit(v); }

void OfdmConfig::validate() const {
    if (!is_power_of_two(n_subcarriers))
        throw std::invalid_argument("n_subcarriers must be a power of two, got " +
                                    std::to_string(n_subcarriers));
    if (!is_power_of_two(cp_len))
        throw std::invalid_argument("cp_len must be a power of two, got " + std::to_string(cp_len));
    if (cp_len >= n_subcarriers)
        throw std::invalid_argument("cp_len must be smaller than n_subcarriers");
    if (n_symbols < 1) throw std::invalid_argument("n_symbols must be at least 1");
    if (!(symbol_duration_s > 0.0) || !std::isfinite(symbol_duration_s))
        throw std::invalid_argument("symbol_duration_s must be positive");
    if (!(carrier_freq_hz > 0.0) || !std::isfinite(carrier_freq_hz))
        throw std::invalid_argument("carrier_freq_hz must be positive");
    if (!(propagation_speed_mps > 0.0) || !std::isfinite(propagation_speed_mps))
        throw std::invalid_argument("propagation_speed_mps must be positive");
}

}  // namespace ofdmsense
