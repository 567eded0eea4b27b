#pragma once

#include <cstddef>
#include <vector>

#include "ofdm_sensing/config.hpp"
#include "ofdm_sensing/decimator.hpp"
#include "ofdm_sensing/fos.hpp"

namespace ofdmsense {

// Range-Doppler map of the decimated echo: the Q-P+1 valid samples are
// windowed, zero-padded to Q and transformed with a Q-point DFT, then an
// M-point DFT runs along symbols. No normalization.
Rdm dfos_rdm(const DecimatedGrid& dgrid, const DecimatorSpec& spec, const OfdmConfig& config,
             WindowKind range_window, WindowKind doppler_window);

// Delay recovered from a DFOS range bin: Q/2 - k for k in [0, Q/2],
// 3Q/2 - k for k in [Q/2+1, Q-1].
std::size_t recover_kr(std::size_t bin, std::size_t cp_len);

// find_detections on a DFOS map; range is recover_kr(k) * c T_s / 2 and
// velocity uses the same mapping as FOS.
std::vector<Detection> estimate_dfos(const Rdm& rdm, const OfdmConfig& config,
                                     std::size_t n_peaks, PeakGuard guard = {});

}  // namespace ofdmsense
