#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "ofdm_sensing/channel.hpp"
#include "ofdm_sensing/cmatrix.hpp"
#include "ofdm_sensing/config.hpp"
#include "ofdm_sensing/waveform.hpp"

namespace ofdmsense {

// Pre-processed echo y_m(n): data-stripped per-symbol spectrum, M x N.
struct EchoGrid {
    CMatrix samples;
    // Per-entry SNR in dB when noise was injected on the grid; empty for
    // noiseless grids and grids whose noise came through the time domain.
    std::optional<double> gamma_db;
};

// Strips the CP, takes the unscaled N-point DFT of each symbol and divides
// out the known data symbols. For a noiseless single target the result is
// alpha * e^{-j2pi n k_r/N} * e^{j2pi m T~ mu}.
EchoGrid preprocess(const EchoFrame& rx, const DataGrid& data, const OfdmConfig& config);

// Complex white noise of variance reference_power / 10^(gamma_db/10) per entry.
CMatrix grid_noise(std::size_t rows, std::size_t cols, double gamma_db, std::uint64_t seed,
                   double reference_power = 1.0);

// grid + grid_noise(...); gamma_db = +inf returns the grid unchanged.
EchoGrid inject_grid_noise(const EchoGrid& grid, double gamma_db, std::uint64_t seed,
                           double reference_power = 1.0);

}  // namespace ofdmsense
