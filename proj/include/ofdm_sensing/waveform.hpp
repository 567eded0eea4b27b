#pragma once

#include <cstdint>

#include "ofdm_sensing/cmatrix.hpp"
#include "ofdm_sensing/config.hpp"

namespace ofdmsense {

enum class Modulation { qpsk };

// Communication symbols s_m(n): one row per OFDM symbol, one column per sub-carrier.
struct DataGrid {
    CMatrix symbols;
    Modulation modulation = Modulation::qpsk;
};

// CP-OFDM time-domain frame: M rows of N+Q samples, CP first.
struct TxFrame {
    CMatrix samples;
};

// Uniform i.i.d. unit-modulus QPSK symbols, fully determined by seed.
DataGrid generate_data(const OfdmConfig& config, std::uint64_t seed);

// Per symbol: x(k) = (1/N) sum_n s(n) e^{j2pi nk/N}, then the last Q samples
// are prepended as cyclic prefix.
TxFrame modulate(const DataGrid& data, const OfdmConfig& config);

// Inverse of modulate: strips the CP and takes the unscaled N-point DFT.
CMatrix demodulate(const TxFrame& frame, const OfdmConfig& config);

}  // namespace ofdmsense
