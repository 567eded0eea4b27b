#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ofdm_sensing/cmatrix.hpp"
#include "ofdm_sensing/config.hpp"
#include "ofdm_sensing/preproc.hpp"

namespace ofdmsense {

/**
 * Anti-aliasing filter and polyphase layout for decimating an echo row by
 * D = N/Q.
 *
 * The prototype is a Hamming-windowed sinc of length L = P*D with cutoff
 * pi/D and unit DC gain. Modulating it by e^{-j pi l/D} moves the passband
 * to [-2pi/D, 0], where the pre-processed echo lives for delays in [0, Q].
 * Branch d holds taps h(d + pD), p = 0..P-1.
 */
struct DecimatorSpec {
    std::size_t taps_per_branch = 0;  // P
    std::size_t factor = 0;           // D
    std::size_t n_subcarriers = 0;    // N
    std::size_t cp_len = 0;           // Q
    std::size_t fft_size = 0;         // Q~, power of two >= P + Q - 1
    std::vector<double> prototype;    // h_lp, length L
    std::vector<cplx> taps;           // h, length L
    CMatrix branch_taps;              // D x P
    CMatrix branch_spectra;           // D x Q~, Q~-point DFT of zero-padded branch taps

    std::size_t length() const { return taps.size(); }
    // Valid outputs per row, Q - P + 1.
    std::size_t output_len() const { return cp_len - taps_per_branch + 1; }
    double band_center() const;
    // H(e^{j omega}) = sum_l h(l) e^{-j omega l}.
    cplx response(double omega) const;
};

// fft_size = 0 picks the smallest power of two >= P + Q - 1.
DecimatorSpec design_filter(std::size_t taps_per_branch, const OfdmConfig& config,
                            std::size_t fft_size = 0);

enum class BranchFiltering {
    transform,  // Q~-point FFT convolution per branch, branches summed in the transform domain
    direct,     // time-domain P-tap FIR per branch at the low rate
};

// Polyphase decimation of one echo row (length N) to Q - P + 1 samples:
// branch d filters y(D-1-d+qD), q = 0..Q-1, outputs P-1..Q-1 are kept,
// summed over branches and multiplied by (-1)^n.
std::vector<cplx> decimate_row(std::span<const cplx> row, const DecimatorSpec& spec,
                               BranchFiltering mode = BranchFiltering::transform);

// Reference route: full-rate linear convolution with h, then every D-th
// sample at phase D-1 (the phase implied by the branch index offset), the
// same P-1 transients dropped and the (-1)^n shift applied.
std::vector<cplx> direct_decimate_row(std::span<const cplx> row, const DecimatorSpec& spec);

// Decimated echo, M x (Q - P + 1).
struct DecimatedGrid {
    CMatrix samples;
};

DecimatedGrid decimate_grid(const EchoGrid& grid, const DecimatorSpec& spec,
                            BranchFiltering mode = BranchFiltering::transform);

}  // namespace ofdmsense
