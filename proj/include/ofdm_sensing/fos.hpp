#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "ofdm_sensing/cmatrix.hpp"
#include "ofdm_sensing/config.hpp"
#include "ofdm_sensing/preproc.hpp"

namespace ofdmsense {

enum class WindowKind { rectangular, hamming };

// Throws std::invalid_argument for anything other than "rectangular"/"hamming".
WindowKind parse_window_kind(std::string_view name);
std::string_view to_string(WindowKind kind);

// Symmetric windows; hamming is 0.54 - 0.46 cos(2 pi n / (L-1)), and a
// single-point window is {1}.
std::vector<double> make_window(WindowKind kind, std::size_t length);

enum class RdmMethod { fos, dfos };

std::string_view to_string(RdmMethod method);

/**
 * Complex range-Doppler matrix.
 *
 * Row b is Doppler bin b (unsigned, 0..M-1), column k is range bin k, so
 * range is the fast axis. FOS maps range bin k to delay (N - k) mod N; DFOS
 * maps its Q bins through recover_kr.
 */
struct Rdm {
    RdmMethod method = RdmMethod::fos;
    CMatrix values;
    WindowKind range_window = WindowKind::rectangular;
    WindowKind doppler_window = WindowKind::rectangular;
    std::size_t n_subcarriers = 0;
    std::size_t cp_len = 0;
    double range_per_delay_m = 0.0;  // c*T_s/2
    double velocity_per_bin_mps = 0.0;  // c / (2 M f_c T~)

    std::size_t doppler_bins() const { return values.rows(); }
    std::size_t range_bins() const { return values.cols(); }

    long signed_doppler_bin(std::size_t bin) const;
    double velocity_of_bin(std::size_t bin) const;
    std::size_t delay_of_bin(std::size_t bin) const;
    double range_of_bin(std::size_t bin) const;
    // Inverse of delay_of_bin for delays the map can represent.
    std::size_t bin_of_delay(std::size_t delay) const;
};

struct Detection {
    std::size_t range_bin = 0;
    std::size_t doppler_bin = 0;     // unsigned, as stored in the RDM
    long doppler_bin_signed = 0;     // b in [-M/2, M/2]
    double range_m = 0.0;
    double velocity_mps = 0.0;
    double peak_mag = 0.0;
};

// Half-widths of the rectangular exclusion zone around an accepted peak.
struct PeakGuard {
    std::size_t range_bins = 3;
    std::size_t doppler_bins = 3;

    bool operator==(const PeakGuard&) const = default;
};

// b~ <= M/2 stays, larger bins wrap to b~ - M.
long signed_doppler_bin(std::size_t bin, std::size_t n_bins);

// Windowed 2-D DFT of the echo grid: N-point along sub-carriers, M-point
// along symbols, no normalization.
Rdm fos_rdm(const EchoGrid& grid, const OfdmConfig& config, WindowKind range_window,
            WindowKind doppler_window);

// Strongest n_peaks local maxima of |Y| (8-neighbourhood, cyclic axes), taken
// greedily in descending order while skipping anything inside the guard of an
// already accepted peak. Throws std::runtime_error if fewer remain.
std::vector<Detection> find_detections(const Rdm& rdm, std::size_t n_peaks, PeakGuard guard = {});

// find_detections on a FOS map, mapped with r = (N - k) c T_s / 2.
std::vector<Detection> estimate_fos(const Rdm& rdm, const OfdmConfig& config, std::size_t n_peaks,
                                    PeakGuard guard = {});

struct AmbiguityLimits {
    double max_range_m = 0.0;              // c Q / (2B)
    double max_velocity_mps = 0.0;         // lambda / (4 T~), symmetric
    double range_resolution_m = 0.0;       // c / (2B)
    double velocity_resolution_mps = 0.0;  // lambda / (2 T~ M)
};

AmbiguityLimits ambiguity_limits(const OfdmConfig& config);

}  // namespace ofdmsense
