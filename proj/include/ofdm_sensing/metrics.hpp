#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ofdm_sensing/config.hpp"
#include "ofdm_sensing/fos.hpp"

namespace ofdmsense {

// Bins excluded from the noise floor around the peak.
struct NoiseGuard {
    std::size_t range_bins = 5;
    std::size_t doppler_bins = 5;

    bool operator==(const NoiseGuard&) const = default;
};

// 10 log10(|peak|^2 / mean |Y|^2 outside the guard), peak = strongest bin.
// Throws std::runtime_error when the floor is numerically zero.
double rdm_snr(const Rdm& rdm, NoiseGuard guard = {});

// Same ratio measured on two maps of one realization pushed through a linear
// pipeline: the peak bin and its power come from the noiseless map, the floor
// from the noise-only map. Free of the noise term inside the peak bin.
double split_rdm_snr(const Rdm& signal, const Rdm& noise, NoiseGuard guard = {});

/**
 * Operation counts of the radix-2 FFT model, x log2 x per x-point batch.
 *
 * The decimation term 2 D Q~ log2 Q~ is reported once per frame (as in the
 * usual accounting) and once per symbol (decimation actually runs on every
 * one of the M rows).
 */
struct ComplexityReport {
    std::uint64_t fos_rdm_ops = 0;               // MN log2(MN)
    std::uint64_t dfos_rdm_ops = 0;              // MQ log2(MQ)
    std::uint64_t decimation_ops_once = 0;       // 2 D Q~ log2 Q~
    std::uint64_t decimation_ops_per_frame = 0;  // M * decimation_ops_once
    std::uint64_t fft_size = 0;                  // Q~
    double ratio_once_accounting = 0.0;          // fos / (dfos + once)
    double ratio_per_symbol_accounting = 0.0;    // fos / (dfos + per_frame)
};

ComplexityReport complexity_model(const OfdmConfig& config, std::size_t taps_per_branch);

// -3 dB width around peak_bin of a dB-valued cut, linearly interpolated
// between bins and converted with axis_scale (units per bin). The cut is
// treated as cyclic. Throws if either side never drops 3 dB.
double mainlobe_width(std::span<const double> cut_db, std::size_t peak_bin, double axis_scale);

// 20 log10 |Y| along one Doppler row / one range column of the map.
std::vector<double> range_cut_db(const Rdm& rdm, std::size_t doppler_bin);
std::vector<double> doppler_cut_db(const Rdm& rdm, std::size_t range_bin);

struct SnrReport {
    double gamma_db = 0.0;
    double snr_rdm_db = 0.0;  // mean over trials
    double std_db = 0.0;
    double gain_db = 0.0;     // snr_rdm_db - gamma_db
    std::size_t trials = 0;
};

SnrReport summarize_snr(std::span<const double> snr_db, double gamma_db);

}  // namespace ofdmsense
