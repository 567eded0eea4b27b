#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "ofdm_sensing/cmatrix.hpp"
#include "ofdm_sensing/config.hpp"
#include "ofdm_sensing/waveform.hpp"

namespace ofdmsense {

// Point target, constant over the M symbols of a frame.
struct Target {
    double range_m = 0.0;
    double velocity_mps = 0.0;
    cplx reflection{1.0, 0.0};

    bool operator==(const Target&) const = default;
};

// Received baseband frame, same layout as TxFrame.
struct EchoFrame {
    CMatrix samples;
};

enum class DelayCheck {
    strict,   // k_r must not exceed the CP length
    lenient,  // any delay up to N+Q samples
};

// Round-trip delay in samples, round(2r / (c*T_s)).
std::size_t delay_samples(double range_m, const OfdmConfig& config,
                          DelayCheck check = DelayCheck::strict);

// Doppler shift 2*v*f_c/c in Hz.
double doppler_freq(double velocity_mps, const OfdmConfig& config);

// Superposition of gated, delayed, Doppler-rotated copies of the transmit
// frame. Symbol m of a target is alpha * g(k) * x(k - k_r) * e^{j2pi m T~ mu},
// with g zeroing the first k_r samples of each symbol.
EchoFrame synthesize_echo(const TxFrame& tx, std::span<const Target> targets,
                          const OfdmConfig& config, DelayCheck check = DelayCheck::strict);

// Adds complex white Gaussian noise at snr_db relative to the measured mean
// power of the frame. snr_db = +inf returns the frame unchanged.
EchoFrame add_awgn(const EchoFrame& frame, double snr_db, std::uint64_t seed);

// Noise-only frame whose variance is what add_awgn would use for `frame`.
EchoFrame awgn_for(const EchoFrame& frame, double snr_db, std::uint64_t seed);

}  // namespace ofdmsense
