#include "ofdm_sensing/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ofdm_sensing/random.hpp"

namespace ofdmsense {

std::size_t delay_samples(double range_m, const OfdmConfig& config, DelayCheck check) {
    if (!(range_m >= 0.0) || !std::isfinite(range_m))
        throw std::invalid_argument("delay_samples: range must be finite and non-negative");
    const double exact = 2.0 * range_m / (config.propagation_speed_mps * config.sample_period_s());
    const auto k = static_cast<std::size_t>(std::llround(exact));
    const std::size_t limit = check == DelayCheck::strict ? config.cp_len : config.frame_len();
    if (k > limit)
        throw std::invalid_argument("delay_samples: range " + std::to_string(range_m) +
                                    " m gives delay " + std::to_string(k) +
                                    " samples, beyond the limit of " + std::to_string(limit));
    return k;
}

double doppler_freq(double velocity_mps, const OfdmConfig& config) {
    return 2.0 * velocity_mps * config.carrier_freq_hz / config.propagation_speed_mps;
}

EchoFrame synthesize_echo(const TxFrame& tx, std::span<const Target> targets,
                          const OfdmConfig& config, DelayCheck check) {
    config.validate();
    const std::size_t len = config.frame_len();
    if (tx.samples.rows() != config.n_symbols || tx.samples.cols() != len)
        throw std::invalid_argument("synthesize_echo: tx frame does not match config dimensions");

    EchoFrame echo{CMatrix(config.n_symbols, len)};
    const double sym_period = config.cp_symbol_duration_s();
    for (const auto& target : targets) {
        if (!std::isfinite(target.velocity_mps) || !std::isfinite(target.reflection.real()) ||
            !std::isfinite(target.reflection.imag()))
            throw std::invalid_argument("synthesize_echo: target parameters must be finite");
        const std::size_t kr = delay_samples(target.range_m, config, check);
        const double mu = doppler_freq(target.velocity_mps, config);
        for (std::size_t m = 0; m < config.n_symbols; ++m) {
            const double phase = 2.0 * std::numbers::pi * static_cast<double>(m) * sym_period * mu;
            const cplx coef = target.reflection * std::polar(1.0, phase);
            auto src = tx.samples.row(m);
            auto dst = echo.samples.row(m);
            for (std::size_t k = kr; k < len; ++k) dst[k] += coef * src[k - kr];
        }
    }
    return echo;
}

EchoFrame awgn_for(const EchoFrame& frame, double snr_db, std::uint64_t seed) {
    EchoFrame noise{CMatrix(frame.samples.rows(), frame.samples.cols())};
    if (std::isinf(snr_db) && snr_db > 0) return noise;
    if (std::isnan(snr_db)) throw std::invalid_argument("add_awgn: snr_db is NaN");
    const double power = frame.samples.mean_power();
    if (!(power > 0.0)) throw std::invalid_argument("add_awgn: frame has zero signal power");

    Rng rng(seed);
    ComplexGaussian gauss(power / std::pow(10.0, snr_db / 10.0));
    for (auto& v : noise.samples.flat()) v = gauss(rng);
    return noise;
}

EchoFrame add_awgn(const EchoFrame& frame, double snr_db, std::uint64_t seed) {
    if (std::isinf(snr_db) && snr_db > 0) return frame;
    return EchoFrame{frame.samples + awgn_for(frame, snr_db, seed).samples};
}

}  // namespace ofdmsense
