#include "ofdm_sensing/random.hpp"

#include <array>
#include <cmath>

namespace ofdmsense {

std::uint64_t derive_seed(std::uint64_t seed, SeedStream stream, std::uint64_t index) {
    const auto s = static_cast<std::uint64_t>(stream);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

ComplexGaussian::ComplexGaussian(double variance) : normal_(0.0, std::sqrt(variance / 2.0)) {}

cplx ComplexGaussian::operator()(Rng& rng) {
    const double re = normal_(rng);
    const double im = normal_(rng);
    return {re, im};
}

}  // namespace ofdmsense
