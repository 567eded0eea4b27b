#pragma once

#include <cstdint>
#include <random>

#include "ofdm_sensing/cmatrix.hpp"

namespace ofdmsense {

using Rng = std::mt19937_64;

// Independent draw streams hanging off one experiment seed.
enum class SeedStream : std::uint64_t {
    data = 1,
    time_noise = 2,
    grid_noise = 3,
    targets = 4,
};

// Mixes (seed, stream, index) into a generator seed; the same triple always
// yields the same value and distinct triples are decorrelated.
std::uint64_t derive_seed(std::uint64_t seed, SeedStream stream, std::uint64_t index = 0);

// Circularly-symmetric complex Gaussian source with E|z|^2 = variance.
class ComplexGaussian {
public:
    explicit ComplexGaussian(double variance);
    cplx operator()(Rng& rng);

private:
    std::normal_distribution<double> normal_;
};

}  // namespace ofdmsense
