#include "ofdm_sensing/preproc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fft.hpp"
#include "ofdm_sensing/random.hpp"

namespace ofdmsense {

EchoGrid preprocess(const EchoFrame& rx, const DataGrid& data, const OfdmConfig& config) {
    config.validate();
    const std::size_t n = config.n_subcarriers;
    const std::size_t q = config.cp_len;
    if (rx.samples.rows() != config.n_symbols || rx.samples.cols() != n + q)
        throw std::invalid_argument("preprocess: echo frame does not match config dimensions");
    if (data.symbols.rows() != config.n_symbols || data.symbols.cols() != n)
        throw std::invalid_argument("preprocess: data grid does not match config dimensions");

    EchoGrid grid{CMatrix(config.n_symbols, n), std::nullopt};
    for (std::size_t m = 0; m < config.n_symbols; ++m) {
        auto src = rx.samples.row(m);
        std::copy(src.begin() + static_cast<std::ptrdiff_t>(q), src.end(), grid.samples.row(m).begin());
    }
    detail::fft_rows(grid.samples, detail::FftDirection::forward);

    for (std::size_t i = 0; i < grid.samples.size(); ++i) {
        const cplx s = data.symbols.flat()[i];
        if (s == cplx{0.0, 0.0})
            throw std::invalid_argument("preprocess: zero-magnitude data symbol");
        grid.samples.flat()[i] /= s;
    }
    return grid;
}

CMatrix grid_noise(std::size_t rows, std::size_t cols, double gamma_db, std::uint64_t seed,
                   double reference_power) {
    CMatrix noise(rows, cols);
    if (std::isinf(gamma_db) && gamma_db > 0) return noise;
    if (std::isnan(gamma_db)) throw std::invalid_argument("grid_noise: gamma_db is NaN");
    if (!(reference_power > 0.0))
        throw std::invalid_argument("grid_noise: reference power must be positive");

    Rng rng(seed);
    ComplexGaussian gauss(reference_power / std::pow(10.0, gamma_db / 10.0));
    for (auto& v : noise.flat()) v = gauss(rng);
    return noise;
}

EchoGrid inject_grid_noise(const EchoGrid& grid, double gamma_db, std::uint64_t seed,
                           double reference_power) {
    if (std::isinf(gamma_db) && gamma_db > 0) return grid;
    CMatrix noise = grid_noise(grid.samples.rows(), grid.samples.cols(), gamma_db, seed,
                               reference_power);
    return EchoGrid{grid.samples + noise, gamma_db};
}

}  // namespace ofdmsense
