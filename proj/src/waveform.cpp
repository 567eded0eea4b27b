#include "ofdm_sensing/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fft.hpp"
#include "ofdm_sensing/random.hpp"

namespace ofdmsense {

DataGrid generate_data(const OfdmConfig& config, std::uint64_t seed) {
    config.validate();
    const double a = 1.0 / std::sqrt(2.0);
    const cplx alphabet[4] = {{a, a}, {-a, a}, {-a, -a}, {a, -a}};

    Rng rng(seed);
    std::uniform_int_distribution<int> pick(0, 3);
    DataGrid grid{CMatrix(config.n_symbols, config.n_subcarriers), Modulation::qpsk};
    for (auto& s : grid.symbols.flat()) s = alphabet[pick(rng)];
    return grid;
}

TxFrame modulate(const DataGrid& data, const OfdmConfig& config) {
    config.validate();
    const std::size_t n = config.n_subcarriers;
    const std::size_t q = config.cp_len;
    if (data.symbols.rows() != config.n_symbols || data.symbols.cols() != n)
        throw std::invalid_argument("modulate: data grid does not match config dimensions");

    CMatrix body = data.symbols;
    detail::fft_rows(body, detail::FftDirection::inverse);
    const double scale = 1.0 / static_cast<double>(n);

    TxFrame frame{CMatrix(config.n_symbols, n + q)};
    for (std::size_t m = 0; m < config.n_symbols; ++m) {
        auto src = body.row(m);
        auto dst = frame.samples.row(m);
        for (std::size_t k = 0; k < n; ++k) dst[q + k] = src[k] * scale;
        std::copy(dst.begin() + static_cast<std::ptrdiff_t>(n),
                  dst.begin() + static_cast<std::ptrdiff_t>(n + q), dst.begin());
    }
    return frame;
}

CMatrix demodulate(const TxFrame& frame, const OfdmConfig& config) {
    const std::size_t n = config.n_subcarriers;
    const std::size_t q = config.cp_len;
    if (frame.samples.rows() != config.n_symbols || frame.samples.cols() != n + q)
        throw std::invalid_argument("demodulate: frame does not match config dimensions");

    CMatrix out(config.n_symbols, n);
    for (std::size_t m = 0; m < config.n_symbols; ++m) {
        auto src = frame.samples.row(m);
        std::copy(src.begin() + static_cast<std::ptrdiff_t>(q), src.end(), out.row(m).begin());
    }
    detail::fft_rows(out, detail::FftDirection::forward);
    return out;
}

}  // namespace ofdmsense
