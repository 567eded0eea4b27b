#pragma once

#include <cstddef>
#include <span>

#include "ofdm_sensing/cmatrix.hpp"

namespace ofdmsense::detail {

enum class FftDirection { forward, inverse };

// In-place batch of `count` unnormalized DFTs of length n. Element i of
// transform t lives at data[t*distance + i*stride]. Forward uses e^{-j...}.
void fft_batch(cplx* data, std::size_t n, std::size_t count, std::size_t stride,
               std::size_t distance, FftDirection dir);

inline void fft(std::span<cplx> v, FftDirection dir) {
    fft_batch(v.data(), v.size(), 1, 1, v.size(), dir);
}

// Row-wise transforms of every row of m.
inline void fft_rows(CMatrix& m, FftDirection dir) {
    fft_batch(m.data(), m.cols(), m.rows(), 1, m.cols(), dir);
}

// Column-wise transforms of every column of m.
inline void fft_cols(CMatrix& m, FftDirection dir) {
    fft_batch(m.data(), m.rows(), m.cols(), m.cols(), 1, dir);
}

}  // namespace ofdmsense::detail
