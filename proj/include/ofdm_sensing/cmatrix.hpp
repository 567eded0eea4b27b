#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ofdmsense {

using cplx = std::complex<double>;

// Dense row-major complex matrix; row r occupies [r*cols, (r+1)*cols).
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<cplx> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const cplx> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }
    std::span<cplx> flat() { return data_; }
    std::span<const cplx> flat() const { return data_; }

    double mean_power() const;

    bool operator==(const CMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cplx scale, const CMatrix& m);

double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace ofdmsense
