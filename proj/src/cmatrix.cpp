#include "ofdm_sensing/cmatrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace ofdmsense {

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

double CMatrix::mean_power() const {
    if (data_.empty()) return 0.0;
    double acc = 0.0;
    for (const auto& v : data_) acc += std::norm(v);
    return acc / static_cast<double>(data_.size());
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("CMatrix: shape mismatch in addition");
    CMatrix out(a.rows(), a.cols());
    std::transform(a.flat().begin(), a.flat().end(), b.flat().begin(), out.flat().begin(),
                   [](cplx x, cplx y) { return x + y; });
    return out;
}

CMatrix operator*(cplx scale, const CMatrix& m) {
    CMatrix out(m.rows(), m.cols());
    std::transform(m.flat().begin(), m.flat().end(), out.flat().begin(),
                   [scale](cplx x) { return scale * x; });
    return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("CMatrix: shape mismatch in comparison");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a.flat()[i] - b.flat()[i]));
    return worst;
}

}  // namespace ofdmsense
