#include "ofdm_sensing/decimator.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fft.hpp"
#include "ofdm_sensing/fos.hpp"

namespace ofdmsense {
namespace {

constexpr double kPi = std::numbers::pi;

void check_row(std::span<const cplx> row, const DecimatorSpec& spec) {
    if (row.size() != spec.n_subcarriers)
        throw std::invalid_argument("decimate: row length " + std::to_string(row.size()) +
                                    " does not match N = " + std::to_string(spec.n_subcarriers));
}

// Reusable per-call buffers for the transform route.
struct TransformWorkspace {
    explicit TransformWorkspace(const DecimatorSpec& spec)
        : branches(spec.factor, spec.fft_size), acc(spec.fft_size) {}
    CMatrix branches;
    std::vector<cplx> acc;
};

void decimate_into(std::span<const cplx> row, const DecimatorSpec& spec, BranchFiltering mode,
                   TransformWorkspace* ws, std::span<cplx> out) {
    const std::size_t d_count = spec.factor;
    const std::size_t p_count = spec.taps_per_branch;
    const std::size_t q_count = spec.cp_len;
    const std::size_t first = p_count - 1;

    if (mode == BranchFiltering::transform) {
        const std::size_t nfft = spec.fft_size;
        CMatrix& buf = ws->branches;
        std::fill(buf.flat().begin(), buf.flat().end(), cplx{});
        for (std::size_t d = 0; d < d_count; ++d) {
            auto b = buf.row(d);
            for (std::size_t q = 0; q < q_count; ++q) b[q] = row[d_count - 1 - d + q * d_count];
        }
        detail::fft_rows(buf, detail::FftDirection::forward);

        std::fill(ws->acc.begin(), ws->acc.end(), cplx{});
        for (std::size_t d = 0; d < d_count; ++d) {
            auto b = buf.row(d);
            auto h = spec.branch_spectra.row(d);
            for (std::size_t i = 0; i < nfft; ++i) ws->acc[i] += b[i] * h[i];
        }
        detail::fft(ws->acc, detail::FftDirection::inverse);
        const double scale = 1.0 / static_cast<double>(nfft);
        for (std::size_t n = 0; n < out.size(); ++n) {
            const double sign = (n % 2 == 0) ? scale : -scale;
            out[n] = ws->acc[first + n] * sign;
        }
        return;
    }

    for (std::size_t n = 0; n < out.size(); ++n) {
        const std::size_t q = first + n;
        cplx acc{};
        for (std::size_t d = 0; d < d_count; ++d) {
            auto h = spec.branch_taps.row(d);
            for (std::size_t p = 0; p < p_count; ++p)
                acc += h[p] * row[d_count - 1 - d + (q - p) * d_count];
        }
        out[n] = (n % 2 == 0) ? acc : -acc;
    }
}

}  // namespace

double DecimatorSpec::band_center() const { return -kPi / static_cast<double>(factor); }

cplx DecimatorSpec::response(double omega) const {
    cplx acc{};
    for (std::size_t l = 0; l < taps.size(); ++l)
        acc += taps[l] * std::polar(1.0, -omega * static_cast<double>(l));
    return acc;
}

DecimatorSpec design_filter(std::size_t taps_per_branch, const OfdmConfig& config,
                            std::size_t fft_size) {
    config.validate();
    const std::size_t d_count = config.decimation_factor();
    const std::size_t q_count = config.cp_len;
    if (taps_per_branch < 1) throw std::invalid_argument("design_filter: P must be at least 1");
    if (taps_per_branch * d_count > config.n_subcarriers)
        throw std::invalid_argument("design_filter: P*D = " +
                                    std::to_string(taps_per_branch * d_count) + " exceeds N = " +
                                    std::to_string(config.n_subcarriers));

    const std::size_t min_fft = taps_per_branch + q_count - 1;
    if (fft_size == 0) fft_size = std::bit_ceil(min_fft);
    if (!is_power_of_two(fft_size) || fft_size < min_fft)
        throw std::invalid_argument("design_filter: fft_size must be a power of two >= P+Q-1 = " +
                                    std::to_string(min_fft));

    DecimatorSpec spec;
    spec.taps_per_branch = taps_per_branch;
    spec.factor = d_count;
    spec.n_subcarriers = config.n_subcarriers;
    spec.cp_len = q_count;
    spec.fft_size = fft_size;

    const std::size_t len = taps_per_branch * d_count;
    const double cutoff = kPi / static_cast<double>(d_count);
    const double center = static_cast<double>(len - 1) / 2.0;
    const auto window = make_window(WindowKind::hamming, len);
    spec.prototype.resize(len);
    for (std::size_t l = 0; l < len; ++l) {
        const double t = static_cast<double>(l) - center;
        const double ideal = std::abs(t) < 1e-12 ? cutoff / kPi : std::sin(cutoff * t) / (kPi * t);
        spec.prototype[l] = ideal * window[l];
    }
    const double gain = std::accumulate(spec.prototype.begin(), spec.prototype.end(), 0.0);
    for (auto& v : spec.prototype) v /= gain;

    spec.taps.resize(len);
    for (std::size_t l = 0; l < len; ++l)
        spec.taps[l] = spec.prototype[l] * std::polar(1.0, -kPi * static_cast<double>(l) / static_cast<double>(d_count));

    spec.branch_taps = CMatrix(d_count, taps_per_branch);
    spec.branch_spectra = CMatrix(d_count, fft_size);
    for (std::size_t d = 0; d < d_count; ++d) {
        for (std::size_t p = 0; p < taps_per_branch; ++p) {
            spec.branch_taps(d, p) = spec.taps[d + p * d_count];
            spec.branch_spectra(d, p) = spec.taps[d + p * d_count];
        }
    }
    detail::fft_rows(spec.branch_spectra, detail::FftDirection::forward);
    return spec;
}

std::vector<cplx> decimate_row(std::span<const cplx> row, const DecimatorSpec& spec,
                               BranchFiltering mode) {
    check_row(row, spec);
    std::vector<cplx> out(spec.output_len());
    if (mode == BranchFiltering::transform) {
        TransformWorkspace ws(spec);
        decimate_into(row, spec, mode, &ws, out);
    } else {
        decimate_into(row, spec, mode, nullptr, out);
    }
    return out;
}

std::vector<cplx> direct_decimate_row(std::span<const cplx> row, const DecimatorSpec& spec) {
    check_row(row, spec);
    const std::size_t len = spec.length();
    const std::size_t n = row.size();

    std::vector<cplx> full(n + len - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < len; ++l) full[i + l] += spec.taps[l] * row[i];

    std::vector<cplx> out(spec.output_len());
    const std::size_t phase = spec.factor - 1;
    for (std::size_t k = 0; k < out.size(); ++k) {
        const std::size_t q = spec.taps_per_branch - 1 + k;
        const cplx v = full[phase + q * spec.factor];
        out[k] = (k % 2 == 0) ? v : -v;
    }
    return out;
}

DecimatedGrid decimate_grid(const EchoGrid& grid, const DecimatorSpec& spec, BranchFiltering mode) {
    if (grid.samples.cols() != spec.n_subcarriers)
        throw std::invalid_argument("decimate_grid: grid has " + std::to_string(grid.samples.cols()) +
                                    " columns, spec expects N = " + std::to_string(spec.n_subcarriers));
    DecimatedGrid out{CMatrix(grid.samples.rows(), spec.output_len())};
    TransformWorkspace ws(spec);
    for (std::size_t m = 0; m < grid.samples.rows(); ++m)
        decimate_into(grid.samples.row(m), spec, mode, &ws, out.samples.row(m));
    return out;
}

}  // namespace ofdmsense
