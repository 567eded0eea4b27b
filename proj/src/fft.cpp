#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace ofdmsense::detail {
namespace {

using PlanKey = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, int>;

// FFTW planning is not thread-safe, execution with fftw_execute_dft is.
// Plans are created once per shape and kept for the process lifetime.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t n, std::size_t count, std::size_t stride, std::size_t distance,
                  FftDirection dir) {
        const PlanKey key{n, count, stride, distance, dir == FftDirection::forward ? 0 : 1};
        std::lock_guard lock(mutex_);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;

        const std::size_t span = (count - 1) * distance + (n - 1) * stride + 1;
        auto* scratch = fftw_alloc_complex(span);
        int dims[1] = {static_cast<int>(n)};
        fftw_plan plan = fftw_plan_many_dft(
            1, dims, static_cast<int>(count), scratch, nullptr, static_cast<int>(stride),
            static_cast<int>(distance), scratch, nullptr, static_cast<int>(stride),
            static_cast<int>(distance), dir == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(scratch);
        if (plan == nullptr) throw std::runtime_error("fftw: failed to create plan");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

}  // namespace

void fft_batch(cplx* data, std::size_t n, std::size_t count, std::size_t stride,
               std::size_t distance, FftDirection dir) {
    if (n == 0 || count == 0) return;
    fftw_plan plan = cache().get(n, count, stride, distance, dir);
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan, p, p);
}

}  // namespace ofdmsense::detail
