#include "qgsw/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace qgsw {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

FftPlan::FftPlan(std::vector<int> dims) {
    size_ = 1;
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument("FFT dimension must be positive");
        size_ *= size_t(d);
    }
    auto* a = fftw_alloc_complex(size_);
    auto* b = fftw_alloc_complex(size_);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    {
        std::lock_guard lock(planner_mutex());
        fwd_ = fftw_plan_dft(int(dims.size()), dims.data(), a, b, FFTW_FORWARD, flags);
        bwd_ = fftw_plan_dft(int(dims.size()), dims.data(), a, b, FFTW_BACKWARD, flags);
    }
    fftw_free(a);
    fftw_free(b);
    if (!fwd_ || !bwd_) throw std::runtime_error("FFTW planning failed");
}

FftPlan::~FftPlan() {
    std::lock_guard lock(planner_mutex());
    if (fwd_) fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    if (bwd_) fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

void FftPlan::forward(const cplx* in, cplx* out) const {
    fftw_execute_dft(static_cast<fftw_plan>(fwd_), reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

void FftPlan::backward(const cplx* in, cplx* out) const {
    fftw_execute_dft(static_cast<fftw_plan>(bwd_), reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

const FftPlan& fft_plan(const std::vector<int>& dims) {
    static std::mutex m;
    static std::map<std::vector<int>, std::unique_ptr<FftPlan>> cache;
    std::lock_guard lock(m);
    auto& slot = cache[dims];
    if (!slot) slot = std::make_unique<FftPlan>(dims);
    return *slot;
}

const FftPlan& fft_plan(int n) { return fft_plan(std::vector<int>{n}); }

}  // namespace qgsw
