#pragma once

#include <complex>
#include <vector>

namespace qgsw {

using cplx = std::complex<double>;

// Unnormalized complex DFT backed by FFTW. Plans are created once per shape
// (under a lock, FFTW_ESTIMATE so results are reproducible) and executed with
// the thread-safe new-array interface.
class FftPlan {
public:
    explicit FftPlan(std::vector<int> dims);
    ~FftPlan();
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    // out_k = sum_j in_j e^{-2 pi i j k / n}
    void forward(const cplx* in, cplx* out) const;
    // out_j = sum_k in_k e^{+2 pi i j k / n}
    void backward(const cplx* in, cplx* out) const;

    size_t size() const noexcept { return size_; }

private:
    void* fwd_ = nullptr;
    void* bwd_ = nullptr;
    size_t size_ = 0;
};

const FftPlan& fft_plan(int n);
const FftPlan& fft_plan(const std::vector<int>& dims);

}  // namespace qgsw
