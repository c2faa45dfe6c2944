#include "gx/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "gx/kernels.hpp"

namespace gx::fft {
namespace {

class PlanPair {
public:
    explicit PlanPair(int n) : n_(n) {
        if (n <= 0) throw std::invalid_argument("fft: size must be positive");
        std::vector<cplx> a(static_cast<std::size_t>(n)), b(a);
        auto* pa = reinterpret_cast<fftw_complex*>(a.data());
        auto* pb = reinterpret_cast<fftw_complex*>(b.data());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fwd_ = fftw_plan_dft_1d(n, pa, pb, FFTW_FORWARD, flags);
        bwd_ = fftw_plan_dft_1d(n, pa, pb, FFTW_BACKWARD, flags);
        if (!fwd_ || !bwd_) throw std::runtime_error("fft: plan creation failed");
    }
    ~PlanPair() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
    }
    PlanPair(const PlanPair&) = delete;
    PlanPair& operator=(const PlanPair&) = delete;

    void exec_forward(const cplx* in, cplx* out) const {
        fftw_execute_dft(fwd_,
                         reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                         reinterpret_cast<fftw_complex*>(out));
    }
    void exec_backward(const cplx* in, cplx* out) const {
        fftw_execute_dft(bwd_,
                         reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                         reinterpret_cast<fftw_complex*>(out));
    }

private:
    int n_;
    fftw_plan fwd_ = nullptr;
    fftw_plan bwd_ = nullptr;
};

const PlanPair& plan_for(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<PlanPair>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<PlanPair>(n)).first;
    return *it->second;
}

} // namespace

void forward(const cplx* in, cplx* out, int n) {
    const PlanPair& p = plan_for(n);
    if (in == out) {
        std::vector<cplx> tmp(in, in + n);
        p.exec_forward(tmp.data(), out);
    } else {
        p.exec_forward(in, out);
    }
    kernels::scale(reinterpret_cast<double*>(out), 1.0 / n, 2 * static_cast<std::size_t>(n));
}

void backward(const cplx* in, cplx* out, int n) {
    const PlanPair& p = plan_for(n);
    if (in == out) {
        std::vector<cplx> tmp(in, in + n);
        p.exec_backward(tmp.data(), out);
    } else {
        p.exec_backward(in, out);
    }
}

} // namespace gx::fft
