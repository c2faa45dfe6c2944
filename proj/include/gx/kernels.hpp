#pragma once
//==============================================================================
// kernels.hpp
// Data-parallel inner loops shared by the spectral operators and norms.
//
// Each kernel exists twice: a plain serial reference (gx::kernels::serial) and
// an OpenMP variant (gx::kernels::omp). The dispatching front ends pick one at
// runtime via set_parallel(); tests pin both against each other and the
// benchmark tool times them side by side.
//
// Reductions use a fixed chunk decomposition (kChunks chunks, combined in chunk
// order) so the result is bit-identical regardless of thread count.
//==============================================================================

#include <complex>
#include <cstddef>

namespace gx::kernels {

using cplx = std::complex<double>;

inline constexpr int kChunks = 64;

// Runtime switch; defaults to parallel. GX_SERIAL=1 in the environment forces
// the serial path.
bool parallel_enabled();
void set_parallel(bool on);

namespace serial {
void scale(double* a, double s, std::size_t n);
void mul2(const double* a, const double* b, double* y, std::size_t n);
void mul3(const double* a, const double* b, const double* c, double* y, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n); // y += alpha x
void apply_real_multiplier(cplx* c, const double* m, std::size_t n);
void apply_cplx_multiplier(cplx* c, const cplx* m, std::size_t n);
double sum(const double* a, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double sum_abs_pow(const double* a, double p, std::size_t n);
double max_abs(const double* a, std::size_t n);
double min(const double* a, std::size_t n);
} // namespace serial

namespace omp {
void scale(double* a, double s, std::size_t n);
void mul2(const double* a, const double* b, double* y, std::size_t n);
void mul3(const double* a, const double* b, const double* c, double* y, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void apply_real_multiplier(cplx* c, const double* m, std::size_t n);
void apply_cplx_multiplier(cplx* c, const cplx* m, std::size_t n);
double sum(const double* a, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double sum_abs_pow(const double* a, double p, std::size_t n);
double max_abs(const double* a, std::size_t n);
double min(const double* a, std::size_t n);
} // namespace omp

// Dispatching front ends.
void scale(double* a, double s, std::size_t n);
void mul2(const double* a, const double* b, double* y, std::size_t n);
void mul3(const double* a, const double* b, const double* c, double* y, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void apply_real_multiplier(cplx* c, const double* m, std::size_t n);
void apply_cplx_multiplier(cplx* c, const cplx* m, std::size_t n);
double sum(const double* a, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double sum_abs_pow(const double* a, double p, std::size_t n);
double max_abs(const double* a, std::size_t n);
double min(const double* a, std::size_t n);

} // namespace gx::kernels
