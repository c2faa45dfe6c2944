#include "gx/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace gx::kernels {
namespace {

std::atomic<bool> g_parallel{[] {
    const char* env = std::getenv("GX_SERIAL");
    return !(env && env[0] == '1');
}()};

using idx = std::ptrdiff_t;

// Chunk [lo, hi) for chunk c of n elements, identical for serial and parallel
// paths so reductions combine in the same order.
inline void chunk_bounds(std::size_t n, int c, std::size_t& lo, std::size_t& hi) {
    const std::size_t per = n / kChunks;
    const std::size_t rem = n % kChunks;
    const auto uc = static_cast<std::size_t>(c);
    lo = uc * per + (uc < rem ? uc : rem);
    hi = lo + per + (uc < rem ? 1 : 0);
}

inline double chunk_sum(const double* a, std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i];
    return s;
}
inline double chunk_dot(const double* a, const double* b, std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
    return s;
}
inline double chunk_abs_pow(const double* a, double p, std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += std::pow(std::fabs(a[i]), p);
    return s;
}
inline double chunk_max_abs(const double* a, std::size_t lo, std::size_t hi) {
    double m = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        const double v = std::fabs(a[i]);
        if (v > m || std::isnan(v)) m = v;
    }
    return m;
}
inline double chunk_min(const double* a, std::size_t lo, std::size_t hi) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = lo; i < hi; ++i)
        if (a[i] < m || std::isnan(a[i])) m = a[i];
    return m;
}

} // namespace

bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }
void set_parallel(bool on) { g_parallel.store(on, std::memory_order_relaxed); }

//------------------------------------------------------------------------------
// Serial reference implementations.
//------------------------------------------------------------------------------
namespace serial {

void scale(double* a, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= s;
}
void mul2(const double* a, const double* b, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = a[i] * b[i];
}
void mul3(const double* a, const double* b, const double* c, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = a[i] * b[i] * c[i];
}
void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}
void apply_real_multiplier(cplx* c, const double* m, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) c[i] *= m[i];
}
void apply_cplx_multiplier(cplx* c, const cplx* m, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) c[i] *= m[i];
}
double sum(const double* a, std::size_t n) {
    double part[kChunks];
    for (int c = 0; c < kChunks; ++c) {
        std::size_t lo, hi;
        chunk_bounds(n, c, lo, hi);
        part[c] = chunk_sum(a, lo, hi);
    }
    double s = 0.0;
    for (int c = 0; c < kChunks; ++c) s += part[c];
    return s;
}
double dot(const double* a, const double* b, std::size_t n) {
    double part[kChunks];
    for (int c = 0; c < kChunks; ++c) {
        std::size_t lo, hi;
        chunk_bounds(n, c, lo, hi);
        part[c] = chunk_dot(a, b, lo, hi);
    }
    double s = 0.0;
    for (int c = 0; c < kChunks; ++c) s += part[c];
    return s;
}
double sum_abs_pow(const double* a, double p, std::size_t n) {
    double part[kChunks];
    for (int c = 0; c < kChunks; ++c) {
        std::size_t lo, hi;
        chunk_bounds(n, c, lo, hi);
        part[c] = chunk_abs_pow(a, p, lo, hi);
    }
    double s = 0.0;
    for (int c = 0; c < kChunks; ++c) s += part[c];
    return s;
}
double max_abs(const double* a, std::size_t n) {
    double part[kChunks];
    for (int c = 0; c < kChunks; ++c) {
        std::size_t lo, hi;
        chunk_bounds(n, c, lo, hi);
        part[c] = chunk_max_abs(a, lo, hi);
    }
    double m = 0.0;
    for (int c = 0; c < kChunks; ++c)
        if (part[c] > m || std::isnan(part[c])) m = part[c];
    return m;
}
double min(const double* a, std::size_t n) {
    double part[kChunks];
    for (int c = 0; c < kChunks; ++c) {
        std::size_t lo, hi;
        chunk_bounds(n, c, lo, hi);
        part[c] = chunk_min(a, lo, hi);
    }
    double m = std::numeric_limits<double>::infinity();
    for (int c = 0; c < kChunks; ++c)
        if (part[c] < m || std::isnan(part[c])) m = part[c];
    return m;
}

} // namespace serial

//------------------------------------------------------------------------------
// OpenMP implementations. Element-wise loops are trivially deterministic;
// reductions reuse the fixed chunk decomposition and combine serially.
//------------------------------------------------------------------------------
namespace omp {

void scale(double* a, double s, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (idx i = 0; i < static_cast<idx>(n); ++i) a[i] *= s;
}
void mul2(const double* a, const double* b, double* y, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (idx i = 0; i < static_cast<idx>(n); ++i) y[i] = a[i] * b[i];
}
void mul3(const double* a, const double* b, const double* c, double* y, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (idx i = 0; i < static_cast<idx>(n); ++i) y[i] = a[i] * b[i] * c[i];
}
void axpy(double alpha, const double* x, double* y, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (idx i = 0; i < static_cast<idx>(n); ++i) y[i] += alpha * x[i];
}
void apply_real_multiplier(cplx* c, const double* m, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (idx i = 0; i < static_cast<idx>(n); ++i) c[i] *= m[i];
}
void apply_cplx_multiplier(cplx* c, const cplx* m, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (idx i = 0; i < static_cast<idx>(n); ++i) c[i] *= m[i];
}
double sum(const double* a, std::size_t n) {
    double part[kChunks];
#pragma omp parallel for schedule(static)
    for (int c = 0; c < kChunks; ++c) {
        std::size_t lo, hi;
        chunk_bounds(n, c, lo, hi);
        part[c] = chunk_sum(a, lo, hi);
    }
    double s = 0.0;
    for (int c = 0; c < kChunks; ++c) s += part[c];
    return s;
}
double dot(const double* a, const double* b, std::size_t n) {
    double part[kChunks];
#pragma omp parallel for schedule(static)
    for (int c = 0; c < kChunks; ++c) {
        std::size_t lo, hi;
        chunk_bounds(n, c, lo, hi);
        part[c] = chunk_dot(a, b, lo, hi);
    }
    double s = 0.0;
    for (int c = 0; c < kChunks; ++c) s += part[c];
    return s;
}
double sum_abs_pow(const double* a, double p, std::size_t n) {
    double part[kChunks];
#pragma omp parallel for schedule(static)
    for (int c = 0; c < kChunks; ++c) {
        std::size_t lo, hi;
        chunk_bounds(n, c, lo, hi);
        part[c] = chunk_abs_pow(a, p, lo, hi);
    }
    double s = 0.0;
    for (int c = 0; c < kChunks; ++c) s += part[c];
    return s;
}
double max_abs(const double* a, std::size_t n) {
    double part[kChunks];
#pragma omp parallel for schedule(static)
    for (int c = 0; c < kChunks; ++c) {
        std::size_t lo, hi;
        chunk_bounds(n, c, lo, hi);
        part[c] = chunk_max_abs(a, lo, hi);
    }
    double m = 0.0;
    for (int c = 0; c < kChunks; ++c)
        if (part[c] > m || std::isnan(part[c])) m = part[c];
    return m;
}
double min(const double* a, std::size_t n) {
    double part[kChunks];
#pragma omp parallel for schedule(static)
    for (int c = 0; c < kChunks; ++c) {
        std::size_t lo, hi;
        chunk_bounds(n, c, lo, hi);
        part[c] = chunk_min(a, lo, hi);
    }
    double m = std::numeric_limits<double>::infinity();
    for (int c = 0; c < kChunks; ++c)
        if (part[c] < m || std::isnan(part[c])) m = part[c];
    return m;
}

} // namespace omp

//------------------------------------------------------------------------------
// Dispatch.
//------------------------------------------------------------------------------
#define GX_DISPATCH(name, ...) \
    return parallel_enabled() ? omp::name(__VA_ARGS__) : serial::name(__VA_ARGS__)

void scale(double* a, double s, std::size_t n) { GX_DISPATCH(scale, a, s, n); }
void mul2(const double* a, const double* b, double* y, std::size_t n) {
    GX_DISPATCH(mul2, a, b, y, n);
}
void mul3(const double* a, const double* b, const double* c, double* y, std::size_t n) {
    GX_DISPATCH(mul3, a, b, c, y, n);
}
void axpy(double alpha, const double* x, double* y, std::size_t n) {
    GX_DISPATCH(axpy, alpha, x, y, n);
}
void apply_real_multiplier(cplx* c, const double* m, std::size_t n) {
    GX_DISPATCH(apply_real_multiplier, c, m, n);
}
void apply_cplx_multiplier(cplx* c, const cplx* m, std::size_t n) {
    GX_DISPATCH(apply_cplx_multiplier, c, m, n);
}
double sum(const double* a, std::size_t n) { GX_DISPATCH(sum, a, n); }
double dot(const double* a, const double* b, std::size_t n) { GX_DISPATCH(dot, a, b, n); }
double sum_abs_pow(const double* a, double p, std::size_t n) {
    GX_DISPATCH(sum_abs_pow, a, p, n);
}
double max_abs(const double* a, std::size_t n) { GX_DISPATCH(max_abs, a, n); }
double min(const double* a, std::size_t n) { GX_DISPATCH(min, a, n); }

#undef GX_DISPATCH

} // namespace gx::kernels
