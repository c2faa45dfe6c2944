//==============================================================================
// bench_kernels — times the serial reference kernels against the OpenMP
// variants and the assembled spectral operators under both modes.
//==============================================================================

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "gx/kernels.hpp"
#include "gx/models.hpp"
#include "gx/norms.hpp"
#include "gx/spectral.hpp"

using namespace gx;
using spectral::StateField;

namespace {

double time_of(const std::function<void()>& fn, int reps) {
    fn(); // warm up
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

void row(const char* name, double serial_s, double omp_s) {
    std::printf("%-28s %12.3f us %12.3f us %8.2fx\n", name, serial_s * 1e6, omp_s * 1e6,
                serial_s / omp_s);
}

} // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 1 << 16;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 200;
    std::printf("kernel benchmark, n = %d, %d reps\n", n, reps);
    std::printf("%-28s %15s %15s %9s\n", "kernel", "serial", "openmp", "speedup");

    std::vector<double> a(n), b(n), c(n), y(n);
    for (int i = 0; i < n; ++i) {
        a[i] = std::sin(0.001 * i);
        b[i] = std::cos(0.002 * i);
        c[i] = 1.0 / (1.0 + i);
    }

    row("mul3",
        time_of([&] { kernels::serial::mul3(a.data(), b.data(), c.data(), y.data(), a.size()); }, reps),
        time_of([&] { kernels::omp::mul3(a.data(), b.data(), c.data(), y.data(), a.size()); }, reps));
    row("axpy",
        time_of([&] { kernels::serial::axpy(1.5, a.data(), y.data(), a.size()); }, reps),
        time_of([&] { kernels::omp::axpy(1.5, a.data(), y.data(), a.size()); }, reps));
    row("sum (chunked)",
        time_of([&] { kernels::serial::sum(a.data(), a.size()); }, reps),
        time_of([&] { kernels::omp::sum(a.data(), a.size()); }, reps));
    row("sum_abs_pow p=3",
        time_of([&] { kernels::serial::sum_abs_pow(a.data(), 3.0, a.size()); }, reps),
        time_of([&] { kernels::omp::sum_abs_pow(a.data(), 3.0, a.size()); }, reps));
    row("max_abs",
        time_of([&] { kernels::serial::max_abs(a.data(), a.size()); }, reps),
        time_of([&] { kernels::omp::max_abs(a.data(), a.size()); }, reps));

    // Assembled operators at a production-ish grid size.
    const auto g = spectral::make_grid(50.0, 2048);
    const StateField u = spectral::sample(g, [](double x) { return std::exp(-0.1 * x * x); });
    const StateField v = spectral::sample(g, [](double x) { return 1.0 + 0.5 * std::exp(-0.2 * x * x); });
    const models::StatePair s{u, v, 0.0};

    auto bench_ops = [&](bool parallel) {
        kernels::set_parallel(parallel);
        const double t_prod = time_of([&] { (void)spectral::product(u, v, u); }, 50);
        const double t_rhs = time_of([&] { (void)models::gx_rhs(s); }, 20);
        const double t_norms =
            time_of([&] { (void)analysis::compute_norms(u, v, 0.0, 1.0, 3.0); }, 10);
        return std::array<double, 3>{t_prod, t_rhs, t_norms};
    };
    const auto ser = bench_ops(false);
    const auto par = bench_ops(true);
    kernels::set_parallel(true);
    row("dealiased triple product", ser[0], par[0]);
    row("gx_rhs (N=2048)", ser[1], par[1]);
    row("compute_norms (N=2048)", ser[2], par[2]);
    return 0;
}
