#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gx/fft.hpp"
#include "gx/initial_data.hpp"
#include "gx/kernels.hpp"
#include "gx/norms.hpp"
#include "gx/spectral.hpp"
#include "oracles.hpp"

using namespace gx::spectral;
using gx::analysis::random_annulus_field;
constexpr double pi = std::numbers::pi;

TEST_SUITE_BEGIN("spectral");

TEST_CASE("grid construction and metadata") {
    const auto g = make_grid(50.0, 64);
    CHECK(g->nodes().front() == doctest::Approx(-50.0));
    CHECK(g->dx() == doctest::Approx(100.0 / 64));
    CHECK(g->nodes()[1] - g->nodes()[0] == doctest::Approx(1.5625));
    for (int j = 1; j < g->size(); ++j) CHECK(g->nodes()[j] > g->nodes()[j - 1]);

    const auto unit = make_grid(pi, 16);
    // Unit-scale torus: wavenumbers are the integers -8..7 in slot order.
    CHECK(unit->wavenumbers().size() == 16);
    for (int i = 0; i < 16; ++i)
        CHECK(unit->wavenumbers()[i] == doctest::Approx(unit->mode(i)).epsilon(1e-15));
    CHECK(unit->mode(8) == -8);
    CHECK(unit->nyquist_slot() == 8);

    CHECK_THROWS_AS(make_grid(50.0, 63), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(50.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(-1.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0.0, 64), std::invalid_argument);
}

TEST_CASE("transform round trip, Parseval, Hermitian symmetry") {
    const auto g = make_grid(pi, 128);
    const StateField f = random_annulus_field(g, 0.0, 64.0, 7);
    const auto c = analyze(f);
    CHECK(c.hermitian_defect() <= 1e-12);
    const StateField back = synthesize(c);
    double rel = max_abs(back - f) / max_abs(f);
    CHECK(rel <= 1e-12);

    // Parseval: discrete L2 in space equals the coefficient-side value.
    double space = gx::analysis::lp_norm(f, 2.0);
    double coef = 0.0;
    for (const auto& z : c.c) coef += std::norm(z);
    coef = std::sqrt(g->length() * coef);
    CHECK(space == doctest::Approx(coef).epsilon(1e-12));
}

TEST_CASE("deriv: eigenfunctions, constants, repeated application") {
    const auto g = make_grid(pi, 64);
    const StateField s3 = sample(g, [](double x) { return std::sin(3.0 * x); });
    const StateField d1 = deriv(s3, 1);
    const StateField expect = sample(g, [](double x) { return 3.0 * std::cos(3.0 * x); });
    CHECK(max_abs(d1 - expect) <= 1e-10);

    const StateField c(g, 4.2);
    CHECK(max_abs(deriv(c, 1)) <= 1e-12);

    const StateField f = random_annulus_field(g, 0.0, 20.0, 3);
    CHECK(max_abs(deriv(deriv(f, 1), 1) - deriv(f, 2)) <= 1e-10 * std::max(1.0, max_abs(deriv(f, 2))));
}

TEST_CASE("deriv order 2 matches finite differences on a reference grid") {
    const auto g = make_grid(pi, 4096);
    const StateField f = sample(g, [](double x) { return std::exp(std::sin(x)); });
    const StateField spec = deriv(f, 2);
    const StateField fd = oracles::fd_second_deriv(f);
    CHECK(max_abs(spec - fd) <= 1e-6);
}

TEST_CASE("helmholtz_apply eigenstructure and inverse pairing") {
    const auto g = make_grid(pi, 64);
    const StateField c(g, 2.5);
    CHECK(max_abs(helmholtz_apply(c) - c) <= 1e-12);
    CHECK(max_abs(helmholtz_inv(c) - c) <= 1e-12);

    const StateField s5 = sample(g, [](double x) { return std::sin(5.0 * x); });
    CHECK(max_abs(helmholtz_apply(s5) - 26.0 * s5) <= 1e-9);
    CHECK(max_abs(helmholtz_inv(s5) - (1.0 / 26.0) * s5) <= 1e-12);

    const StateField f = random_annulus_field(g, 0.0, 30.0, 11);
    CHECK(max_abs(helmholtz_apply(helmholtz_inv(f)) - f) <= 1e-12 * max_abs(f));
    CHECK(max_abs(helmholtz_inv(helmholtz_apply(f)) - f) <= 1e-12 * max_abs(f));
}

TEST_CASE("helmholtz_inv equals the line convolution with the exponential kernel") {
    const auto g = make_grid(50.0, 1024);
    const double sigma = 0.5;
    const StateField f =
        sample(g, [&](double x) { return std::exp(-0.5 * x * x / (sigma * sigma)); });
    const StateField u = helmholtz_inv(f);
    const auto quad = oracles::line_convolution(f);
    double worst_quad = 0.0, worst_closed = 0.0;
    for (int j = 0; j < g->size(); ++j) {
        worst_quad = std::max(worst_quad, std::fabs(u.values[j] - quad[j]));
        worst_closed = std::max(
            worst_closed,
            std::fabs(u.values[j] - oracles::gaussian_p_conv(g->nodes()[j], 1.0, sigma)));
    }
    CHECK(worst_quad <= 1e-8);
    CHECK(worst_closed <= 1e-7);
}

TEST_CASE("kernel_p: value, evenness, unit mass") {
    CHECK(kernel_p(0.0) == doctest::Approx(0.5));
    for (double x : {0.1, 0.7, 2.3, 17.0}) CHECK(kernel_p(x) == doctest::Approx(kernel_p(-x)));
    // Composite Simpson on [0, 60], doubled by symmetry.
    const int n = 60000;
    const double h = 60.0 / n;
    double acc = kernel_p(0.0) + kernel_p(60.0);
    for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * kernel_p(i * h);
    const double mass = 2.0 * acc * h / 3.0;
    CHECK(std::fabs(mass - 1.0) <= 1e-10);
}

TEST_CASE("dealiased products: trig identity, band-limited exactness, symmetry") {
    const auto g = make_grid(pi, 64);
    const StateField s1 = sample(g, [](double x) { return std::sin(x); });
    const StateField zero(g, 0.0);
    CHECK(max_abs(product(s1, zero)) == 0.0);
    CHECK(max_abs(product(s1, s1, zero)) == 0.0);

    // sin^3 x = (3 sin x - sin 3x)/4.
    const StateField cube = product(s1, s1, s1);
    const StateField expect =
        sample(g, [](double x) { return 0.25 * (3.0 * std::sin(x) - std::sin(3.0 * x)); });
    CHECK(max_abs(cube - expect) <= 1e-12);

    // Inputs band-limited to N/8: the plain pointwise product is alias-free
    // and fully representable, so the dealiased product must equal it.
    const auto g2 = make_grid(pi, 128);
    const StateField a = random_annulus_field(g2, 0.0, 16.0, 21);
    const StateField b = random_annulus_field(g2, 0.0, 16.0, 22);
    const StateField c = random_annulus_field(g2, 0.0, 16.0, 23);
    StateField plain(g2);
    for (int j = 0; j < g2->size(); ++j)
        plain.values[j] = a.values[j] * b.values[j] * c.values[j];
    CHECK(max_abs(product(a, b, c) - plain) <= 1e-12);

    // Symmetry in the arguments.
    const StateField full1 = random_annulus_field(g2, 0.0, 64.0, 31);
    const StateField full2 = random_annulus_field(g2, 0.0, 64.0, 32);
    const StateField full3 = random_annulus_field(g2, 0.0, 64.0, 33);
    CHECK(max_abs(product(full1, full2, full3) - product(full3, full1, full2)) <= 1e-14);
    CHECK(max_abs(product(full1, full2) - product(full2, full1)) <= 1e-14);

    const auto other = make_grid(pi, 256);
    const StateField wrong(other, 1.0);
    CHECK_THROWS_AS(product(full1, wrong), std::invalid_argument);
    std::vector<const StateField*> one = {&full1};
    CHECK_THROWS_AS(dealiased_product(one), std::invalid_argument);
}

TEST_CASE("exact convolution oracle agrees with the padded product") {
    const auto g = make_grid(pi, 128);
    const StateField a = random_annulus_field(g, 0.0, 60.0, 41);
    const StateField b = random_annulus_field(g, 0.0, 60.0, 42);
    const StateField direct = oracles::conv_exact(a, b);
    CHECK(max_abs(product(a, b) - direct) <= 1e-11 * std::max(1.0, max_abs(direct)));
}

TEST_CASE("trig_interp: collocation values, band-limited exactness, refined-grid oracle") {
    const auto g = make_grid(pi, 64);
    const StateField f = random_annulus_field(g, 0.0, 20.0, 51);
    for (int j : {0, 5, 40, 63})
        CHECK(std::fabs(trig_interp(f, g->nodes()[j]) - f.values[j]) <= 1e-12);

    const StateField c3 = sample(g, [](double x) { return std::cos(3.0 * x); });
    CHECK(trig_interp(c3, 0.1234) == doctest::Approx(std::cos(0.3702)).epsilon(1e-10));

    // Periodic reduction of the query point.
    CHECK(trig_interp(c3, 0.1234 + 2.0 * pi) == doctest::Approx(std::cos(0.3702)).epsilon(1e-10));

    // Smoothed peakon between nodes vs a refined-grid reference.
    const auto gp = make_grid(50.0, 512);
    const StateField pk =
        sample(gp, [](double x) { return gx::io::mollified_peakon(x, 0.05); });
    const StateField ref = refine(pk, 16); // N = 8192 reference grid
    const auto& xr = ref.grid->nodes();
    double worst = 0.0;
    for (int j = 101; j < 8192; j += 1111)
        worst = std::max(worst, std::fabs(trig_interp(pk, xr[j]) - ref.values[j]));
    CHECK(worst <= 1e-8);
}

TEST_CASE("oversampled extrema") {
    const auto g = make_grid(pi, 16);
    const StateField c(g, -3.25);
    for (int f : {1, 2, 4, 16}) CHECK(oversampled_sup(c, f) == doctest::Approx(3.25));

    // Shifted sine whose max falls between nodes.
    const StateField s = sample(g, [](double x) { return std::sin(x + 0.3); });
    double prev = oversampled_sup(s, 1);
    for (int f : {2, 4, 8, 16, 32}) {
        const double cur = oversampled_sup(s, f);
        CHECK(cur >= prev - 1e-15);
        prev = cur;
    }
    CHECK(prev == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(prev >= oversampled_sup(s, 1));

    const auto gp = make_grid(50.0, 512);
    const StateField pk =
        sample(gp, [](double x) { return gx::io::mollified_peakon(x, 0.05); });
    CHECK(std::fabs(oversampled_sup(pk, 4) - oversampled_sup(pk, 16)) <= 1e-6);

    CHECK_THROWS_AS(oversampled_sup(s, 3), std::invalid_argument);
    CHECK_THROWS_AS(oversampled_sup(s, 0), std::invalid_argument);
}

TEST_CASE("parallel kernels match the serial reference") {
    std::mt19937_64 rng(99);
    const std::size_t n = 10000;
    std::vector<double> a(n), b(n), c(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = oracles::rand_u(rng) - 0.5;
        b[i] = oracles::rand_u(rng) - 0.5;
        c[i] = oracles::rand_u(rng) - 0.5;
    }
    namespace k = gx::kernels;
    std::vector<double> y1(n), y2(n);
    k::serial::mul3(a.data(), b.data(), c.data(), y1.data(), n);
    k::omp::mul3(a.data(), b.data(), c.data(), y2.data(), n);
    CHECK(y1 == y2);

    CHECK(k::serial::sum(a.data(), n) == k::omp::sum(a.data(), n));
    CHECK(k::serial::dot(a.data(), b.data(), n) == k::omp::dot(a.data(), b.data(), n));
    CHECK(k::serial::sum_abs_pow(a.data(), 3.0, n) == k::omp::sum_abs_pow(a.data(), 3.0, n));
    CHECK(k::serial::max_abs(a.data(), n) == k::omp::max_abs(a.data(), n));
    CHECK(k::serial::min(a.data(), n) == k::omp::min(a.data(), n));

    // The chunked sum stays near the plain left fold.
    double plain = 0.0;
    for (double v : a) plain += v;
    CHECK(k::serial::sum(a.data(), n) == doctest::Approx(plain).epsilon(1e-13));

    // Whole-pipeline determinism under the parallel switch.
    const auto g = make_grid(pi, 256);
    const StateField f1 = random_annulus_field(g, 0.0, 100.0, 61);
    const StateField f2 = random_annulus_field(g, 0.0, 100.0, 62);
    k::set_parallel(false);
    const StateField p_serial = product(f1, f2);
    k::set_parallel(true);
    const StateField p_omp = product(f1, f2);
    CHECK(p_serial.values == p_omp.values);
}

TEST_SUITE_END();
