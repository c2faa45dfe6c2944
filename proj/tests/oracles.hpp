#pragma once
//==============================================================================
// oracles.hpp (test-only)
// Independent reference computations used to pin expected values:
//   - fd_second_deriv:   4th-order centered finite differences
//   - conv_exact:        direct O(N^2) coefficient convolution (no padding,
//                        no pointwise products; independent of the FFT route)
//   - line_convolution:  quadrature for p*f = int (1/2) e^{-|x-y|} f(y) dy on
//                        a 16x refined grid, piecewise-cubic in f and exact in
//                        the exponential (Gauss-Legendre in the local variable)
//   - gaussian_p_conv:   the closed form of p * (A e^{-y^2/(2 sigma^2)})
//==============================================================================

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "gx/field.hpp"
#include "gx/spectral.hpp"

namespace oracles {

using gx::spectral::StateField;

// 4th-order centered finite differences for f'' on the field's own grid.
inline StateField fd_second_deriv(const StateField& f) {
    const int n = f.size();
    const double h = f.grid->dx();
    StateField out(f.grid);
    auto at = [&](int j) { return f.values[((j % n) + n) % n]; };
    for (int j = 0; j < n; ++j) {
        out.values[j] =
            (-at(j - 2) + 16.0 * at(j - 1) - 30.0 * at(j) + 16.0 * at(j + 1) - at(j + 2)) /
            (12.0 * h * h);
    }
    return out;
}

// Direct convolution of the spectral coefficients, truncated to the grid band
// (Nyquist dropped on input and output).
inline StateField conv_exact(const StateField& a, const StateField& b) {
    const int n = a.size();
    const auto ca = gx::spectral::analyze(a);
    const auto cb = gx::spectral::analyze(b);
    auto mode_of = [&](int slot) { return slot < n / 2 ? slot : slot - n; };
    auto slot_of = [&](int mode) { return mode >= 0 ? mode : mode + n; };
    gx::spectral::SpectralCoeffs out;
    out.grid = a.grid;
    out.c.assign(n, {0.0, 0.0});
    for (int ks = 0; ks < n; ++ks) {
        const int k = mode_of(ks);
        if (k == -n / 2) continue;
        std::complex<double> acc = 0.0;
        for (int is = 0; is < n; ++is) {
            const int i = mode_of(is);
            if (i == -n / 2) continue;
            const int j = k - i;
            if (j <= -n / 2 || j >= n / 2) continue;
            acc += ca.c[is] * cb.c[slot_of(j)];
        }
        out.c[ks] = acc;
    }
    return gx::spectral::synthesize(out);
}

// Quadrature for the line convolution (p * f)(x_i) at the coarse nodes.
// f is refined 16x by trigonometric interpolation; on each fine interval f is
// replaced by the cubic through its four surrounding samples and integrated
// against e^{+-y} exactly up to a 5-point Gauss-Legendre rule in the local
// variable (error ~ h^10). Kernel tails beyond the domain are dropped; they
// are O(e^{-L}) for centered localized data.
inline std::vector<double> line_convolution(const StateField& f, int refine_factor = 16) {
    const StateField fine = gx::spectral::refine(f, refine_factor);
    const int m = fine.size();
    const int n = f.size();
    const double h = fine.grid->dx();
    const auto& y = fine.grid->nodes();

    // 5-point Gauss-Legendre on [0, 1].
    static const double gl_x[5] = {0.04691007703066800, 0.23076534494715845, 0.5,
                                   0.76923465505284155, 0.95308992296933200};
    static const double gl_w[5] = {0.11846344252809454, 0.23931433524968324,
                                   0.28444444444444444, 0.23931433524968324,
                                   0.11846344252809454};
    // Cubic Lagrange basis through samples at s = -1, 0, 1, 2 evaluated at s.
    auto lag = [](double s, int k) {
        switch (k) {
            case 0: return -s * (s - 1.0) * (s - 2.0) / 6.0;
            case 1: return (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
            case 2: return -(s + 1.0) * s * (s - 2.0) / 2.0;
            default: return (s + 1.0) * s * (s - 1.0) / 6.0;
        }
    };

    auto wrap = [&](int j) { return ((j % m) + m) % m; };
    // Per-interval moments against e^{+s h} and e^{-s h}.
    std::vector<double> plus(m), minus(m);
    for (int j = 0; j < m; ++j) {
        double p = 0.0, q = 0.0;
        for (int g = 0; g < 5; ++g) {
            double val = 0.0;
            for (int k = 0; k < 4; ++k)
                val += fine.values[wrap(j - 1 + k)] * lag(gl_x[g], k);
            p += gl_w[g] * val * std::exp(gl_x[g] * h);
            q += gl_w[g] * val * std::exp(-gl_x[g] * h);
        }
        plus[j] = h * p;
        minus[j] = h * q;
    }

    // Prefix sums: S[j] = sum_{j' < j} e^{y_{j'}} plus[j']  (intervals left),
    //              T[j] = sum_{j' >= j} e^{-y_{j'}} minus[j'] (intervals right).
    std::vector<double> S(m + 1, 0.0), T(m + 1, 0.0);
    for (int j = 0; j < m; ++j) S[j + 1] = S[j] + std::exp(y[j]) * plus[j];
    for (int j = m - 1; j >= 0; --j) T[j] = T[j + 1] + std::exp(-y[j]) * minus[j];

    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const int jx = i * refine_factor; // coarse node on the fine grid
        const double x = y[jx];
        out[i] = 0.5 * (std::exp(-x) * S[jx] + std::exp(x) * T[jx]);
    }
    return out;
}

// Closed form of p * (A e^{-y^2/(2 sigma^2)}) via the normal CDF.
inline double gaussian_p_conv(double x, double amplitude, double sigma) {
    auto Phi = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
    const double c = 0.5 * amplitude * sigma * std::sqrt(2.0 * M_PI) *
                     std::exp(0.5 * sigma * sigma);
    return c * (std::exp(-x) * Phi((x - sigma * sigma) / sigma) +
                std::exp(x) * (1.0 - Phi((x + sigma * sigma) / sigma)));
}

inline double rand_u(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace oracles
