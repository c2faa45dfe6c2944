#include "gx/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gx/fft.hpp"
#include "gx/kernels.hpp"

namespace gx::spectral {
namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Embed coarse coefficients (slot order, length N) into a factor*N array.
// The unpaired Nyquist coefficient is split across +/- N/2 on the fine grid,
// which keeps the field real and matches the cosine convention of the
// band-limited interpolant. drop_nyquist discards it instead (used by the
// dealiased products).
std::vector<cplx> pad_coeffs(const SpectralCoeffs& s, int factor, bool drop_nyquist) {
    const int n = s.grid->size();
    const int m = factor * n;
    std::vector<cplx> fine(static_cast<std::size_t>(m), cplx(0.0, 0.0));
    for (int i = 0; i < n / 2; ++i) fine[i] = s.c[i];
    for (int i = n / 2 + 1; i < n; ++i) fine[m - (n - i)] = s.c[i];
    if (!drop_nyquist) {
        const cplx half = 0.5 * s.c[n / 2];
        fine[n / 2] += half;
        fine[m - n / 2] += half;
    }
    return fine;
}

// Project fine coefficients (length M = factor*N) onto the coarse band.
// The coarse Nyquist slot receives the fold of the +/- N/2 fine modes.
SpectralCoeffs project_coarse(const std::vector<cplx>& fine, const GridPtr& g) {
    const int n = g->size();
    const int m = static_cast<int>(fine.size());
    SpectralCoeffs out;
    out.grid = g;
    out.c.assign(static_cast<std::size_t>(n), cplx(0.0, 0.0));
    for (int i = 0; i < n / 2; ++i) out.c[i] = fine[i];
    for (int i = n / 2 + 1; i < n; ++i) out.c[i] = fine[m - (n - i)];
    out.c[n / 2] = fine[n / 2] + fine[m - n / 2];
    return out;
}

void require_same_grid(const StateField& a, const StateField& b) {
    if (!a.grid || !b.grid || !a.grid->same_as(*b.grid))
        throw std::invalid_argument("spectral: fields live on different grids");
}

} // namespace

StateField deriv(const StateField& f, int order) {
    if (order < 1) throw std::invalid_argument("deriv: order must be >= 1");
    SpectralCoeffs s = analyze(f);
    const int n = s.grid->size();
    const auto& k = s.grid->wavenumbers();
    std::vector<cplx> mult(static_cast<std::size_t>(n));
    // (ik)^order; i^order cycles with period 4.
    const int phase = order & 3;
    for (int i = 0; i < n; ++i) {
        const double kp = std::pow(k[i], order);
        switch (phase) {
            case 0: mult[i] = cplx(kp, 0.0); break;
            case 1: mult[i] = cplx(0.0, kp); break;
            case 2: mult[i] = cplx(-kp, 0.0); break;
            default: mult[i] = cplx(0.0, -kp); break;
        }
    }
    if (order % 2 == 1) mult[s.grid->nyquist_slot()] = cplx(0.0, 0.0);
    kernels::apply_cplx_multiplier(s.c.data(), mult.data(), s.c.size());
    return synthesize(s);
}

StateField helmholtz_apply(const StateField& f) {
    SpectralCoeffs s = analyze(f);
    const auto& k = s.grid->wavenumbers();
    std::vector<double> mult(s.c.size());
    for (std::size_t i = 0; i < mult.size(); ++i) mult[i] = 1.0 + k[i] * k[i];
    kernels::apply_real_multiplier(s.c.data(), mult.data(), s.c.size());
    return synthesize(s);
}

StateField helmholtz_inv(const StateField& f) {
    SpectralCoeffs s = analyze(f);
    const auto& k = s.grid->wavenumbers();
    std::vector<double> mult(s.c.size());
    for (std::size_t i = 0; i < mult.size(); ++i) mult[i] = 1.0 / (1.0 + k[i] * k[i]);
    kernels::apply_real_multiplier(s.c.data(), mult.data(), s.c.size());
    return synthesize(s);
}

double kernel_p(double x) { return 0.5 * std::exp(-std::fabs(x)); }

StateField dealiased_product(const std::vector<const StateField*>& fs) {
    if (fs.size() != 2 && fs.size() != 3)
        throw std::invalid_argument("dealiased_product: expected 2 or 3 fields");
    for (const auto* f : fs) require_same_grid(*fs.front(), *f);

    const GridPtr& g = fs.front()->grid;
    const int n = g->size();
    const int m = 2 * n;

    std::vector<std::vector<cplx>> fine_samples;
    fine_samples.reserve(fs.size());
    for (const auto* f : fs) {
        std::vector<cplx> fine = pad_coeffs(analyze(*f), 2, /*drop_nyquist=*/true);
        std::vector<cplx> samples(static_cast<std::size_t>(m));
        fft::backward(fine.data(), samples.data(), m);
        fine_samples.push_back(std::move(samples));
    }

    // Multiply real parts on the fine grid.
    std::vector<double> a(static_cast<std::size_t>(m)), b(a.size()), prod(a.size());
    for (int j = 0; j < m; ++j) {
        a[j] = fine_samples[0][j].real();
        b[j] = fine_samples[1][j].real();
    }
    if (fs.size() == 2) {
        kernels::mul2(a.data(), b.data(), prod.data(), prod.size());
    } else {
        std::vector<double> c(a.size());
        for (int j = 0; j < m; ++j) c[j] = fine_samples[2][j].real();
        kernels::mul3(a.data(), b.data(), c.data(), prod.data(), prod.size());
    }

    std::vector<cplx> buf(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) buf[j] = cplx(prod[j], 0.0);
    std::vector<cplx> spec(static_cast<std::size_t>(m));
    fft::forward(buf.data(), spec.data(), m);

    return synthesize(project_coarse(spec, g));
}

StateField product(const StateField& a, const StateField& b) {
    return dealiased_product({&a, &b});
}

StateField product(const StateField& a, const StateField& b, const StateField& c) {
    return dealiased_product({&a, &b, &c});
}

double trig_interp(const StateField& f, double x) {
    const GridPtr& g = f.grid;
    const int n = g->size();
    const double L = g->half_extent();
    // Reduce to y = (x + L) mod 2L, the phase measured from the left endpoint.
    double y = std::fmod(x + L, 2.0 * L);
    if (y < 0.0) y += 2.0 * L;

    SpectralCoeffs s = analyze(f);
    const double base = std::numbers::pi * y / L;
    double acc = s.c[0].real();
    for (int mmode = 1; mmode < n / 2; ++mmode) {
        const double th = base * mmode;
        acc += 2.0 * (s.c[mmode].real() * std::cos(th) - s.c[mmode].imag() * std::sin(th));
    }
    acc += s.c[n / 2].real() * std::cos(base * (n / 2));
    return acc;
}

StateField refine(const StateField& f, int factor) {
    if (factor < 1 || !is_pow2(factor))
        throw std::invalid_argument("refine: factor must be a power of two >= 1");
    if (factor == 1) return f;
    const GridPtr& g = f.grid;
    const int m = factor * g->size();
    std::vector<cplx> fine = pad_coeffs(analyze(f), factor, /*drop_nyquist=*/false);
    std::vector<cplx> samples(static_cast<std::size_t>(m));
    fft::backward(fine.data(), samples.data(), m);
    StateField out(make_grid(g->half_extent(), m));
    for (int j = 0; j < m; ++j) out.values[j] = samples[j].real();
    return out;
}

double oversampled_sup(const StateField& f, int factor) {
    if (factor == 1) return max_abs(f);
    return max_abs(refine(f, factor));
}

double oversampled_min(const StateField& f, int factor) {
    if (factor == 1) return min_value(f);
    return min_value(refine(f, factor));
}

} // namespace gx::spectral
