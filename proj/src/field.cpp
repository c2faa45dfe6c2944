#include "gx/field.hpp"

#include <cmath>
#include <stdexcept>

#include "gx/fft.hpp"
#include "gx/kernels.hpp"

namespace gx::spectral {

bool StateField::finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

StateField sample(const GridPtr& g, const std::function<double(double)>& f) {
    StateField out(g);
    const auto& x = g->nodes();
    for (int j = 0; j < g->size(); ++j) out.values[j] = f(x[j]);
    return out;
}

double SpectralCoeffs::hermitian_defect() const {
    const int n = grid->size();
    double worst = 0.0;
    double scale = 0.0;
    for (const auto& z : c) scale = std::max(scale, std::abs(z));
    if (scale == 0.0) return 0.0;
    for (int i = 1; i < n; ++i) {
        const cplx d = c[i] - std::conj(c[(n - i) % n]);
        worst = std::max(worst, std::abs(d));
    }
    worst = std::max(worst, std::fabs(c[0].imag()));
    return worst / scale;
}

SpectralCoeffs analyze(const StateField& f) {
    const int n = f.grid->size();
    SpectralCoeffs out;
    out.grid = f.grid;
    out.c.resize(n);
    std::vector<cplx> buf(n);
    for (int j = 0; j < n; ++j) buf[j] = cplx(f.values[j], 0.0);
    fft::forward(buf.data(), out.c.data(), n);
    return out;
}

StateField synthesize(const SpectralCoeffs& s) {
    const int n = s.grid->size();
    std::vector<cplx> buf(n);
    fft::backward(s.c.data(), buf.data(), n);
    StateField out(s.grid);
    for (int j = 0; j < n; ++j) out.values[j] = buf[j].real();
    return out;
}

StateField& add_scaled(StateField& y, double a, const StateField& x) {
    kernels::axpy(a, x.data(), y.data(), y.values.size());
    return y;
}

StateField operator+(const StateField& a, const StateField& b) {
    StateField out = a;
    add_scaled(out, 1.0, b);
    return out;
}

StateField operator-(const StateField& a, const StateField& b) {
    StateField out = a;
    add_scaled(out, -1.0, b);
    return out;
}

StateField operator*(double s, const StateField& a) {
    StateField out = a;
    kernels::scale(out.data(), s, out.values.size());
    return out;
}

double max_abs(const StateField& f) { return kernels::max_abs(f.data(), f.values.size()); }
double min_value(const StateField& f) { return kernels::min(f.data(), f.values.size()); }

} // namespace gx::spectral
