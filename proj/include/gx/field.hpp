#pragma once
//==============================================================================
// field.hpp
// Real sampled fields on a Grid plus their spectral counterparts, with the
// forward/inverse transforms and the small amount of arithmetic the time
// stepper needs. Fields are plain value types and safe to share across
// threads once built.
//==============================================================================

#include <complex>
#include <functional>
#include <vector>

#include "gx/grid.hpp"

namespace gx::spectral {

using cplx = std::complex<double>;

struct StateField {
    GridPtr grid;
    std::vector<double> values;

    StateField() = default;
    explicit StateField(GridPtr g, double fill = 0.0)
        : grid(std::move(g)), values(static_cast<std::size_t>(grid->size()), fill) {}

    int size() const { return grid ? grid->size() : 0; }
    double* data() { return values.data(); }
    const double* data() const { return values.data(); }
    bool finite() const;
};

// Samples f at the collocation nodes.
StateField sample(const GridPtr& g, const std::function<double(double)>& f);

// Spectral coefficients in FFT slot order (see Grid). For real fields the
// coefficients of +/-k are conjugate; hermitian_defect reports the worst
// relative asymmetry.
struct SpectralCoeffs {
    GridPtr grid;
    std::vector<cplx> c;
    double hermitian_defect() const;
};

SpectralCoeffs analyze(const StateField& f);
StateField synthesize(const SpectralCoeffs& s);

// In-place and value arithmetic used by the integrator.
StateField& add_scaled(StateField& y, double a, const StateField& x); // y += a x
StateField operator+(const StateField& a, const StateField& b);
StateField operator-(const StateField& a, const StateField& b);
StateField operator*(double s, const StateField& a);

double max_abs(const StateField& f);
double min_value(const StateField& f);

} // namespace gx::spectral
