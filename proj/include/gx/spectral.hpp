#pragma once
//==============================================================================
// spectral.hpp
// Periodic-domain spectral primitives.
//   - deriv:           spectral d^order/dx^order (Nyquist zeroed for odd orders)
//   - helmholtz_apply: f - f_xx via the 1+k^2 multiplier
//   - helmholtz_inv:   (1 - d_xx)^{-1} f via 1/(1+k^2); equals the periodized
//                      convolution with kernel_p
//   - kernel_p:        p(x) = (1/2) e^{-|x|}, the Green function of 1 - d_xx
//   - dealiased_product: pointwise product of 2 or 3 fields computed on a
//                      2x zero-padded grid and projected back, so cubic
//                      aliasing is removed exactly (input Nyquist modes are
//                      dropped; the result is the exact band-limited product)
//   - trig_interp:     value of the band-limited interpolant at any x
//   - oversampled sup/min: extrema over a zero-padding-refined grid
//==============================================================================

#include <vector>

#include "gx/field.hpp"

namespace gx::spectral {

StateField deriv(const StateField& f, int order);
StateField helmholtz_apply(const StateField& f);
StateField helmholtz_inv(const StateField& f);

double kernel_p(double x);

StateField dealiased_product(const std::vector<const StateField*>& fs);
StateField product(const StateField& a, const StateField& b);
StateField product(const StateField& a, const StateField& b, const StateField& c);

// x is reduced modulo the period internally.
double trig_interp(const StateField& f, double x);

// Samples of the band-limited interpolant on the factor-refined grid
// (factor a power of two >= 1; the refined nodes contain the original ones).
StateField refine(const StateField& f, int factor);

double oversampled_sup(const StateField& f, int factor = 4);
double oversampled_min(const StateField& f, int factor = 4);

} // namespace gx::spectral
