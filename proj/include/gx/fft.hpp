#pragma once
//==============================================================================
// fft.hpp
// Thin wrapper around FFTW for periodic complex transforms.
//   - Plans are cached per size and created with FFTW_ESTIMATE | FFTW_UNALIGNED
//     so plan choice (and therefore every result bit) is reproducible and the
//     plans can execute on arbitrary caller buffers.
//   - forward() includes the 1/n scaling, so coefficients are the discrete
//     Fourier coefficients d_m = (1/n) sum_j f_j e^{-2 pi i j m / n}.
//   - backward() is the plain synthesis sum (no scaling).
// Plan creation is serialized internally (the FFTW planner is not thread safe);
// execution is reentrant.
//==============================================================================

#include <complex>
#include <cstddef>

namespace gx::fft {

using cplx = std::complex<double>;

// Forward transform with 1/n scaling. in and out may alias.
void forward(const cplx* in, cplx* out, int n);

// Unscaled inverse transform. in and out may alias.
void backward(const cplx* in, cplx* out, int n);

} // namespace gx::fft
