#pragma once
//==============================================================================
// initial_data.hpp
// Initial-data library: Gaussian pairs, mollified peakon pairs, the
// certified-steep construction (amplitude solved by bisection so that
// u0_x(x0) = multiplier * slope_threshold, with the threshold recomputed at
// every iterate because the norms move with the amplitude), and sample files.
// All constructed data must decay below 1e-14 at the domain boundary
// (measured relative to the configured constant offsets).
//==============================================================================

#include <string>

#include "gx/config.hpp"
#include "gx/models.hpp"

namespace gx::io {

struct InitialData {
    models::StatePair state;
    std::string provenance;  // how the fields were built, incl. bisection info
    double x0 = 0.0;         // anchor point for certificates (steep_certified)
};

// Mollified peakon profile e^{-|x|} smoothed with a compactly supported bump
// of half width h (unit mass). Exposed for tests.
double mollified_peakon(double x, double h);

InitialData build_initial(const InitialSpec& spec, const spectral::GridPtr& grid,
                          const models::ModelParams& params);

} // namespace gx::io
