#pragma once
//==============================================================================
// norms.hpp
// Lebesgue/Sobolev/Besov norms and the dyadic frequency machinery.
//
// The dyadic cutoffs are the standard smooth pair: chi equals 1 on |xi| <= 1,
// vanishes for |xi| >= 4/3, built from the C-infinity transition
// g(t)=e^{-1/t}; phi(xi) = chi(xi/2) - chi(xi) is supported in the annulus
// 1 < |xi| < 8/3. Block j >= 0 applies phi(2^{-j} xi); block -1 applies chi.
// J_max is the smallest J with 2^{J+1} >= k_max so the partition of unity is
// exact on every grid mode (higher blocks vanish identically on the grid).
// Frequencies are the grid's physical wavenumbers, so Besov values are only
// comparable between runs sharing a grid.
//==============================================================================

#include <cstdint>
#include <limits>
#include <vector>

#include "gx/field.hpp"
#include "gx/spectral.hpp"

namespace gx::analysis {

using spectral::Grid;
using spectral::GridPtr;
using spectral::StateField;

// Discrete L^p on the uniform grid (exact trapezoid weights); p = infinity
// (use lp_inf) takes the oversampled sup.
double lp_norm(const StateField& f, double p);
inline constexpr double lp_inf = std::numeric_limits<double>::infinity();

// (||f||_r^r + ||f_x||_r^r)^{1/r}. One convention, used consistently by every
// certificate constant.
double w1r_norm(const StateField& f, double r);

// max(sup |f|, sup |f_x|) with oversampled sups.
double w1inf_norm(const StateField& f, int oversample = 4);

// (2L sum_k (1+k^2)^s |f_k|^2)^{1/2}; equals lp_norm(f,2) at s = 0.
double hs_norm(const StateField& f, double s);

// Smooth radial cutoffs evaluated at |xi|.
double cutoff_chi(double xi);
double cutoff_phi(double xi);

struct LPDecomposition {
    GridPtr grid;
    int j_max = 0;                     // blocks run j = -1 .. j_max
    std::vector<StateField> blocks;    // blocks[j + 1] is Delta_j
    const StateField& block(int j) const { return blocks[static_cast<std::size_t>(j + 1)]; }

    // S_j f: multiplier chi(2^{-j} xi) (zero field for j <= -1).
    StateField low_pass(int j) const;

private:
    friend LPDecomposition lp_decompose(const StateField& f);
    StateField source_;
};

LPDecomposition lp_decompose(const StateField& f);
int lp_j_max(const Grid& g);

double besov_norm(const StateField& f, double s, double p, double r);

// Bony pieces: T_a f = sum_j S_{j-1}a * Delta_j f (dealiased products), and
// the remainder over |j-k| <= 1. a f = T_a f + T_f a + R(a, f).
StateField paraproduct_T(const StateField& a, const StateField& f);
StateField remainder_R(const StateField& a, const StateField& f);

// Derivative scaling ratios ||D^k u||_p / (2^{jk} ||u||_p) over a random
// ensemble of fields frequency-supported in the annulus 2^j [3/4, 8/3];
// embed_* tracks ||u||_q / (lambda^{1/p-1/q} ||u||_p) for the same ensemble.
struct BernsteinReport {
    double min_ratio;
    double max_ratio;
    double embed_min;
    double embed_max;
    bool within(double c0) const { return min_ratio >= 1.0 / c0 && max_ratio <= c0; }
};
BernsteinReport bernstein_check(const GridPtr& g, int j, int k, double p, double q,
                                int ensemble, std::uint64_t seed);

// Random real field with spectrum supported on |k| in [k_lo, k_hi] (physical
// wavenumbers). Shared by the property checks.
StateField random_annulus_field(const GridPtr& g, double k_lo, double k_hi,
                                std::uint64_t seed);

// Everything the run loop monitors at one instant.
struct NormReport {
    double t = 0.0;
    double dt = 0.0;
    double sup_u = 0.0, sup_ux = 0.0, sup_v = 0.0, sup_vx = 0.0;
    double w11_u = 0.0;
    double w1r_u = 0.0, r = 1.0;
    double w1inf_u = 0.0, w1inf_v = 0.0;
    double hs_u = 0.0, hs_v = 0.0, s = 3.0;
    double besov221_u = 0.0, besov221_v = 0.0;
    double sup_n = 0.0;
    double int_m = 0.0, int_um = 0.0;
    double criterion_integrand = 0.0;
    double criterion_integral_cum = 0.0;
    double min_ux = 0.0;
};

NormReport compute_norms(const StateField& u, const StateField& v, double t, double r,
                         double s_hs, int oversample = 4);

} // namespace gx::analysis
