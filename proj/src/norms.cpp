#include "gx/norms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "gx/fft.hpp"
#include "gx/kernels.hpp"

namespace gx::analysis {

using spectral::analyze;
using spectral::cplx;
using spectral::SpectralCoeffs;
using spectral::synthesize;

//------------------------------------------------------------------------------
// Plain norms.
//------------------------------------------------------------------------------

double lp_norm(const StateField& f, double p) {
    if (std::isinf(p)) return spectral::oversampled_sup(f, 4);
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    const double dx = f.grid->dx();
    const double s = kernels::sum_abs_pow(f.data(), p, f.values.size());
    return std::pow(dx * s, 1.0 / p);
}

double w1r_norm(const StateField& f, double r) {
    if (r < 1.0) throw std::invalid_argument("w1r_norm: r must be >= 1");
    const StateField fx = spectral::deriv(f, 1);
    const double dx = f.grid->dx();
    const double a = dx * kernels::sum_abs_pow(f.data(), r, f.values.size());
    const double b = dx * kernels::sum_abs_pow(fx.data(), r, fx.values.size());
    return std::pow(a + b, 1.0 / r);
}

double w1inf_norm(const StateField& f, int oversample) {
    const StateField fx = spectral::deriv(f, 1);
    return std::max(spectral::oversampled_sup(f, oversample),
                    spectral::oversampled_sup(fx, oversample));
}

double hs_norm(const StateField& f, double s) {
    const SpectralCoeffs c = analyze(f);
    const auto& k = f.grid->wavenumbers();
    double acc = 0.0;
    for (std::size_t i = 0; i < c.c.size(); ++i)
        acc += std::pow(1.0 + k[i] * k[i], s) * std::norm(c.c[i]);
    return std::sqrt(f.grid->length() * acc);
}

//------------------------------------------------------------------------------
// Dyadic cutoffs. chi is 1 on |xi| <= 1 and 0 beyond 4/3 with a smooth
// g(t)=e^{-1/t} transition; phi telescopes chi between consecutive scales.
//------------------------------------------------------------------------------

namespace {

double smooth_step(double t) {
    // 0 for t <= 0, 1 for t >= 1, C-infinity in between.
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

} // namespace

double cutoff_chi(double xi) {
    const double a = std::fabs(xi);
    return smooth_step((4.0 / 3.0 - a) * 3.0);
}

double cutoff_phi(double xi) { return cutoff_chi(xi / 2.0) - cutoff_chi(xi); }

int lp_j_max(const Grid& g) {
    int j = 0;
    while (std::ldexp(1.0, j + 1) < g.k_max()) ++j;
    return j;
}

namespace {

// Per-grid cutoff tables: block multipliers for j = -1..j_max and the
// low-pass multipliers chi(2^{-j} xi) for j = 0..j_max. Built once, immutable.
struct CutoffTable {
    int j_max;
    std::vector<std::vector<double>> block;     // block[j+1]
    std::vector<std::vector<double>> low_pass;  // low_pass[j], j >= 0
};

const CutoffTable& cutoff_table(const GridPtr& g) {
    static std::mutex mu;
    static std::map<std::pair<int, double>, std::shared_ptr<const CutoffTable>> cache;
    const std::pair<int, double> key{g->size(), g->half_extent()};
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto tab = std::make_shared<CutoffTable>();
        const int n = g->size();
        const auto& k = g->wavenumbers();
        tab->j_max = lp_j_max(*g);
        tab->block.resize(static_cast<std::size_t>(tab->j_max + 2));
        for (int j = -1; j <= tab->j_max; ++j) {
            auto& w = tab->block[static_cast<std::size_t>(j + 1)];
            w.resize(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                w[static_cast<std::size_t>(i)] =
                    (j < 0) ? cutoff_chi(k[i]) : cutoff_phi(std::ldexp(1.0, -j) * k[i]);
        }
        tab->low_pass.resize(static_cast<std::size_t>(tab->j_max + 1));
        for (int j = 0; j <= tab->j_max; ++j) {
            auto& w = tab->low_pass[static_cast<std::size_t>(j)];
            w.resize(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                w[static_cast<std::size_t>(i)] = cutoff_chi(std::ldexp(1.0, -j) * k[i]);
        }
        it = cache.emplace(key, std::move(tab)).first;
    }
    return *it->second;
}

StateField apply_table(const StateField& f, const std::vector<double>& mult) {
    SpectralCoeffs c = analyze(f);
    kernels::apply_real_multiplier(c.c.data(), mult.data(), c.c.size());
    return synthesize(c);
}

} // namespace

StateField LPDecomposition::low_pass(int j) const {
    if (j <= -1) return StateField(grid, 0.0);
    const CutoffTable& tab = cutoff_table(grid);
    const int jj = std::min(j, tab.j_max);
    return apply_table(source_, tab.low_pass[static_cast<std::size_t>(jj)]);
}

LPDecomposition lp_decompose(const StateField& f) {
    const CutoffTable& tab = cutoff_table(f.grid);
    LPDecomposition out;
    out.grid = f.grid;
    out.j_max = tab.j_max;
    out.source_ = f;
    out.blocks.reserve(tab.block.size());
    for (const auto& w : tab.block) out.blocks.push_back(apply_table(f, w));
    return out;
}

double besov_norm(const StateField& f, double s, double p, double r) {
    if (p < 1.0 || r < 1.0) throw std::invalid_argument("besov_norm: p, r must be >= 1");
    const LPDecomposition d = lp_decompose(f);
    double acc = 0.0;
    double worst = 0.0;
    for (int j = -1; j <= d.j_max; ++j) {
        const double term = std::pow(2.0, j * s) * lp_norm(d.block(j), p);
        if (std::isinf(r))
            worst = std::max(worst, term);
        else
            acc += std::pow(term, r);
    }
    return std::isinf(r) ? worst : std::pow(acc, 1.0 / r);
}

StateField paraproduct_T(const StateField& a, const StateField& f) {
    if (!a.grid->same_as(*f.grid))
        throw std::invalid_argument("paraproduct_T: fields live on different grids");
    const LPDecomposition da = lp_decompose(a);
    const LPDecomposition df = lp_decompose(f);
    StateField acc(a.grid, 0.0);
    for (int j = 1; j <= df.j_max; ++j) {
        const StateField s = da.low_pass(j - 1);
        add_scaled(acc, 1.0, spectral::product(s, df.block(j)));
    }
    return acc;
}

StateField remainder_R(const StateField& a, const StateField& f) {
    if (!a.grid->same_as(*f.grid))
        throw std::invalid_argument("remainder_R: fields live on different grids");
    const LPDecomposition da = lp_decompose(a);
    const LPDecomposition df = lp_decompose(f);
    StateField acc(a.grid, 0.0);
    for (int j = -1; j <= df.j_max; ++j) {
        for (int k = std::max(-1, j - 1); k <= std::min(da.j_max, j + 1); ++k) {
            add_scaled(acc, 1.0, spectral::product(da.block(k), df.block(j)));
        }
    }
    return acc;
}

//------------------------------------------------------------------------------
// Random frequency-localized fields and the derivative-scaling check.
//------------------------------------------------------------------------------

namespace {
double rand_u(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53; // [0, 1)
}
} // namespace

StateField random_annulus_field(const GridPtr& g, double k_lo, double k_hi,
                                std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int n = g->size();
    SpectralCoeffs c;
    c.grid = g;
    c.c.assign(static_cast<std::size_t>(n), cplx(0.0, 0.0));
    const auto& k = g->wavenumbers();
    bool any = false;
    for (int i = 1; i < n / 2; ++i) {
        const double ak = std::fabs(k[i]);
        if (ak < k_lo || ak > k_hi) continue;
        const double amp = 0.25 + rand_u(rng);
        const double ph = 2.0 * std::numbers::pi * rand_u(rng);
        c.c[i] = 0.5 * amp * cplx(std::cos(ph), std::sin(ph));
        c.c[static_cast<std::size_t>(n - i)] = std::conj(c.c[i]);
        any = true;
    }
    if (k_lo <= 0.0) {
        c.c[0] = cplx(0.25 + rand_u(rng), 0.0);
        any = true;
    }
    if (!any) throw std::invalid_argument("random_annulus_field: empty band on this grid");
    return synthesize(c);
}

BernsteinReport bernstein_check(const GridPtr& g, int j, int k, double p, double q,
                                int ensemble, std::uint64_t seed) {
    if (q < p) throw std::invalid_argument("bernstein_check: requires q >= p");
    const double scale = std::ldexp(1.0, j);
    BernsteinReport rep{1e300, 0.0, 1e300, 0.0};
    for (int e = 0; e < ensemble; ++e) {
        const StateField u =
            random_annulus_field(g, 0.75 * scale, (8.0 / 3.0) * scale, seed + 977u * e);
        const double base = lp_norm(u, p);
        const StateField du = (k == 0) ? u : spectral::deriv(u, k);
        const double ratio = lp_norm(du, p) / (std::pow(scale, k) * base);
        rep.min_ratio = std::min(rep.min_ratio, ratio);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        const double lambda = (8.0 / 3.0) * scale;
        const double embed =
            lp_norm(u, q) / (std::pow(lambda, 1.0 / p - 1.0 / q) * base);
        rep.embed_min = std::min(rep.embed_min, embed);
        rep.embed_max = std::max(rep.embed_max, embed);
    }
    return rep;
}

//------------------------------------------------------------------------------
// Instantaneous monitor report.
//------------------------------------------------------------------------------

NormReport compute_norms(const StateField& u, const StateField& v, double t, double r,
                         double s_hs, int oversample) {
    NormReport rep;
    rep.t = t;
    rep.r = r;
    rep.s = s_hs;

    const StateField ux = spectral::deriv(u, 1);
    const StateField vx = spectral::deriv(v, 1);
    rep.sup_u = spectral::oversampled_sup(u, oversample);
    rep.sup_ux = spectral::oversampled_sup(ux, oversample);
    rep.sup_v = spectral::oversampled_sup(v, oversample);
    rep.sup_vx = spectral::oversampled_sup(vx, oversample);
    rep.w11_u = w1r_norm(u, 1.0);
    rep.w1r_u = w1r_norm(u, r);
    rep.w1inf_u = std::max(rep.sup_u, rep.sup_ux);
    rep.w1inf_v = std::max(rep.sup_v, rep.sup_vx);
    rep.hs_u = hs_norm(u, s_hs);
    rep.hs_v = hs_norm(v, s_hs);
    rep.besov221_u = besov_norm(u, 2.0, 2.0, 1.0);
    rep.besov221_v = besov_norm(v, 2.0, 2.0, 1.0);
    rep.sup_n = spectral::oversampled_sup(spectral::helmholtz_apply(v), oversample);
    rep.min_ux = spectral::oversampled_min(ux, oversample);

    // Conserved integrals from the coefficients (exact for the interpolants):
    // int m = 2L * u_hat(0); int u m = 2L * sum (1+k^2) |u_hat|^2.
    const SpectralCoeffs cu = analyze(u);
    const auto& k = u.grid->wavenumbers();
    rep.int_m = u.grid->length() * cu.c[0].real();
    double um = 0.0;
    for (std::size_t i = 0; i < cu.c.size(); ++i)
        um += (1.0 + k[i] * k[i]) * std::norm(cu.c[i]);
    rep.int_um = u.grid->length() * um;

    rep.criterion_integrand = rep.w1inf_u * rep.w1inf_v;
    return rep;
}

} // namespace gx::analysis
