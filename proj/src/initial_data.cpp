#include "gx/initial_data.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gx/certificates.hpp"
#include "gx/norms.hpp"
#include "gx/spectral.hpp"

namespace gx::io {

using models::StatePair;
using spectral::GridPtr;
using spectral::StateField;

namespace {

constexpr double kBoundaryDecay = 1e-14;

double bump(double s) { return std::fabs(s) < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0; }

// Unit-mass normalization of the bump, computed once.
double bump_mass() {
    static const double mass = [] {
        const int n = 4000;
        double acc = 0.0;
        const double h = 2.0 / n;
        for (int i = 0; i < n; ++i) {
            const double a = -1.0 + i * h;
            acc += h / 6.0 * (bump(a) + 4.0 * bump(a + 0.5 * h) + bump(a + h));
        }
        return acc;
    }();
    return mass;
}

double simpson(double a, double b, int n, const std::function<double(double)>& f) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return acc * h / 3.0;
}

void check_boundary_decay(const StateField& f, double offset, const char* name) {
    const double left = std::fabs(f.values.front() - offset);
    const double right = std::fabs(f.values.back() - offset);
    if (left > kBoundaryDecay || right > kBoundaryDecay) {
        std::ostringstream msg;
        msg << "build_initial: " << name << " fails the boundary decay requirement ("
            << std::max(left, right) << " > " << kBoundaryDecay
            << " at the domain edge); enlarge L or shrink the profile";
        throw std::runtime_error(msg.str());
    }
}

// Smooth flat-topped positive bump, ~1 on |y| <~ 1 and below 1e-14 by |y| ~ 1.6.
double plateau(double y) { return std::exp(-std::pow(y, 8)); }

// Odd profile with minimal derivative -1 at 0, decaying like a Gaussian.
double slope_profile(double y) { return -y * std::exp(-0.5 * y * y); }

} // namespace

double mollified_peakon(double x, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("mollified_peakon: h must be positive");
    const double c = 1.0 / bump_mass();
    auto w = [&](double s) { return c * bump(s); };
    if (std::fabs(x) > h) {
        // e^{-|x|} * integral of w(s) e^{sign(x) h s} ds (exact split, no kink).
        static thread_local double cached_h = -1.0;
        static thread_local double cached_m = 0.0;
        if (cached_h != h) {
            cached_m = simpson(-1.0, 1.0, 800,
                               [&](double s) { return w(s) * std::cosh(h * s); });
            cached_h = h;
        }
        return std::exp(-std::fabs(x)) * cached_m;
    }
    // Kink inside the mollifier support: split the integral at s = x/h.
    auto f = [&](double s) { return w(s) * std::exp(-std::fabs(x - h * s)); };
    const double split = x / h;
    return simpson(-1.0, split, 800, f) + simpson(split, 1.0, 800, f);
}

namespace {

InitialData build_gaussian(const InitialSpec& sp, const GridPtr& grid) {
    InitialData out;
    auto gaussian = [](double x, double amp, double c, double w, double off) {
        return off + (amp == 0.0 ? 0.0 : amp * std::exp(-0.5 * (x - c) * (x - c) / (w * w)));
    };
    out.state.u = spectral::sample(grid, [&](double x) {
        return gaussian(x, sp.u_amplitude, sp.u_center, sp.u_width, sp.u_offset);
    });
    out.state.v = spectral::sample(grid, [&](double x) {
        return gaussian(x, sp.v_amplitude, sp.v_center, sp.v_width, sp.v_offset);
    });
    check_boundary_decay(out.state.u, sp.u_offset, "u0");
    check_boundary_decay(out.state.v, sp.v_offset, "v0");
    std::ostringstream prov;
    prov << "gaussian_pair: u = " << sp.u_offset << " + " << sp.u_amplitude
         << " exp(-(x-" << sp.u_center << ")^2/(2*" << sp.u_width << "^2)), v = "
         << sp.v_offset << " + " << sp.v_amplitude << " exp(-(x-" << sp.v_center
         << ")^2/(2*" << sp.v_width << "^2))";
    out.provenance = prov.str();
    out.x0 = sp.v_center;
    return out;
}

InitialData build_peakon_pair(const InitialSpec& sp, const GridPtr& grid) {
    InitialData out;
    const double h = sp.mollify_scale;
    out.state.u = spectral::sample(grid, [&](double x) {
        return sp.u_offset + sp.u_amplitude * mollified_peakon(x - sp.u_center, h);
    });
    out.state.v = spectral::sample(grid, [&](double x) {
        return sp.v_offset + sp.v_amplitude * mollified_peakon(x - sp.v_center, h);
    });
    check_boundary_decay(out.state.u, sp.u_offset, "u0");
    check_boundary_decay(out.state.v, sp.v_offset, "v0");
    std::ostringstream prov;
    prov << "smoothed_peakon_pair: amplitudes (" << sp.u_amplitude << ", " << sp.v_amplitude
         << "), centers (" << sp.u_center << ", " << sp.v_center << "), mollified at scale "
         << h;
    out.provenance = prov.str();
    out.x0 = sp.v_center;
    return out;
}

InitialData build_steep_certified(const InitialSpec& sp, const GridPtr& grid,
                                  const models::ModelParams& params) {
    if (!(sp.v0_at_x0 > 0.0))
        throw std::runtime_error("build_initial: steep_certified needs v0_at_x0 > 0");

    // v0: positive plateau with v0(x0) given. Fixed once; only u0 is bisected.
    const StateField v0 = spectral::sample(grid, [&](double x) {
        return sp.v0_at_x0 * plateau((x - sp.x0) / sp.v_plateau_width);
    });
    check_boundary_decay(v0, 0.0, "v0");

    const double delta = sp.slope_width;
    auto u_for = [&](double amp) {
        return spectral::sample(grid, [&](double x) {
            return amp * slope_profile((x - sp.x0) / delta);
        });
    };

    // Residual in multiplier units: u0_x(x0)/threshold - multiplier. The
    // threshold is recomputed from the discrete norms at every amplitude.
    auto residual = [&](double amp) {
        StatePair s{u_for(amp), v0, 0.0};
        const auto cert = certificates::certify_blowup(s, params, sp.x0);
        return cert.u0x_at_x0 / cert.slope_threshold - sp.multiplier;
    };

    // Bracket by geometric scan; residual(eps) == -multiplier < 0 and a root
    // requires the slope to outgrow the (cubically growing) threshold.
    double lo = 1e-9, hi = 0.0;
    double r_lo = residual(lo);
    double a = lo;
    for (int k = 0; k < 72 && hi == 0.0; ++k) {
        const double b = a * 2.0;
        const double r_b = residual(b);
        if ((r_lo < 0.0) != (r_b < 0.0)) {
            hi = b;
            break;
        }
        a = b;
        r_lo = r_b;
        if (!u_for(b).finite()) break;
    }
    if (hi == 0.0) {
        std::ostringstream msg;
        msg << "build_initial: steep_certified bisection found no bracket for amplitudes in "
               "[1e-9, "
            << a << "]: the discrete slope at x0 never reaches multiplier * threshold "
            << "(the threshold grows cubically with the norms that the amplitude itself "
            << "inflates). Residual at the last amplitude: " << r_lo;
        throw std::runtime_error(msg.str());
    }

    lo = a;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double r_mid = residual(mid);
        if (std::fabs(r_mid) <= 1e-10 || (hi - lo) <= 1e-16 * hi) {
            lo = hi = mid;
            break;
        }
        if ((r_mid < 0.0) == (residual(lo) < 0.0))
            lo = mid;
        else
            hi = mid;
    }
    const double amp = 0.5 * (lo + hi);

    InitialData out;
    out.state.u = u_for(amp);
    out.state.v = v0;
    out.x0 = sp.x0;
    check_boundary_decay(out.state.u, 0.0, "u0");
    const auto cert = certificates::certify_blowup(out.state, params, sp.x0);
    std::ostringstream prov;
    prov << "steep_certified: amplitude " << amp << " solved by bisection so that "
         << "u0_x(x0) = " << cert.u0x_at_x0 << " = " << sp.multiplier
         << " * threshold (threshold " << cert.slope_threshold << "), v0(x0) = "
         << cert.v0_at_x0 << ", norm sum " << cert.norm_sum;
    out.provenance = prov.str();
    return out;
}

InitialData build_from_file(const InitialSpec& sp, const GridPtr& grid) {
    std::ifstream in(sp.file);
    if (!in) throw std::runtime_error("build_initial: cannot open samples file " + sp.file);
    InitialData out;
    out.state.u = StateField(grid);
    out.state.v = StateField(grid);
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("x,", 0) == 0) continue;
        double x, u, v;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &u, &v) != 3)
            throw std::runtime_error("build_initial: malformed samples row: " + line);
        if (row >= grid->size())
            throw std::runtime_error("build_initial: samples file has more rows than grid points");
        out.state.u.values[row] = u;
        out.state.v.values[row] = v;
        ++row;
    }
    if (row != grid->size()) {
        std::ostringstream msg;
        msg << "build_initial: samples file has " << row << " rows but the grid has "
            << grid->size() << " points";
        throw std::runtime_error(msg.str());
    }
    out.provenance = "samples_file: " + sp.file;
    return out;
}

} // namespace

InitialData build_initial(const InitialSpec& spec, const GridPtr& grid,
                          const models::ModelParams& params) {
    InitialData out;
    switch (spec.kind) {
        case InitialKind::gaussian_pair: out = build_gaussian(spec, grid); break;
        case InitialKind::smoothed_peakon_pair: out = build_peakon_pair(spec, grid); break;
        case InitialKind::steep_certified: out = build_steep_certified(spec, grid, params); break;
        case InitialKind::samples_file: out = build_from_file(spec, grid); break;
    }
    out.state.t = 0.0;
    if (!out.state.finite()) throw std::runtime_error("build_initial: non-finite initial data");
    return out;
}

} // namespace gx::io
