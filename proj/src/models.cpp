#include "gx/models.hpp"

#include <cmath>
#include <stdexcept>

namespace gx::models {

using spectral::deriv;
using spectral::helmholtz_apply;
using spectral::helmholtz_inv;
using spectral::product;

namespace {

void require_finite(const StatePair& s, const char* who) {
    if (!s.finite()) throw std::invalid_argument(std::string(who) + ": non-finite state");
}

// One component of the (u,v)-form tendency; (f, g) stands for (u, v) and the
// v-equation is the same expression with the roles exchanged.
StateField uv_component(const StateField& f, const StateField& g, double b,
                        bool include_3mb_term) {
    const StateField fx = deriv(f, 1);
    const StateField fxx = deriv(f, 2);
    const StateField gx = deriv(g, 1);
    const StateField gxx = deriv(g, 2);

    const StateField fgfx = product(f, g, fx); // u v u_x, reused inside p*

    StateField conv = b * fgfx;
    if (include_3mb_term && b != 3.0)
        add_scaled(conv, 3.0 - b, product(fx, g, fxx));
    add_scaled(conv, 2.0, product(f, gx, fxx));
    add_scaled(conv, 2.0, product(fx, fx, gx));
    add_scaled(conv, 1.0, product(f, gxx, fx));

    StateField df = -1.0 * fgfx;
    add_scaled(df, -1.0, helmholtz_inv(conv));
    return df;
}

} // namespace

Tendency gx_rhs(const StatePair& s) {
    require_finite(s, "gx_rhs");
    return {uv_component(s.u, s.v, 3.0, false), uv_component(s.v, s.u, 3.0, false)};
}

Tendency bfam_rhs(const StatePair& s, double b) {
    require_finite(s, "bfam_rhs");
    return {uv_component(s.u, s.v, b, true), uv_component(s.v, s.u, b, true)};
}

Tendency mn_rhs(const StatePair& s, double b) {
    require_finite(s, "mn_rhs");
    const StateField m = helmholtz_apply(s.u);
    const StateField n = helmholtz_apply(s.v);
    const StateField mx = deriv(m, 1);
    const StateField nx = deriv(n, 1);
    const StateField ux = deriv(s.u, 1);
    const StateField vx = deriv(s.v, 1);
    const StateField w = product(s.u, s.v); // advection speed

    StateField dm = -1.0 * product(w, mx);
    add_scaled(dm, -b, product(product(s.v, ux), m));

    StateField dn = -1.0 * product(w, nx);
    add_scaled(dn, -b, product(product(s.u, vx), n));
    return {std::move(dm), std::move(dn)};
}

Tendency eval_rhs(const StatePair& s, const ModelParams& p) {
    const double b = p.effective_b();
    if (p.formulation == Formulation::uv_nonlocal) {
        return p.family == Family::geng_xue ? gx_rhs(s) : bfam_rhs(s, b);
    }
    Tendency t = mn_rhs(s, b);
    return {helmholtz_inv(t.du), helmholtz_inv(t.dv)};
}

ReductionReport reduction_check(ReductionKind kind, const StatePair& s, double b) {
    require_finite(s, "reduction_check");
    ReductionReport rep;
    rep.kind = kind;
    switch (kind) {
        case ReductionKind::b3: {
            const Tendency a = bfam_rhs(s, 3.0);
            const Tendency g = gx_rhs(s);
            rep.max_discrepancy_u = max_abs(a.du - g.du);
            rep.max_discrepancy_v = max_abs(a.dv - g.dv);
            rep.detail = "bfam(b=3) vs geng-xue";
            break;
        }
        case ReductionKind::novikov: {
            const double scale = std::max(1.0, max_abs(s.u));
            if (max_abs(s.u - s.v) > 1e-12 * scale)
                throw std::invalid_argument("reduction_check: novikov needs u == v");
            const Tendency g = gx_rhs(s);
            rep.max_discrepancy_u = max_abs(g.du - g.dv);
            rep.max_discrepancy_v = rep.max_discrepancy_u;
            rep.detail = "du vs dv under u == v";
            break;
        }
        case ReductionKind::dp: {
            StateField ones(s.v.grid, 1.0);
            if (max_abs(s.v - ones) > 1e-12)
                throw std::invalid_argument("reduction_check: dp needs v == 1");
            const Tendency a = bfam_rhs(s, b);
            Tendency t = mn_rhs(s, b);
            const StateField du_mn = spectral::helmholtz_inv(t.du);
            const StateField dv_mn = spectral::helmholtz_inv(t.dv);
            rep.max_discrepancy_u = max_abs(a.du - du_mn);
            rep.max_discrepancy_v = max_abs(a.dv - dv_mn);
            rep.detail = "(u,v)-form vs transport-form tendency, v == 1";
            break;
        }
    }
    return rep;
}

} // namespace gx::models
