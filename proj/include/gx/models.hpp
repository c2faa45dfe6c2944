#pragma once
//==============================================================================
// models.hpp
// Right-hand sides of the Geng-Xue system and its two-component b-family
// generalization, in both forms:
//
//   nonlocal (u,v) form:
//     u_t = -u v u_x - p * ( b u v u_x + (3-b) u_x v u_xx
//                            + 2 u v_x u_xx + 2 u_x^2 v_x + u v_xx u_x )
//     v_t = the same with u and v exchanged; b = 3 recovers Geng-Xue.
//
//   transport (m,n) form, m = u - u_xx, n = v - v_xx:
//     m_t = -(u v m_x + b v u_x m),   n_t = -(u v n_x + b u v_x n)
//
// p*g is evaluated as the 1/(1+k^2) multiplier. All products are dealiased;
// the (u,v) form uses exact triple products of its monomials while the (m,n)
// form builds the advection speed uv once and nests binary products, so the
// two formulations differ exactly by the Galerkin truncation of intermediate
// spectra (roundoff on band-limited data).
//==============================================================================

#include <string>

#include "gx/field.hpp"
#include "gx/spectral.hpp"

namespace gx::models {

using spectral::StateField;

enum class Family { geng_xue, b_family };
enum class Formulation { uv_nonlocal, mn_transport };

struct ModelParams {
    Family family = Family::geng_xue;
    double b = 3.0;        // only meaningful for b_family
    double r = 1.0;        // Sobolev index used by the certificates
    Formulation formulation = Formulation::uv_nonlocal;

    double effective_b() const { return family == Family::geng_xue ? 3.0 : b; }
};

struct StatePair {
    StateField u;
    StateField v;
    double t = 0.0;

    bool finite() const { return u.finite() && v.finite(); }
};

struct Tendency {
    StateField du;
    StateField dv;
};

// Geng-Xue (u,v) tendencies (the b = 3 system, coded without the (3-b) term).
Tendency gx_rhs(const StatePair& s);

// b-family (u,v) tendencies.
Tendency bfam_rhs(const StatePair& s, double b);

// Transport-form tendencies (dm, dn) computed from the (u,v) state; callers
// evolving (m, n) recover (u, v) through helmholtz_inv.
Tendency mn_rhs(const StatePair& s, double b);

// Tendency of (u,v) in the selected formulation: uv_nonlocal directly, or
// helmholtz_inv of the (m,n) tendencies (identical dynamics, since the
// Helmholtz multiplier commutes with the time integrator).
Tendency eval_rhs(const StatePair& s, const ModelParams& p);

enum class ReductionKind { dp, novikov, b3 };

struct ReductionReport {
    ReductionKind kind;
    double max_discrepancy_u = 0.0;
    double max_discrepancy_v = 0.0;
    std::string detail;
};

// Cross-checks the named reduction: b3 compares bfam_rhs(.,3) against gx_rhs;
// novikov (u == v) compares the two tendency components; dp (v == 1) compares
// the (u,v)-form tendency against the transport-form tendency mapped through
// helmholtz_inv. Throws if the state violates the reduction hypothesis.
ReductionReport reduction_check(ReductionKind kind, const StatePair& s, double b);

} // namespace gx::models
