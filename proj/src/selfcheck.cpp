#include "gx/selfcheck.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "gx/certificates.hpp"
#include "gx/initial_data.hpp"
#include "gx/models.hpp"
#include "gx/norms.hpp"
#include "gx/spectral.hpp"
#include "gx/timestep.hpp"

namespace gx::selfcheck {

using namespace gx::spectral;
using gx::analysis::lp_norm;
using gx::analysis::random_annulus_field;
using gx::models::StatePair;

namespace {

std::string num(double v) {
    std::ostringstream s;
    s.precision(3);
    s << v;
    return s.str();
}

CheckResult check_bony(int pairs) {
    double worst = 0.0;
    const GridPtr g = make_grid(std::numbers::pi, 256);
    for (int i = 0; i < pairs; ++i) {
        const StateField a = random_annulus_field(g, 0.0, 40.0, 1000 + i);
        const StateField f = random_annulus_field(g, 0.0, 40.0, 5000 + i);
        const StateField af = product(a, f);
        const StateField sum = analysis::paraproduct_T(a, f) + analysis::paraproduct_T(f, a) +
                               analysis::remainder_R(a, f);
        const double rel = lp_norm(af - sum, 2.0) / std::max(lp_norm(af, 2.0), 1e-300);
        worst = std::max(worst, rel);
    }
    return {"bony_identity", worst <= 1e-10, "max relative residual " + num(worst)};
}

CheckResult check_lp_reconstruction(int fields) {
    double worst = 0.0;
    const GridPtr g = make_grid(std::numbers::pi, 256);
    for (int i = 0; i < fields; ++i) {
        const StateField f = random_annulus_field(g, 0.0, 128.0, 300 + i);
        const auto d = analysis::lp_decompose(f);
        StateField acc(g, 0.0);
        for (int j = -1; j <= d.j_max; ++j) add_scaled(acc, 1.0, d.block(j));
        worst = std::max(worst, lp_norm(acc - f, 2.0) / lp_norm(f, 2.0));
    }
    return {"lp_reconstruction", worst <= 1e-10, "max relative defect " + num(worst)};
}

CheckResult check_bernstein() {
    const GridPtr g = make_grid(std::numbers::pi, 512);
    double lo = 1e300, hi = 0.0;
    for (int j = 2; j <= 6; ++j) {
        for (int k = 1; k <= 2; ++k) {
            const auto rep = analysis::bernstein_check(g, j, k, 2.0, 2.0, 20, 42);
            lo = std::min(lo, rep.min_ratio);
            hi = std::max(hi, rep.max_ratio);
        }
    }
    const bool pass = lo >= 1.0 / 8.0 && hi <= 8.0;
    return {"bernstein_ratios", pass, "ratios in [" + num(lo) + ", " + num(hi) + "]"};
}

CheckResult check_w1r_pointwise(int fields) {
    const GridPtr g = make_grid(std::numbers::pi, 256);
    int violations = 0;
    double worst = 0.0;
    const double rs[] = {1.0, 2.0, 3.0, 5.0};
    for (int i = 0; i < fields; ++i) {
        const StateField u = random_annulus_field(g, 0.0, 40.0, 7000 + i);
        const double sup = oversampled_sup(u, 4);
        for (double r : rs) {
            const double lhs = 2.0 * std::pow(sup, r);
            const double rhs = r * std::pow(analysis::w1r_norm(u, r), r);
            worst = std::max(worst, lhs / rhs);
            if (lhs > rhs) ++violations;
        }
    }
    return {"w1r_pointwise_inequality", violations == 0,
            std::to_string(violations) + " violations, max lhs/rhs " + num(worst)};
}

CheckResult check_helmholtz() {
    const GridPtr g = make_grid(50.0, 512);
    const StateField f = sample(g, [](double x) { return std::exp(-0.5 * x * x) * (1 + 0.3 * std::sin(x)); });
    const StateField round = helmholtz_inv(helmholtz_apply(f));
    double worst = max_abs(round - f) / std::max(max_abs(f), 1e-300);
    bool embed_ok = true;
    for (int i = 0; i < 20; ++i) {
        const StateField m = random_annulus_field(g, 0.0, 10.0, 900 + i);
        const StateField u = helmholtz_inv(m);
        const double sm = oversampled_sup(m, 4);
        if (oversampled_sup(u, 4) > sm * (1 + 1e-10)) embed_ok = false;
        if (oversampled_sup(deriv(u, 1), 4) > sm * (1 + 1e-10)) embed_ok = false;
        if (oversampled_sup(deriv(u, 2), 4) > 2 * sm * (1 + 1e-10)) embed_ok = false;
    }
    return {"helmholtz_ops", worst <= 1e-12 && embed_ok,
            "roundtrip defect " + num(worst) + (embed_ok ? ", sup bounds hold" : ", sup bound VIOLATED")};
}

CheckResult check_reductions() {
    const GridPtr g = make_grid(std::numbers::pi, 256);
    const StateField u = random_annulus_field(g, 0.0, 24.0, 11);
    const StateField v = random_annulus_field(g, 0.0, 24.0, 12);
    const StatePair s{u, v, 0.0};
    const auto b3 = models::reduction_check(models::ReductionKind::b3, s, 3.0);
    const StatePair nov{u, u, 0.0};
    const auto nv = models::reduction_check(models::ReductionKind::novikov, nov, 3.0);
    StatePair dp{u, StateField(g, 1.0), 0.0};
    const auto dr = models::reduction_check(models::ReductionKind::dp, dp, 3.0);
    const bool pass = b3.max_discrepancy_u <= 1e-14 && b3.max_discrepancy_v <= 1e-14 &&
                      nv.max_discrepancy_u <= 1e-13 && dr.max_discrepancy_u <= 1e-9 &&
                      dr.max_discrepancy_v <= 1e-9;
    return {"model_reductions", pass,
            "b3 " + num(b3.max_discrepancy_u) + ", novikov " + num(nv.max_discrepancy_u) +
                ", dp " + num(std::max(dr.max_discrepancy_u, dr.max_discrepancy_v))};
}

CheckResult check_riccati() {
    const double bound = certificates::riccati_bound(1.0, 1.0, -2.0);
    const double numeric = certificates::riccati_integrate(1.0, 1.0, -2.0, 1e8);
    const double exact = 0.5 * std::log(3.0);
    const bool pass = std::fabs(bound - exact) <= 1e-12 && std::fabs(numeric - exact) <= 1e-6;
    return {"riccati_saturation", pass,
            "bound " + num(bound) + ", numeric " + num(numeric) + ", exact " + num(exact)};
}

CheckResult check_conservation(bool quick) {
    const int n = quick ? 256 : 512;
    const double t_end = quick ? 0.25 : 1.0;
    const GridPtr g = make_grid(50.0, n);

    models::ModelParams params;
    params.family = models::Family::geng_xue;
    params.formulation = models::Formulation::mn_transport;
    timestep::StepPolicy pol;
    pol.t_end = t_end;
    pol.cfl = 0.1;
    pol.dt_init = 5e-3;
    pol.output_stride = 20;
    timestep::MonitorConfig mon;

    // Degasperis-Procesi reduction (v == 1): integral of m is conserved.
    StatePair dp{sample(g, [](double x) { return 0.8 * std::exp(-0.25 * x * x); }),
                 StateField(g, 1.0), 0.0};
    const auto r1 = timestep::run(dp, params, pol, mon);
    double drift_m = 0.0;
    const double m0 = r1.reports.front().int_m;
    for (const auto& rep : r1.reports)
        drift_m = std::max(drift_m, std::fabs(rep.int_m - m0) / std::fabs(m0));

    // Novikov reduction (u == v): integral of u m is conserved.
    const StateField w = sample(g, [](double x) { return 0.8 * std::exp(-0.25 * x * x); });
    StatePair nov{w, w, 0.0};
    const auto r2 = timestep::run(nov, params, pol, mon);
    double drift_um = 0.0;
    const double um0 = r2.reports.front().int_um;
    for (const auto& rep : r2.reports)
        drift_um = std::max(drift_um, std::fabs(rep.int_um - um0) / std::fabs(um0));

    const bool pass = drift_m <= 1e-8 && drift_um <= 1e-8 &&
                      r1.verdict == timestep::Verdict::completed &&
                      r2.verdict == timestep::Verdict::completed;
    return {"conservation_runs", pass,
            "dp int m drift " + num(drift_m) + ", novikov int um drift " + num(drift_um)};
}

} // namespace

std::vector<CheckResult> run_all(bool quick) {
    std::vector<CheckResult> out;
    out.push_back(check_bony(quick ? 20 : 100));
    out.push_back(check_lp_reconstruction(quick ? 10 : 50));
    out.push_back(check_bernstein());
    out.push_back(check_w1r_pointwise(quick ? 50 : 200));
    out.push_back(check_helmholtz());
    out.push_back(check_reductions());
    out.push_back(check_riccati());
    out.push_back(check_conservation(quick));
    return out;
}

} // namespace gx::selfcheck
