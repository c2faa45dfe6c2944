#include "gx/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gx/spectral.hpp"

namespace gx::certificates {

namespace {
void require_positive(double x, const char* what) {
    if (!(x > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
}
} // namespace

//------------------------------------------------------------------------------
// Constants.
//------------------------------------------------------------------------------

double compute_t1(double w11_u0, double sup_n0) {
    require_positive(w11_u0, "compute_t1: ||u0||_W11");
    require_positive(sup_n0, "compute_t1: ||n0||_inf");
    const double s = w11_u0 + sup_n0;
    return 1.0 / (80.0 * s * s);
}

double compute_t2(double v0_at_x0, double w11_u0, double sup_n0) {
    require_positive(v0_at_x0, "compute_t2: v0(x0)");
    require_positive(w11_u0, "compute_t2: ||u0||_W11");
    require_positive(sup_n0, "compute_t2: ||n0||_inf");
    const double s = w11_u0 + sup_n0;
    return v0_at_x0 / (80.0 * s * s * s);
}

double compute_b1(double v0_at_x0, double w11_u0, double sup_n0) {
    require_positive(v0_at_x0, "compute_b1: v0(x0)");
    const double s = w11_u0 + sup_n0;
    return 4.0 / v0_at_x0 * s * s * s * s + 14.0 * s * s * s;
}

namespace {
// Shared threshold form: ((1+X)/(1-X)) sqrt(c/v0) with X = e^{sqrt(c v0) T}.
double slope_threshold(double v0, double c, double t_horizon) {
    require_positive(v0, "slope_threshold: v0(x0)");
    require_positive(c, "slope_threshold: growth constant");
    require_positive(t_horizon, "slope_threshold: horizon");
    const double x = std::exp(std::sqrt(c * v0) * t_horizon);
    if (x == 1.0) throw std::domain_error("slope_threshold: degenerate exponent");
    return (1.0 + x) / (1.0 - x) * std::sqrt(c / v0);
}
} // namespace

double slope_threshold_gx(double v0_at_x0, double b1, double t2) {
    return slope_threshold(v0_at_x0, b1, t2);
}

double bfam_prefactor(double r) {
    if (r < 2.0) throw std::invalid_argument("bfam_prefactor: requires r >= 2");
    return std::pow(r, (1.0 + r) / r) + std::pow(r, 1.0 / r) + std::pow(r, (1.0 - r) / r) +
           7.0 * std::pow(r, 1.0 / r) * std::pow(r - 1.0, (r - 1.0) / r);
}

double compute_t4(double w1r_u0_pow_r, double sup_n0, double r) {
    require_positive(w1r_u0_pow_r, "compute_t4: ||u0||^r_W1r");
    require_positive(sup_n0, "compute_t4: ||n0||_inf");
    const double s = w1r_u0_pow_r + sup_n0;
    return 1.0 / (8.0 * bfam_prefactor(r) * std::pow(s, (r + 1.0) / r));
}

double compute_t5(double v0_at_x0, double w1r_u0_pow_r, double sup_n0, double r) {
    require_positive(v0_at_x0, "compute_t5: v0(x0)");
    require_positive(w1r_u0_pow_r, "compute_t5: ||u0||^r_W1r");
    require_positive(sup_n0, "compute_t5: ||n0||_inf");
    const double s = w1r_u0_pow_r + sup_n0;
    return v0_at_x0 / (8.0 * bfam_prefactor(r) * std::pow(s, (2.0 * r + 1.0) / r));
}

double compute_c2(double v0_at_x0, double w1r_u0_pow_r, double sup_n0, double r) {
    require_positive(v0_at_x0, "compute_c2: v0(x0)");
    if (r < 2.0) throw std::invalid_argument("compute_c2: requires r >= 2");
    const double s = w1r_u0_pow_r + sup_n0;
    return 4.0 / v0_at_x0 * std::pow(r, 2.0 / r) * std::pow(s, (2.0 * r + 2.0) / r) +
           14.0 * std::pow(r * r / 2.0, 1.0 / r) *
               std::pow((r - 1.0) / r, (r - 1.0) / r) * std::pow(s, (r + 2.0) / r);
}

double slope_threshold_bfam(double v0_at_x0, double c2, double t5) {
    return slope_threshold(v0_at_x0, c2, t5);
}

//------------------------------------------------------------------------------
// Riccati comparison.
//------------------------------------------------------------------------------

double riccati_bound(double a, double b, double f0) {
    require_positive(a, "riccati_bound: a");
    require_positive(b, "riccati_bound: b");
    const double mu = std::sqrt(b / a);
    if (!(f0 < -mu))
        throw std::invalid_argument("riccati_bound: requires f0 < -sqrt(b/a)");
    return 1.0 / (2.0 * std::sqrt(a * b)) * std::log((f0 - mu) / (f0 + mu));
}

double riccati_integrate(double a, double b, double f0, double slope_cap) {
    const double bound = riccati_bound(a, b, f0); // validates the inputs
    (void)bound;
    const double mu = std::sqrt(b / a);
    const double rate = 2.0 * std::sqrt(a * b);
    // Integrate past where the asymptote is accurate regardless of the cap.
    const double target = -std::max({slope_cap, 100.0 * mu, 100.0 * std::fabs(f0)});

    double t = 0.0;
    double f = f0;
    auto g = [&](double y) { return -a * y * y + b; };
    while (f > target) {
        const double df = std::fabs(g(f));
        double dt = 0.01 * std::min(std::fabs(f) / df, 1.0 / rate);
        const double k1 = g(f);
        const double k2 = g(f + 0.5 * dt * k1);
        const double k3 = g(f + 0.5 * dt * k2);
        const double k4 = g(f + dt * k3);
        f += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += dt;
    }
    return t + 1.0 / (a * std::fabs(f));
}

//------------------------------------------------------------------------------
// History functionals.
//------------------------------------------------------------------------------

double criterion_integral(const std::vector<NormReport>& history) {
    if (history.size() < 2)
        throw std::invalid_argument("criterion_integral: need at least 2 samples");
    double acc = 0.0;
    for (std::size_t i = 1; i < history.size(); ++i) {
        acc += 0.5 * (history[i - 1].criterion_integrand + history[i].criterion_integrand) *
               (history[i].t - history[i - 1].t);
    }
    return acc;
}

GronwallReport gronwall_monitor(const std::vector<NormReport>& history) {
    GronwallReport rep;
    if (history.empty()) {
        rep.vacuous = true;
        return rep;
    }
    const double b0 = history.front().besov221_u + history.front().besov221_v;
    if (!(b0 > 0.0)) {
        rep.vacuous = true;
        return rep;
    }
    bool any = false;
    double cum = 0.0;
    for (std::size_t i = 1; i < history.size(); ++i) {
        cum += 0.5 * (history[i - 1].criterion_integrand + history[i].criterion_integrand) *
               (history[i].t - history[i - 1].t);
        const double bt = history[i].besov221_u + history[i].besov221_v;
        const double growth = std::log(bt / b0);
        if (cum <= 0.0) {
            if (growth > 1e-12) rep.anomaly = true;
            continue;
        }
        const double c = growth / cum;
        if (!any || c > rep.sup_c) {
            rep.sup_c = c;
            rep.t_at_sup = history[i].t;
        }
        any = true;
    }
    rep.vacuous = !any;
    return rep;
}

//------------------------------------------------------------------------------
// Monitors.
//------------------------------------------------------------------------------

MonitorResult monitor_doubling(const std::vector<NormReport>& history, double t1,
                               double slack) {
    MonitorResult res;
    if (history.empty()) return res;
    const double s0 = history.front().sup_n + history.front().w11_u;
    res.margin = 1.0;
    for (const auto& rep : history) {
        if (rep.t > t1) break;
        const double s = rep.sup_n + rep.w11_u;
        const double margin = s0 > 0.0 ? (2.0 * s0 - s) / (2.0 * s0) : 1.0;
        res.margin = std::min(res.margin, margin);
        res.t_checked = rep.t;
        if (s > 2.0 * s0 * (1.0 + slack)) res.pass = false;
    }
    return res;
}

MonitorResult monitor_doubling_r(const std::vector<NormReport>& history, double t4,
                                 double slack) {
    MonitorResult res;
    if (history.empty()) return res;
    const double r = history.front().r;
    auto value = [&](const NormReport& rep) {
        return rep.sup_n + std::pow(rep.w1r_u, r);
    };
    const double s0 = value(history.front());
    res.margin = 1.0;
    for (const auto& rep : history) {
        if (rep.t > t4) break;
        const double s = value(rep);
        const double margin = s0 > 0.0 ? (2.0 * s0 - s) / (2.0 * s0) : 1.0;
        res.margin = std::min(res.margin, margin);
        res.t_checked = rep.t;
        if (s > 2.0 * s0 * (1.0 + slack)) res.pass = false;
    }
    return res;
}

MonitorResult monitor_v_lower(const CharTrace& trace, double v0_at_x0, double t2,
                              double slack) {
    MonitorResult res;
    res.margin = 1.0;
    const double floor = 0.5 * v0_at_x0;
    for (std::size_t i = 0; i < trace.t.size(); ++i) {
        if (trace.t[i] > t2) break;
        const double v = trace.v_at_q[i];
        const double margin = floor != 0.0 ? (v - floor) / std::fabs(floor) : 1.0;
        res.margin = std::min(res.margin, margin);
        res.t_checked = trace.t[i];
        if (v < floor - slack * std::fabs(v0_at_x0)) res.pass = false;
    }
    return res;
}

std::pair<MonitorResult, MonitorResult> monitor_bfam(
    const std::vector<NormReport>& history, const CharTrace& trace,
    const ModelParams& params, double t4, double t5, double slack) {
    const double want_b = 1.0 + 2.0 / params.r;
    if (std::fabs(params.effective_b() - want_b) > 1e-12)
        throw std::invalid_argument("monitor_bfam: requires b = 1 + 2/r");
    const double v0 = trace.v_at_q.empty() ? 0.0 : trace.v_at_q.front();
    return {monitor_doubling_r(history, t4, slack),
            monitor_v_lower(trace, v0, t5, slack)};
}

//------------------------------------------------------------------------------
// Certificates.
//------------------------------------------------------------------------------

BlowupCertificate certify_blowup(const StatePair& s0, const ModelParams& params,
                                 double x0, int oversample) {
    if (!s0.finite()) throw std::invalid_argument("certify_blowup: non-finite state");
    const double L = s0.u.grid->half_extent();
    if (x0 < -L || x0 >= L)
        throw std::invalid_argument("certify_blowup: x0 outside the domain [-L, L)");

    const double b = params.effective_b();
    BlowupCertificate cert;
    if (params.family == models::Family::geng_xue || b == 3.0) {
        cert.theorem = Theorem::gx_w11;
        cert.r = 1.0;
    } else if (params.r >= 2.0 && std::fabs(b - (1.0 + 2.0 / params.r)) <= 1e-12) {
        cert.theorem = Theorem::bfam_w1r;
        cert.r = params.r;
    } else {
        throw std::invalid_argument(
            "certify_blowup: parameters fit no certified regime (need b = 3 or b = 1 + 2/r "
            "with r >= 2)");
    }

    cert.x0 = x0;
    cert.v0_at_x0 = spectral::trig_interp(s0.v, x0);
    cert.u0x_at_x0 = spectral::trig_interp(spectral::deriv(s0.u, 1), x0);
    cert.sup_n0 = spectral::oversampled_sup(spectral::helmholtz_apply(s0.v), oversample);
    cert.norm_u0 = cert.theorem == Theorem::gx_w11
                       ? analysis::w1r_norm(s0.u, 1.0)
                       : std::pow(analysis::w1r_norm(s0.u, cert.r), cert.r);
    cert.norm_sum = cert.norm_u0 + cert.sup_n0;

    // Strict positivity of v0(x0): the growth constant divides by it.
    cert.hyp_v0_positive = cert.v0_at_x0 > 0.0;
    if (!cert.hyp_v0_positive) {
        cert.slope_threshold = std::numeric_limits<double>::quiet_NaN();
        cert.notes = "v0(x0) <= 0: growth constant undefined, no bound claimed";
        return cert;
    }

    double a_riccati = 0.0;
    if (cert.theorem == Theorem::gx_w11) {
        cert.t_global = compute_t1(cert.norm_u0, cert.sup_n0);
        cert.t_point = compute_t2(cert.v0_at_x0, cert.norm_u0, cert.sup_n0);
        cert.growth_const = compute_b1(cert.v0_at_x0, cert.norm_u0, cert.sup_n0);
        cert.slope_threshold =
            slope_threshold_gx(cert.v0_at_x0, cert.growth_const, cert.t_point);
        a_riccati = cert.v0_at_x0 / 4.0;
    } else {
        cert.t_global = compute_t4(cert.norm_u0, cert.sup_n0, cert.r);
        cert.t_point = compute_t5(cert.v0_at_x0, cert.norm_u0, cert.sup_n0, cert.r);
        cert.growth_const = compute_c2(cert.v0_at_x0, cert.norm_u0, cert.sup_n0, cert.r);
        cert.slope_threshold =
            slope_threshold_bfam(cert.v0_at_x0, cert.growth_const, cert.t_point);
        a_riccati = cert.v0_at_x0 / (4.0 * cert.r);
    }

    cert.point_bound_ordered = cert.v0_at_x0 <= cert.norm_sum;
    if (!cert.point_bound_ordered)
        cert.notes += "v0(x0) > norm sum: t_point exceeds t_global in this regime; ";

    cert.hyp_slope = cert.u0x_at_x0 <= cert.slope_threshold;

    const double f0 = cert.u0x_at_x0;
    const double c = cert.growth_const;
    const double v0 = cert.v0_at_x0;
    if (f0 < -std::sqrt(c / a_riccati)) {
        cert.riccati_time = riccati_bound(a_riccati, c, f0);
        cert.predicted_bound = std::min(*cert.riccati_time, cert.t_point);
    }
    const double sf = std::sqrt(v0) * f0;
    if (sf < -std::sqrt(c)) {
        cert.theorem_form_bound = 1.0 / std::sqrt(c * v0) *
                                  std::log((sf - std::sqrt(c)) / (sf + std::sqrt(c)));
    }
    if (cert.hypotheses_met() && !cert.predicted_bound)
        cert.notes += "slope hypothesis met but Riccati precondition failed; ";
    return cert;
}

CharTrace track_characteristic(const StatePair& s0, const ModelParams& params,
                               const StepPolicy& policy, double x0) {
    timestep::MonitorConfig mon;
    mon.r = params.r;
    mon.track_x0 = {x0};
    const timestep::RunResult res = timestep::run(s0, params, policy, mon);
    return res.traces.front();
}

} // namespace gx::certificates
