#pragma once
//==============================================================================
// certificates.hpp
// Explicit blow-up constants, slope thresholds, a-priori bound monitors and
// the Riccati comparison machinery that turns the analysis into pass/fail
// checks on a run.
//
// Geng-Xue route (W^{1,1} data), with S = ||u0||_{W^{1,1}} + ||n0||_inf:
//   t1 = 1 / (80 S^2)                     (doubling horizon)
//   t2 = v0(x0) / (80 S^3) <= t1          (v >= v0/2 horizon along q)
//   b1 = (4/v0) S^4 + 14 S^3
//   slope threshold = ((1+X)/(1-X)) sqrt(b1/v0),  X = e^{sqrt(b1 v0) t2} > 1,
// and u0_x(x0) below the (negative) threshold forces breaking no later than
// the Riccati bound with a = v0/4.
//
// b-family route (b = 1 + 2/r, r >= 2), with S = ||u0||^r_{W^{1,r}} + ||n0||_inf
// and P(r) = r^{(1+r)/r} + r^{1/r} + r^{(1-r)/r} + 7 r^{1/r} (r-1)^{(r-1)/r}:
//   t4 = 1 / (8 P(r) S^{(r+1)/r})
//   t5 = v0(x0) / (8 P(r) S^{(2r+1)/r}) <= t4
//   c2 = (4/v0) r^{2/r} S^{(2r+2)/r}
//        + 14 (r^2/2)^{1/r} ((r-1)/r)^{(r-1)/r} S^{(r+2)/r}
// with the same threshold family (c2, t5) and a = v0/(4r).
//
// Riccati comparison: if f' <= -a f^2 + b with f(0) < -sqrt(b/a), then f
// reaches -infinity by  (1 / (2 sqrt(ab))) ln( (f0 - sqrt(b/a)) / (f0 + sqrt(b/a)) ).
//==============================================================================

#include <optional>
#include <string>
#include <vector>

#include "gx/timestep.hpp"

namespace gx::certificates {

using analysis::NormReport;
using models::ModelParams;
using models::StatePair;
using timestep::CharTrace;
using timestep::StepPolicy;

//--- explicit constants -------------------------------------------------------

double compute_t1(double w11_u0, double sup_n0);
double compute_t2(double v0_at_x0, double w11_u0, double sup_n0);
double compute_b1(double v0_at_x0, double w11_u0, double sup_n0);
double slope_threshold_gx(double v0_at_x0, double b1, double t2);

double bfam_prefactor(double r);
double compute_t4(double w1r_u0_pow_r, double sup_n0, double r);
double compute_t5(double v0_at_x0, double w1r_u0_pow_r, double sup_n0, double r);
double compute_c2(double v0_at_x0, double w1r_u0_pow_r, double sup_n0, double r);
double slope_threshold_bfam(double v0_at_x0, double c2, double t5);

//--- Riccati comparison -------------------------------------------------------

// The closed-form bound; requires f0 < -sqrt(b/a) strictly.
double riccati_bound(double a, double b, double f0);

// Integrates f' = -a f^2 + b until f < -slope_cap and extrapolates the
// crossing by the asymptote f ~ -1/(a (t*-t)). Saturates the bound in the
// equality case: result in [riccati_bound - 1e-3, riccati_bound + 1e-6].
double riccati_integrate(double a, double b, double f0, double slope_cap);

//--- run-history functionals --------------------------------------------------

// Trapezoid integral of ||u||_{W^{1,inf}} ||v||_{W^{1,inf}} over the samples.
double criterion_integral(const std::vector<NormReport>& history);

struct GronwallReport {
    bool vacuous = false;   // B(0) == 0 or growth never observed
    bool anomaly = false;   // B grew while the criterion integral stayed zero
    double sup_c = 0.0;     // sup_t ln(B(t)/B(0)) / I(t)
    double t_at_sup = 0.0;
};
GronwallReport gronwall_monitor(const std::vector<NormReport>& history);

struct MonitorResult {
    bool pass = true;
    double margin = 0.0;   // smallest relative headroom seen (negative = violated)
    double t_checked = 0.0;
};

// ||n||_inf + ||u||_{W^{1,1}} <= 2 (initial) for t <= t1.
MonitorResult monitor_doubling(const std::vector<NormReport>& history, double t1,
                               double slack = 1e-6);
// ||n||_inf + ||u||^r_{W^{1,r}} <= 2 (initial) for t <= t4.
MonitorResult monitor_doubling_r(const std::vector<NormReport>& history, double t4,
                                 double slack = 1e-6);
// v(t, q(t, x0)) >= v0(x0)/2 for t <= t2 (or t5).
MonitorResult monitor_v_lower(const CharTrace& trace, double v0_at_x0, double t2,
                              double slack = 1e-6);
// Both b-family monitors; requires b = 1 + 2/r in params.
std::pair<MonitorResult, MonitorResult> monitor_bfam(
    const std::vector<NormReport>& history, const CharTrace& trace,
    const ModelParams& params, double t4, double t5, double slack = 1e-6);

//--- certificates -------------------------------------------------------------

enum class Theorem { gx_w11, bfam_w1r };

struct BlowupCertificate {
    Theorem theorem = Theorem::gx_w11;
    double x0 = 0.0;
    double v0_at_x0 = 0.0;
    double u0x_at_x0 = 0.0;
    double r = 1.0;          // 1 on the W^{1,1} route
    double norm_u0 = 0.0;    // ||u0||_{W^{1,1}} or ||u0||^r_{W^{1,r}}
    double sup_n0 = 0.0;
    double norm_sum = 0.0;
    double t_global = 0.0;   // t1 or t4
    double t_point = 0.0;    // t2 or t5
    double growth_const = 0.0;  // b1 or c2
    double slope_threshold = 0.0;
    bool hyp_v0_positive = false;
    bool hyp_slope = false;
    bool point_bound_ordered = true;  // v0(x0) <= norm_sum, so t_point <= t_global
    std::optional<double> riccati_time;        // bound with a = v0/4 (resp. v0/(4r))
    std::optional<double> theorem_form_bound;  // alternate log form, reported alongside
    std::optional<double> predicted_bound;     // min(riccati_time, t_point)
    std::optional<double> observed_breaking_time;
    bool refinement_confirmed = false;
    std::string notes;

    bool hypotheses_met() const { return hyp_v0_positive && hyp_slope; }
};

// Evaluates every constant and hypothesis of the applicable theorem on the
// initial state. Throws if x0 lies outside the domain or the parameters fit
// no certified regime (b-family needs b = 1 + 2/r with r >= 2, or b = 3).
BlowupCertificate certify_blowup(const StatePair& s0, const ModelParams& params,
                                 double x0, int oversample = 4);

// Runs the PDE with a single tracked seed and returns its characteristic.
CharTrace track_characteristic(const StatePair& s0, const ModelParams& params,
                               const StepPolicy& policy, double x0);

} // namespace gx::certificates
