#pragma once
//==============================================================================
// timestep.hpp
// Explicit RK4 time integration with adaptive step control and blow-up
// detection.
//
// Step size: dt = cfl * dx / max(sup|u v|, 1e-8), additionally restricted by
// cfl / |min u_x| while the slope steepens, clamped to [dt_min, dt_init] and
// clipped to land exactly on t_end. Wave breaking is declared when the
// oversampled min of u_x crosses -slope_cap, when a step produces non-finite
// values, or when dt underflows while the slope is monotonically decreasing.
//
// Tracked characteristics dq/dt = (uv)(t, q) advance inside the same RK4
// stages as the PDE (stage velocity fields evaluated at stage positions by
// trigonometric interpolation), preserving the scheme's order.
//==============================================================================

#include <optional>
#include <utility>
#include <vector>

#include "gx/models.hpp"
#include "gx/norms.hpp"

namespace gx::timestep {

using analysis::NormReport;
using models::ModelParams;
using models::StatePair;

struct StepPolicy {
    double dt_init = 1e-2;
    double dt_min = 1e-10;
    double cfl = 0.3;            // in (0, 1]
    double t_end = 1.0;
    double slope_cap = 1e6;
    int output_stride = 10;      // steps between monitor samples
    int oversample = 4;

    bool operator==(const StepPolicy&) const = default;
    void validate() const;
};

struct CharTrace {
    double x0 = 0.0;
    std::vector<double> t;
    std::vector<double> q;
    std::vector<double> u_at_q;
    std::vector<double> ux_at_q;
    std::vector<double> v_at_q;
    std::vector<double> n_at_q;
};

enum class Verdict { completed, blowup_detected, dt_underflow };

const char* to_string(Verdict v);

struct RunResult {
    std::vector<double> times;            // sample instants, strictly increasing
    std::vector<NormReport> reports;      // one per sample
    std::vector<CharTrace> traces;
    Verdict verdict = Verdict::completed;
    std::optional<double> breaking_time_estimate;  // first cap crossing / NaN time
    std::optional<double> extrapolated_t_star;     // Riccati-fit extrapolation
    StatePair final_state;
    std::vector<std::pair<double, double>> slope_history; // (t, min u_x) per step
    long steps = 0;
};

struct MonitorConfig {
    double r = 1.0;     // W^{1,r} index carried in the reports
    double s_hs = 3.0;  // H^s index
    std::vector<double> track_x0;
};

// dt from the transport speed; clamped to [dt_min, dt_init].
double cfl_dt(const StatePair& s, const StepPolicy& policy);

// One classical RK4 step (no tracking). Positions, if given, advance through
// the same stages.
StatePair step_rk4(const StatePair& s, double dt, const ModelParams& params);
StatePair step_rk4_tracked(const StatePair& s, double dt, const ModelParams& params,
                           std::vector<double>& positions);

struct BlowupFit {
    Verdict verdict = Verdict::completed;
    double t_star = 0.0;  // meaningful only for blowup_detected
};

// Fits min u_x ~ -1/(a (T - t)) to the trailing samples; declares blow-up on a
// cap crossing, or on dt underflow with monotonically decreasing slope.
BlowupFit detect_blowup(const std::vector<std::pair<double, double>>& slope_samples,
                        const StepPolicy& policy, bool dt_underflowed = false);

RunResult run(const StatePair& s0, const ModelParams& params, const StepPolicy& policy,
              const MonitorConfig& monitors);

} // namespace gx::timestep
