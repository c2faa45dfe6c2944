#include "gx/timestep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gx/spectral.hpp"

namespace gx::timestep {

using models::eval_rhs;
using models::Tendency;
using spectral::StateField;

void StepPolicy::validate() const {
    if (!(dt_min > 0.0) || !(dt_min < dt_init))
        throw std::invalid_argument("StepPolicy: need 0 < dt_min < dt_init");
    if (!(cfl > 0.0) || cfl > 1.0)
        throw std::invalid_argument("StepPolicy: cfl must lie in (0, 1]");
    if (!(t_end >= 0.0)) throw std::invalid_argument("StepPolicy: t_end must be >= 0");
    if (output_stride < 1) throw std::invalid_argument("StepPolicy: output_stride >= 1");
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::completed: return "completed";
        case Verdict::blowup_detected: return "blowup_detected";
        default: return "dt_underflow";
    }
}

double cfl_dt(const StatePair& s, const StepPolicy& policy) {
    const StateField w = spectral::product(s.u, s.v);
    const double speed = std::max(spectral::oversampled_sup(w, policy.oversample), 1e-8);
    const double dt = policy.cfl * s.u.grid->dx() / speed;
    return std::clamp(dt, policy.dt_min, policy.dt_init);
}

namespace {

// Velocity of the characteristic flow for one stage state.
StateField stage_speed(const StatePair& s) { return spectral::product(s.u, s.v); }

} // namespace

StatePair step_rk4_tracked(const StatePair& s, double dt, const ModelParams& params,
                           std::vector<double>& positions) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_rk4: dt must be positive");
    const std::size_t np = positions.size();
    std::vector<double> qk1(np), qk2(np), qk3(np), qk4(np);

    const Tendency k1 = eval_rhs(s, params);
    if (np) {
        const StateField w1 = stage_speed(s);
        for (std::size_t i = 0; i < np; ++i) qk1[i] = spectral::trig_interp(w1, positions[i]);
    }

    StatePair s2{s.u, s.v, s.t + 0.5 * dt};
    add_scaled(s2.u, 0.5 * dt, k1.du);
    add_scaled(s2.v, 0.5 * dt, k1.dv);
    const Tendency k2 = eval_rhs(s2, params);
    if (np) {
        const StateField w2 = stage_speed(s2);
        for (std::size_t i = 0; i < np; ++i)
            qk2[i] = spectral::trig_interp(w2, positions[i] + 0.5 * dt * qk1[i]);
    }

    StatePair s3{s.u, s.v, s.t + 0.5 * dt};
    add_scaled(s3.u, 0.5 * dt, k2.du);
    add_scaled(s3.v, 0.5 * dt, k2.dv);
    const Tendency k3 = eval_rhs(s3, params);
    if (np) {
        const StateField w3 = stage_speed(s3);
        for (std::size_t i = 0; i < np; ++i)
            qk3[i] = spectral::trig_interp(w3, positions[i] + 0.5 * dt * qk2[i]);
    }

    StatePair s4{s.u, s.v, s.t + dt};
    add_scaled(s4.u, dt, k3.du);
    add_scaled(s4.v, dt, k3.dv);
    const Tendency k4 = eval_rhs(s4, params);
    if (np) {
        const StateField w4 = stage_speed(s4);
        for (std::size_t i = 0; i < np; ++i)
            qk4[i] = spectral::trig_interp(w4, positions[i] + dt * qk3[i]);
    }

    StatePair out{s.u, s.v, s.t + dt};
    const double w = dt / 6.0;
    add_scaled(out.u, w, k1.du);
    add_scaled(out.u, 2.0 * w, k2.du);
    add_scaled(out.u, 2.0 * w, k3.du);
    add_scaled(out.u, w, k4.du);
    add_scaled(out.v, w, k1.dv);
    add_scaled(out.v, 2.0 * w, k2.dv);
    add_scaled(out.v, 2.0 * w, k3.dv);
    add_scaled(out.v, w, k4.dv);

    for (std::size_t i = 0; i < np; ++i)
        positions[i] += w * (qk1[i] + 2.0 * qk2[i] + 2.0 * qk3[i] + qk4[i]);
    return out;
}

StatePair step_rk4(const StatePair& s, double dt, const ModelParams& params) {
    std::vector<double> none;
    return step_rk4_tracked(s, dt, params, none);
}

//------------------------------------------------------------------------------
// Blow-up detection: fit y = -1/f against t on the trailing window where the
// slope has entered its collapse regime; y -> 0 linearly at the breaking time.
//------------------------------------------------------------------------------

BlowupFit detect_blowup(const std::vector<std::pair<double, double>>& samples,
                        const StepPolicy& policy, bool dt_underflowed) {
    if (samples.size() < 3)
        throw std::invalid_argument("detect_blowup: need at least 3 samples");

    std::size_t end = samples.size();
    bool crossed = false;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].second < -policy.slope_cap) {
            crossed = true;
            end = i + 1;
            break;
        }
    }

    bool monotone = samples.size() >= 3;
    const std::size_t tail = std::min<std::size_t>(5, samples.size());
    for (std::size_t i = samples.size() - tail + 1; i < samples.size(); ++i)
        if (samples[i].second >= samples[i - 1].second) monotone = false;

    if (!crossed && !(dt_underflowed && monotone)) return {Verdict::completed, 0.0};

    // Trailing fit window: slopes within a factor 5 of the deepest one.
    const double f_ref = samples[end - 1].second;
    std::vector<std::pair<double, double>> win;
    for (std::size_t i = 0; i < end; ++i) {
        const double f = samples[i].second;
        if (f < 0.0 && f <= 0.2 * f_ref) win.push_back(samples[i]);
    }
    if (win.size() > 32) win.erase(win.begin(), win.end() - 32);
    if (win.size() < 3) {
        win.clear();
        for (std::size_t i = end >= 3 ? end - 3 : 0; i < end; ++i)
            if (samples[i].second < 0.0) win.push_back(samples[i]);
    }
    if (win.size() < 2) return {Verdict::blowup_detected, samples[end - 1].first};

    // Least squares y = c0 + c1 t on y = -1/f.
    double st = 0, sy = 0, stt = 0, sty = 0;
    const double n = static_cast<double>(win.size());
    for (const auto& [t, f] : win) {
        const double y = -1.0 / f;
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
    }
    const double det = n * stt - st * st;
    const double c1 = (n * sty - st * sy) / det;
    const double c0 = (sy * stt - sty * st) / det;
    double t_star = samples[end - 1].first;
    if (c1 < 0.0) t_star = std::max(t_star, -c0 / c1);
    return {Verdict::blowup_detected, t_star};
}

//------------------------------------------------------------------------------
// The main loop.
//------------------------------------------------------------------------------

namespace {

void push_sample(RunResult& res, const StatePair& s, double dt, const MonitorConfig& mon,
                 const StepPolicy& policy, double min_ux) {
    NormReport rep = analysis::compute_norms(s.u, s.v, s.t, mon.r, mon.s_hs, policy.oversample);
    rep.dt = dt;
    rep.min_ux = min_ux;
    if (!res.reports.empty()) {
        const NormReport& prev = res.reports.back();
        rep.criterion_integral_cum =
            prev.criterion_integral_cum +
            0.5 * (prev.criterion_integrand + rep.criterion_integrand) * (rep.t - prev.t);
    }
    res.times.push_back(s.t);
    res.reports.push_back(std::move(rep));
}

void push_trace_samples(RunResult& res, const StatePair& s,
                        const std::vector<double>& positions) {
    if (positions.empty()) return;
    const StateField ux = spectral::deriv(s.u, 1);
    const StateField n = spectral::helmholtz_apply(s.v);
    for (std::size_t i = 0; i < positions.size(); ++i) {
        CharTrace& tr = res.traces[i];
        tr.t.push_back(s.t);
        tr.q.push_back(positions[i]);
        tr.u_at_q.push_back(spectral::trig_interp(s.u, positions[i]));
        tr.ux_at_q.push_back(spectral::trig_interp(ux, positions[i]));
        tr.v_at_q.push_back(spectral::trig_interp(s.v, positions[i]));
        tr.n_at_q.push_back(spectral::trig_interp(n, positions[i]));
    }
}

} // namespace

RunResult run(const StatePair& s0, const ModelParams& params, const StepPolicy& policy,
              const MonitorConfig& monitors) {
    policy.validate();
    if (!s0.finite()) throw std::invalid_argument("run: non-finite initial state");

    RunResult res;
    res.final_state = s0;
    std::vector<double> positions = monitors.track_x0;
    res.traces.resize(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) res.traces[i].x0 = positions[i];

    StatePair state = s0;
    const double rel_end = 1e-12 * std::max(1.0, std::fabs(policy.t_end));
    long steps_since_sample = 0;
    double last_dt = 0.0;

    auto slope_of = [&](const StatePair& s) {
        return spectral::oversampled_min(spectral::deriv(s.u, 1), policy.oversample);
    };

    double min_ux = slope_of(state);
    res.slope_history.emplace_back(state.t, min_ux);
    push_sample(res, state, 0.0, monitors, policy, min_ux);
    push_trace_samples(res, state, positions);

    while (state.t < policy.t_end - rel_end) {
        if (min_ux < -policy.slope_cap) {
            res.verdict = Verdict::blowup_detected;
            res.breaking_time_estimate = state.t;
            break;
        }

        const StateField w = spectral::product(state.u, state.v);
        const double speed = std::max(spectral::oversampled_sup(w, policy.oversample), 1e-8);
        double dt_raw = policy.cfl * state.u.grid->dx() / speed;
        if (min_ux < 0.0) dt_raw = std::min(dt_raw, policy.cfl / (-min_ux));
        if (dt_raw < policy.dt_min) {
            const BlowupFit fit = res.slope_history.size() >= 3
                                      ? detect_blowup(res.slope_history, policy, true)
                                      : BlowupFit{Verdict::dt_underflow, 0.0};
            res.verdict = fit.verdict == Verdict::blowup_detected ? Verdict::blowup_detected
                                                                  : Verdict::dt_underflow;
            if (res.verdict == Verdict::blowup_detected) {
                res.breaking_time_estimate = state.t;
                res.extrapolated_t_star = fit.t_star;
            }
            break;
        }
        const double dt = std::min(std::min(dt_raw, policy.dt_init), policy.t_end - state.t);

        StatePair next = step_rk4_tracked(state, dt, params, positions);
        ++res.steps;
        ++steps_since_sample;
        last_dt = dt;

        if (!next.finite()) {
            res.verdict = Verdict::blowup_detected;
            res.breaking_time_estimate = state.t + dt;
            break;
        }
        state = std::move(next);
        min_ux = slope_of(state);
        res.slope_history.emplace_back(state.t, min_ux);

        const bool at_end = state.t >= policy.t_end - rel_end;
        if (steps_since_sample >= policy.output_stride || at_end) {
            push_sample(res, state, dt, monitors, policy, min_ux);
            push_trace_samples(res, state, positions);
            steps_since_sample = 0;
        }
    }

    if (res.verdict == Verdict::completed && min_ux < -policy.slope_cap) {
        res.verdict = Verdict::blowup_detected;
        res.breaking_time_estimate = state.t;
    }

    // Always sample the final state.
    if (res.times.empty() || res.times.back() != state.t) {
        push_sample(res, state, last_dt, monitors, policy, min_ux);
        push_trace_samples(res, state, positions);
    }

    if (res.verdict == Verdict::blowup_detected && !res.extrapolated_t_star &&
        res.slope_history.size() >= 3) {
        const BlowupFit fit = detect_blowup(res.slope_history, policy, false);
        if (fit.verdict == Verdict::blowup_detected) res.extrapolated_t_star = fit.t_star;
    }

    res.final_state = std::move(state);
    return res;
}

} // namespace gx::timestep
