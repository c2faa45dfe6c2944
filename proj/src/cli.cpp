#include "gx/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gx/certificates.hpp"
#include "gx/initial_data.hpp"
#include "gx/selfcheck.hpp"

namespace gx::cli {

namespace fs = std::filesystem;
using nlohmann::json;

//------------------------------------------------------------------------------
// CSV parsing (for report).
//------------------------------------------------------------------------------

namespace {
std::vector<std::vector<double>> parse_csv_rows(const std::string& text, std::size_t cols) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<double> row;
        std::istringstream ls(line);
        std::string item;
        while (std::getline(ls, item, ',')) row.push_back(std::stod(item));
        if (row.size() != cols)
            throw std::runtime_error("csv row has " + std::to_string(row.size()) +
                                     " fields, expected " + std::to_string(cols));
        rows.push_back(std::move(row));
    }
    return rows;
}
} // namespace

std::vector<analysis::NormReport> parse_norms_csv(const std::string& text, double r,
                                                  double s_hs) {
    std::vector<analysis::NormReport> out;
    for (const auto& row : parse_csv_rows(text, 19)) {
        analysis::NormReport rep;
        rep.t = row[0];
        rep.dt = row[1];
        rep.sup_u = row[2];
        rep.sup_ux = row[3];
        rep.sup_v = row[4];
        rep.sup_vx = row[5];
        rep.w11_u = row[6];
        rep.w1r_u = row[7];
        rep.w1inf_u = row[8];
        rep.w1inf_v = row[9];
        rep.sup_n = row[10];
        rep.hs_u = row[11];
        rep.hs_v = row[12];
        rep.besov221_u = row[13];
        rep.besov221_v = row[14];
        rep.int_m = row[15];
        rep.int_um = row[16];
        rep.criterion_integral_cum = row[17];
        rep.min_ux = row[18];
        rep.r = r;
        rep.s = s_hs;
        rep.criterion_integrand = rep.w1inf_u * rep.w1inf_v;
        out.push_back(rep);
    }
    return out;
}

std::vector<timestep::CharTrace> parse_traces_csv(const std::string& text) {
    std::vector<timestep::CharTrace> traces;
    for (const auto& row : parse_csv_rows(text, 7)) {
        const double x0 = row[1];
        auto it = std::find_if(traces.begin(), traces.end(),
                               [&](const timestep::CharTrace& t) { return t.x0 == x0; });
        if (it == traces.end()) {
            traces.push_back({});
            traces.back().x0 = x0;
            it = traces.end() - 1;
        }
        it->t.push_back(row[0]);
        it->q.push_back(row[2]);
        it->u_at_q.push_back(row[3]);
        it->ux_at_q.push_back(row[4]);
        it->v_at_q.push_back(row[5]);
        it->n_at_q.push_back(row[6]);
    }
    return traces;
}

//------------------------------------------------------------------------------
// run / certify
//------------------------------------------------------------------------------

namespace {

// The certificate anchor: the steep builder's x0, else the first tracked seed,
// else the node where v0 peaks.
double certificate_anchor(const io::ExperimentConfig& cfg, const io::InitialData& init) {
    if (cfg.initial.kind == io::InitialKind::steep_certified) return init.x0;
    if (!cfg.track_x0.empty()) return cfg.track_x0.front();
    const auto& v = init.state.v.values;
    const auto& x = init.state.v.grid->nodes();
    std::size_t arg = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[arg]) arg = i;
    return x[arg];
}

bool cert_applicable(const io::ExperimentConfig& cfg) {
    if (cfg.family == models::Family::geng_xue || cfg.b == 3.0) return true;
    return cfg.r >= 2.0 && std::fabs(cfg.b - (1.0 + 2.0 / cfg.r)) <= 1e-12;
}

} // namespace

int run_experiment(const io::ExperimentConfig& cfg, io::RunRecord* out) {
    const auto t_start = std::chrono::steady_clock::now();
    const auto grid = spectral::make_grid(cfg.grid_L, cfg.grid_N);
    const models::ModelParams params = cfg.model_params();

    io::InitialData init = io::build_initial(cfg.initial, grid, params);
    if (cfg.swap_roles) {
        std::swap(init.state.u, init.state.v);
        init.provenance += " [roles swapped: v-variable analogue]";
    }

    const double x0 = certificate_anchor(cfg, init);

    io::RunRecord rec;
    rec.config = cfg;
    rec.provenance = init.provenance;
    rec.tool_version = kToolVersion;

    if (cert_applicable(cfg)) {
        rec.certificates.push_back(certificates::certify_blowup(init.state, params, x0));
    }

    timestep::MonitorConfig mon;
    mon.r = cfg.r;
    mon.s_hs = cfg.s_for_hs;
    mon.track_x0 = cfg.track_x0;
    if (std::find(mon.track_x0.begin(), mon.track_x0.end(), x0) == mon.track_x0.end())
        mon.track_x0.insert(mon.track_x0.begin(), x0);

    rec.result = timestep::run(init.state, params, cfg.policy, mon);

    bool predicted = false;
    if (!rec.certificates.empty()) {
        auto& cert = rec.certificates.front();
        if (rec.result.verdict == timestep::Verdict::blowup_detected &&
            rec.result.breaking_time_estimate) {
            cert.observed_breaking_time = rec.result.breaking_time_estimate;
            predicted = cert.hypotheses_met() && cert.predicted_bound &&
                        *cert.observed_breaking_time <= *cert.predicted_bound;
        }
    }

    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    io::write_run_record(cfg.output_dir, rec);
    if (out) *out = rec;

    switch (rec.result.verdict) {
        case timestep::Verdict::completed: return 0;
        case timestep::Verdict::blowup_detected: return predicted ? 0 : 2;
        default: return predicted ? 2 : 3;
    }
}

int cmd_run(const std::string& config_path, const std::string& out_dir_override) {
    io::ExperimentConfig cfg = io::load_config(config_path);
    if (!out_dir_override.empty()) cfg.output_dir = out_dir_override;
    io::RunRecord rec;
    const int code = run_experiment(cfg, &rec);
    std::cout << "verdict=" << timestep::to_string(rec.result.verdict);
    if (rec.result.breaking_time_estimate)
        std::cout << " breaking_time=" << *rec.result.breaking_time_estimate;
    std::cout << " record=" << cfg.output_dir << "/record.json\n";
    return code;
}

int cmd_certify(const std::string& config_path, const std::string& out_dir_override) {
    io::ExperimentConfig cfg = io::load_config(config_path);
    if (!out_dir_override.empty()) cfg.output_dir = out_dir_override;
    const auto grid = spectral::make_grid(cfg.grid_L, cfg.grid_N);
    const models::ModelParams params = cfg.model_params();
    io::InitialData init = io::build_initial(cfg.initial, grid, params);
    if (cfg.swap_roles) std::swap(init.state.u, init.state.v);
    const double x0 = certificate_anchor(cfg, init);
    const auto cert = certificates::certify_blowup(init.state, params, x0);
    io::write_file_atomic(cfg.output_dir + "/certificate.json", io::certificate_json(cert));
    std::cout << "hypotheses_met=(" << (cert.hyp_v0_positive ? "true" : "false") << ","
              << (cert.hyp_slope ? "true" : "false") << ")";
    if (cert.predicted_bound) std::cout << " predicted_bound=" << *cert.predicted_bound;
    std::cout << " certificate=" << cfg.output_dir << "/certificate.json\n";
    return 0;
}

int cmd_riccati(double a, double b, double f0) {
    const double bound = certificates::riccati_bound(a, b, f0);
    const double numeric = certificates::riccati_integrate(a, b, f0, 1e8);
    std::printf("bound=%.6f numeric=%.6f\n", bound, numeric);
    return 0;
}

int cmd_selftest(bool quick) {
    const auto results = selfcheck::run_all(quick);
    std::size_t width = 0;
    for (const auto& r : results) width = std::max(width, r.name.size());
    int fails = 0;
    for (const auto& r : results) {
        if (!r.pass) ++fails;
        std::printf("%-*s  %s  %s\n", static_cast<int>(width), r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.detail.c_str());
    }
    std::printf("%d/%zu checks passed\n", static_cast<int>(results.size()) - fails,
                results.size());
    return fails;
}

//------------------------------------------------------------------------------
// sweep
//------------------------------------------------------------------------------

namespace {

void apply_override(io::ExperimentConfig& cfg, const std::string& key, double v) {
    if (key == "model.b") cfg.b = v;
    else if (key == "model.r") cfg.r = v;
    else if (key == "grid.L") cfg.grid_L = v;
    else if (key == "grid.N") cfg.grid_N = static_cast<int>(v);
    else if (key == "policy.t_end") cfg.policy.t_end = v;
    else if (key == "policy.dt_init") cfg.policy.dt_init = v;
    else if (key == "policy.cfl") cfg.policy.cfl = v;
    else if (key == "policy.slope_cap") cfg.policy.slope_cap = v;
    else if (key == "initial.u_amplitude") cfg.initial.u_amplitude = v;
    else if (key == "initial.v_amplitude") cfg.initial.v_amplitude = v;
    else if (key == "initial.u_width") cfg.initial.u_width = v;
    else if (key == "initial.v_width") cfg.initial.v_width = v;
    else if (key == "initial.multiplier") cfg.initial.multiplier = v;
    else if (key == "output.seed") cfg.seed = static_cast<std::uint64_t>(v);
    else throw std::runtime_error("sweep: unsupported parameter '" + key + "'");
}

} // namespace

int cmd_sweep(const std::string& config_path, const std::string& out_dir_override) {
    // The [sweep] section holds "config.key = v1, v2, ..." lines; everything
    // else is the template config.
    std::istringstream in(io::read_file(config_path));
    std::string line, section, template_text;
    std::vector<std::pair<std::string, std::vector<double>>> axes;
    while (std::getline(in, line)) {
        std::string stripped = line;
        const auto hash = stripped.find('#');
        if (hash != std::string::npos) stripped.erase(hash);
        const auto a = stripped.find_first_not_of(" \t\r\n");
        if (a != std::string::npos && stripped[a] == '[') {
            const auto b = stripped.find(']');
            section = stripped.substr(a + 1, b - a - 1);
            if (section != "sweep") template_text += line + "\n";
            continue;
        }
        if (section == "sweep") {
            const auto eq = stripped.find('=');
            if (eq == std::string::npos) continue;
            auto trim = [](std::string s) {
                const auto x = s.find_first_not_of(" \t\r\n");
                if (x == std::string::npos) return std::string();
                const auto y = s.find_last_not_of(" \t\r\n");
                return s.substr(x, y - x + 1);
            };
            const std::string key = trim(stripped.substr(0, eq));
            std::vector<double> vals;
            std::istringstream vs(stripped.substr(eq + 1));
            std::string item;
            while (std::getline(vs, item, ',')) {
                item = trim(item);
                if (!item.empty()) vals.push_back(std::stod(item));
            }
            if (!key.empty() && !vals.empty()) axes.emplace_back(key, vals);
        } else {
            template_text += line + "\n";
        }
    }
    if (axes.empty()) throw std::runtime_error("sweep: no [sweep] axes found");

    io::ExperimentConfig base = io::parse_config(template_text);
    if (!out_dir_override.empty()) base.output_dir = out_dir_override;
    const std::string root = base.output_dir;

    // Cartesian product.
    std::vector<std::vector<double>> points{{}};
    for (const auto& [key, vals] : axes) {
        std::vector<std::vector<double>> next;
        for (const auto& p : points)
            for (double v : vals) {
                auto q = p;
                q.push_back(v);
                next.push_back(std::move(q));
            }
        points = std::move(next);
    }

    struct PointOutcome {
        std::string dir;
        std::vector<double> values;
        std::string verdict;
        double breaking = std::nan("");
        double predicted = std::nan("");
        double criterion = std::nan("");
        int code = 0;
        std::string error;
    };
    std::vector<std::future<PointOutcome>> futures;
    for (std::size_t i = 0; i < points.size(); ++i) {
        futures.push_back(std::async(std::launch::async, [&, i]() {
            PointOutcome out;
            out.values = points[i];
            char name[32];
            std::snprintf(name, sizeof name, "point_%03zu", i);
            out.dir = root + "/" + name;
            io::ExperimentConfig cfg = base;
            cfg.output_dir = out.dir;
            try {
                for (std::size_t a = 0; a < axes.size(); ++a)
                    apply_override(cfg, axes[a].first, points[i][a]);
                io::RunRecord rec;
                out.code = run_experiment(cfg, &rec);
                out.verdict = timestep::to_string(rec.result.verdict);
                if (rec.result.breaking_time_estimate)
                    out.breaking = *rec.result.breaking_time_estimate;
                if (!rec.certificates.empty() && rec.certificates.front().predicted_bound)
                    out.predicted = *rec.certificates.front().predicted_bound;
                if (!rec.result.reports.empty())
                    out.criterion = rec.result.reports.back().criterion_integral_cum;
            } catch (const std::exception& e) {
                out.verdict = "error";
                out.error = e.what();
                out.code = 1;
            }
            return out;
        }));
    }

    std::ostringstream csv;
    csv << "point";
    for (const auto& [key, vals] : axes) csv << ',' << key;
    csv << ",verdict,breaking_time,predicted_bound,criterion_integral,exit_code\n";
    int worst = 0;
    for (auto& f : futures) {
        const PointOutcome out = f.get();
        csv << out.dir;
        for (double v : out.values) csv << ',' << v;
        csv << ',' << out.verdict << ',' << out.breaking << ',' << out.predicted << ','
            << out.criterion << ',' << out.code << '\n';
        std::cout << out.dir << ": " << out.verdict
                  << (out.error.empty() ? "" : (" (" + out.error + ")")) << "\n";
    }
    io::write_file_atomic(root + "/summary.csv", csv.str());
    std::cout << "summary=" << root << "/summary.csv\n";
    return worst;
}

//------------------------------------------------------------------------------
// report
//------------------------------------------------------------------------------

int cmd_report(const std::string& record_dir) {
    const std::string record_path = record_dir + "/record.json";
    if (!fs::exists(record_path)) {
        std::cerr << "report: missing " << record_path << "\n";
        return 1;
    }
    const json j = json::parse(io::read_file(record_path));
    const io::ExperimentConfig cfg = io::parse_config(j.at("config").get<std::string>());
    const auto history =
        parse_norms_csv(io::read_file(record_dir + "/norms.csv"), cfg.r, cfg.s_for_hs);
    const auto traces = parse_traces_csv(io::read_file(record_dir + "/traces.csv"));

    std::cout << "record:      " << record_path << "\n";
    std::cout << "tool:        " << j.value("tool_version", "?") << "\n";
    std::cout << "verdict:     " << j.value("verdict", "?") << "\n";
    if (j.contains("breaking_time_estimate"))
        std::cout << "breaking t:  " << j["breaking_time_estimate"].get<double>() << "\n";
    if (j.contains("extrapolated_t_star"))
        std::cout << "fitted t*:   " << j["extrapolated_t_star"].get<double>() << "\n";
    std::cout << "samples:     " << history.size() << " (t in [" << history.front().t << ", "
              << history.back().t << "])\n";
    std::cout << "criterion:   integral " << history.back().criterion_integral_cum << "\n";

    if (j.contains("certificates") && !j["certificates"].empty()) {
        const json& c = j["certificates"][0];
        const bool gx_route = c.value("theorem", "gx_w11") == std::string("gx_w11");
        const double t_global = c.value(gx_route ? "t1" : "t4", 0.0);
        const double t_point = c.value(gx_route ? "t2" : "t5", 0.0);
        std::cout << "certificate: " << c.value("theorem", "?") << "  x0=" << c.value("x0", 0.0)
                  << "  v0(x0)=" << c.value("v0_at_x0", 0.0) << "\n";
        std::cout << "  slope threshold " << c.value("slope_threshold", 0.0) << ", u0_x(x0) "
                  << c.value("u0x_at_x0", 0.0) << "\n";
        if (c.contains("hypotheses_met"))
            std::cout << "  hypotheses_met = (" << (c["hypotheses_met"][0].get<bool>() ? "true" : "false")
                      << ", " << (c["hypotheses_met"][1].get<bool>() ? "true" : "false") << ")\n";
        if (c.contains("predicted_bound"))
            std::cout << "  predicted bound " << c["predicted_bound"].get<double>()
                      << " (<= " << t_point << ")\n";
        if (c.contains("observed_breaking_time"))
            std::cout << "  observed breaking " << c["observed_breaking_time"].get<double>() << "\n";

        const auto doubling = gx_route
                                  ? certificates::monitor_doubling(history, t_global)
                                  : certificates::monitor_doubling_r(history, t_global);
        std::cout << "  doubling bound on [0," << t_global << "]: "
                  << (doubling.pass ? "PASS" : "FAIL") << " margin " << doubling.margin << "\n";
        if (!traces.empty()) {
            const auto vlow = certificates::monitor_v_lower(
                traces.front(), c.value("v0_at_x0", 0.0), t_point);
            std::cout << "  v lower bound on [0," << t_point << "]: "
                      << (vlow.pass ? "PASS" : "FAIL") << " margin " << vlow.margin << "\n";
        }
    }

    const auto gron = certificates::gronwall_monitor(history);
    std::cout << "gronwall:    "
              << (gron.vacuous ? "vacuous PASS"
                               : (gron.anomaly ? "ANOMALY" : "sup c = " + std::to_string(gron.sup_c)))
              << "\n";
    return 0;
}

} // namespace gx::cli
