#include "gx/run_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gx::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string norms_csv(const std::vector<analysis::NormReport>& reports) {
    std::ostringstream out;
    out << "t,dt,sup_u,sup_ux,sup_v,sup_vx,w11_u,w1r_u,w1inf_u,w1inf_v,sup_n,hs_u,hs_v,"
           "besov221_u,besov221_v,int_m,int_um,criterion_integral_cum,min_ux\n";
    for (const auto& r : reports) {
        out << fmt(r.t) << ',' << fmt(r.dt) << ',' << fmt(r.sup_u) << ',' << fmt(r.sup_ux)
            << ',' << fmt(r.sup_v) << ',' << fmt(r.sup_vx) << ',' << fmt(r.w11_u) << ','
            << fmt(r.w1r_u) << ',' << fmt(r.w1inf_u) << ',' << fmt(r.w1inf_v) << ','
            << fmt(r.sup_n) << ',' << fmt(r.hs_u) << ',' << fmt(r.hs_v) << ','
            << fmt(r.besov221_u) << ',' << fmt(r.besov221_v) << ',' << fmt(r.int_m) << ','
            << fmt(r.int_um) << ',' << fmt(r.criterion_integral_cum) << ',' << fmt(r.min_ux)
            << '\n';
    }
    return out.str();
}

std::string traces_csv(const std::vector<timestep::CharTrace>& traces) {
    std::ostringstream out;
    out << "t,x0,q,u_at_q,ux_at_q,v_at_q,n_at_q\n";
    for (const auto& tr : traces) {
        for (std::size_t i = 0; i < tr.t.size(); ++i) {
            out << fmt(tr.t[i]) << ',' << fmt(tr.x0) << ',' << fmt(tr.q[i]) << ','
                << fmt(tr.u_at_q[i]) << ',' << fmt(tr.ux_at_q[i]) << ',' << fmt(tr.v_at_q[i])
                << ',' << fmt(tr.n_at_q[i]) << '\n';
        }
    }
    return out.str();
}

namespace {

json cert_to_json(const certificates::BlowupCertificate& c) {
    json j;
    j["schema_version"] = kSchemaVersion;
    const bool gx_route = c.theorem == certificates::Theorem::gx_w11;
    j["theorem"] = gx_route ? "gx_w11" : "bfam_w1r";
    j["x0"] = c.x0;
    j["v0_at_x0"] = c.v0_at_x0;
    j["u0x_at_x0"] = c.u0x_at_x0;
    j["r"] = c.r;
    j[gx_route ? "w11_u0" : "w1r_u0_pow_r"] = c.norm_u0;
    j["sup_n0"] = c.sup_n0;
    j["norm_sum"] = c.norm_sum;
    j[gx_route ? "t1" : "t4"] = c.t_global;
    j[gx_route ? "t2" : "t5"] = c.t_point;
    j[gx_route ? "b1" : "c2"] = c.growth_const;
    j["slope_threshold"] = c.slope_threshold;
    j["hypotheses_met"] = {c.hyp_v0_positive, c.hyp_slope};
    j["point_bound_ordered"] = c.point_bound_ordered;
    if (c.riccati_time) j["riccati_time"] = *c.riccati_time;
    if (c.theorem_form_bound) j["theorem_form_bound"] = *c.theorem_form_bound;
    if (c.predicted_bound) j["predicted_bound"] = *c.predicted_bound;
    if (c.observed_breaking_time) j["observed_breaking_time"] = *c.observed_breaking_time;
    j["refinement_confirmed"] = c.refinement_confirmed;
    j["notes"] = c.notes;
    return j;
}

} // namespace

std::string certificate_json(const certificates::BlowupCertificate& cert) {
    return cert_to_json(cert).dump(2) + "\n";
}

std::string record_json(const RunRecord& rec) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["tool_version"] = rec.tool_version;
    j["wall_seconds"] = rec.wall_seconds;
    j["config"] = serialize_config(rec.config);
    j["provenance"] = rec.provenance;
    j["verdict"] = timestep::to_string(rec.result.verdict);
    if (rec.result.breaking_time_estimate)
        j["breaking_time_estimate"] = *rec.result.breaking_time_estimate;
    if (rec.result.extrapolated_t_star)
        j["extrapolated_t_star"] = *rec.result.extrapolated_t_star;
    j["steps"] = rec.result.steps;
    j["sample_times"] = rec.result.times;
    json certs = json::array();
    for (const auto& c : rec.certificates) certs.push_back(cert_to_json(c));
    j["certificates"] = certs;
    return j.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    const fs::path tmp = p.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("short write on " + tmp.string());
    }
    fs::rename(tmp, p);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_run_record(const std::string& dir, const RunRecord& rec) {
    write_file_atomic(dir + "/norms.csv", norms_csv(rec.result.reports));
    write_file_atomic(dir + "/traces.csv", traces_csv(rec.result.traces));
    if (!rec.certificates.empty())
        write_file_atomic(dir + "/certificate.json", certificate_json(rec.certificates.front()));
    write_file_atomic(dir + "/record.json", record_json(rec));
}

} // namespace gx::io
