#include "gx/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gx::io {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error("config: " + what); }

class KvReader {
public:
    explicit KvReader(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        std::string section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') fail("malformed section header at line " + std::to_string(lineno));
                section = trim(line.substr(1, line.size() - 2));
                if (section.empty()) fail("empty section name at line " + std::to_string(lineno));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) fail("expected key = value at line " + std::to_string(lineno));
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) fail("empty key at line " + std::to_string(lineno));
            if (section.empty()) fail("key '" + key + "' outside any section");
            const std::string full = section + "." + key;
            if (kv_.count(full)) fail("duplicate key " + full);
            kv_[full] = value;
        }
    }

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::string str(const std::string& key, const std::string& dflt) {
        consumed_.insert(key);
        auto it = kv_.find(key);
        return it == kv_.end() ? dflt : it->second;
    }
    std::string required(const std::string& key) {
        consumed_.insert(key);
        auto it = kv_.find(key);
        if (it == kv_.end()) fail("missing required key " + key);
        return it->second;
    }
    double num(const std::string& key, double dflt) {
        consumed_.insert(key);
        auto it = kv_.find(key);
        if (it == kv_.end()) return dflt;
        return parse_num(key, it->second);
    }
    long integer(const std::string& key, long dflt) {
        consumed_.insert(key);
        auto it = kv_.find(key);
        if (it == kv_.end()) return dflt;
        const double v = parse_num(key, it->second);
        if (v != std::floor(v)) fail(key + ": expected an integer, got '" + it->second + "'");
        return static_cast<long>(v);
    }
    bool flag(const std::string& key, bool dflt) {
        consumed_.insert(key);
        auto it = kv_.find(key);
        if (it == kv_.end()) return dflt;
        if (it->second == "true" || it->second == "1") return true;
        if (it->second == "false" || it->second == "0") return false;
        fail(key + ": expected true/false, got '" + it->second + "'");
    }
    std::vector<double> num_list(const std::string& key) {
        consumed_.insert(key);
        std::vector<double> out;
        auto it = kv_.find(key);
        if (it == kv_.end()) return out;
        std::istringstream in(it->second);
        std::string item;
        while (std::getline(in, item, ',')) {
            item = trim(item);
            if (!item.empty()) out.push_back(parse_num(key, item));
        }
        return out;
    }

    void reject_unknown() const {
        for (const auto& [key, value] : kv_)
            if (!consumed_.count(key)) fail("unknown key " + key);
    }

private:
    double parse_num(const std::string& key, const std::string& text) {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(text, &pos);
        } catch (const std::exception&) {
            fail(key + ": expected a number, got '" + text + "'");
        }
        if (pos != text.size()) fail(key + ": trailing characters in '" + text + "'");
        if (!std::isfinite(v)) fail(key + ": value must be finite");
        return v;
    }

    std::map<std::string, std::string> kv_;
    std::set<std::string> consumed_;
};

InitialKind parse_kind(const std::string& s) {
    if (s == "gaussian_pair") return InitialKind::gaussian_pair;
    if (s == "smoothed_peakon_pair") return InitialKind::smoothed_peakon_pair;
    if (s == "steep_certified") return InitialKind::steep_certified;
    if (s == "samples_file") return InitialKind::samples_file;
    fail("initial.kind: unknown kind '" + s + "'");
}

const char* kind_name(InitialKind k) {
    switch (k) {
        case InitialKind::gaussian_pair: return "gaussian_pair";
        case InitialKind::smoothed_peakon_pair: return "smoothed_peakon_pair";
        case InitialKind::steep_certified: return "steep_certified";
        default: return "samples_file";
    }
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    KvReader kv(text);
    ExperimentConfig cfg;

    const std::string family = kv.required("model.family");
    if (family == "geng_xue")
        cfg.family = models::Family::geng_xue;
    else if (family == "b_family")
        cfg.family = models::Family::b_family;
    else
        fail("model.family: expected geng_xue or b_family, got '" + family + "'");
    cfg.b = kv.num("model.b", 3.0);
    cfg.r = kv.num("model.r", 1.0);
    const std::string form = kv.str("model.formulation", "uv");
    if (form == "uv")
        cfg.formulation = models::Formulation::uv_nonlocal;
    else if (form == "mn")
        cfg.formulation = models::Formulation::mn_transport;
    else
        fail("model.formulation: expected uv or mn, got '" + form + "'");

    cfg.grid_L = kv.num("grid.L", 50.0);
    cfg.grid_N = static_cast<int>(kv.integer("grid.N", 256));
    if (cfg.grid_L <= 0.0) fail("grid.L: must be positive");

    cfg.policy.t_end = kv.num("policy.t_end", -1.0);
    if (cfg.policy.t_end < 0.0) fail("missing required key policy.t_end (or negative value)");
    cfg.policy.dt_init = kv.num("policy.dt_init", 1e-2);
    cfg.policy.dt_min = kv.num("policy.dt_min", 1e-10);
    cfg.policy.cfl = kv.num("policy.cfl", 0.3);
    cfg.policy.slope_cap = kv.num("policy.slope_cap", 1e6);
    cfg.policy.output_stride = static_cast<int>(kv.integer("policy.output_stride", 10));
    cfg.policy.oversample = static_cast<int>(kv.integer("policy.oversample", 4));

    cfg.initial.kind = parse_kind(kv.required("initial.kind"));
    cfg.initial.u_amplitude = kv.num("initial.u_amplitude", 1.0);
    cfg.initial.u_center = kv.num("initial.u_center", 0.0);
    cfg.initial.u_width = kv.num("initial.u_width", 2.0);
    cfg.initial.u_offset = kv.num("initial.u_offset", 0.0);
    cfg.initial.v_amplitude = kv.num("initial.v_amplitude", 1.0);
    cfg.initial.v_center = kv.num("initial.v_center", 0.0);
    cfg.initial.v_width = kv.num("initial.v_width", 2.0);
    cfg.initial.v_offset = kv.num("initial.v_offset", 0.0);
    cfg.initial.mollify_scale = kv.num("initial.mollify_scale", 0.05);
    cfg.initial.multiplier = kv.num("initial.multiplier", 2.0);
    cfg.initial.x0 = kv.num("initial.x0", 0.0);
    cfg.initial.v0_at_x0 = kv.num("initial.v0_at_x0", 1.0);
    cfg.initial.slope_width = kv.num("initial.slope_width", 0.5);
    cfg.initial.v_plateau_width = kv.num("initial.v_plateau_width", 4.0);
    cfg.initial.file = kv.str("initial.file", "");

    cfg.monitors.doubling = kv.flag("monitors.doubling", true);
    cfg.monitors.v_lower = kv.flag("monitors.v_lower", true);
    cfg.monitors.bfam = kv.flag("monitors.bfam", false);
    cfg.monitors.gronwall = kv.flag("monitors.gronwall", true);
    cfg.s_for_hs = kv.num("monitors.s_for_hs", 3.0);
    cfg.track_x0 = kv.num_list("monitors.track_x0");
    cfg.swap_roles = kv.flag("monitors.swap_roles", false);

    cfg.output_dir = kv.str("output.dir", "out");
    cfg.seed = static_cast<std::uint64_t>(kv.integer("output.seed", 0));

    kv.reject_unknown();

    // Invariants.
    if (cfg.monitors.bfam) {
        if (cfg.family != models::Family::b_family)
            fail("monitors.bfam: requires model.family = b_family");
        const double want = 1.0 + 2.0 / cfg.r;
        if (cfg.r < 2.0 || std::fabs(cfg.b - want) > 1e-12)
            fail("model.b: b-family certificate monitors require b = 1 + 2/r with r >= 2 "
                 "(got b = " + fmt(cfg.b) + ", r = " + fmt(cfg.r) + ")");
    }
    if (cfg.initial.kind == InitialKind::samples_file && cfg.initial.file.empty())
        fail("initial.file: required for kind = samples_file");
    cfg.policy.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "[model]\n";
    out << "family = " << (cfg.family == models::Family::geng_xue ? "geng_xue" : "b_family")
        << "\n";
    out << "b = " << fmt(cfg.b) << "\n";
    out << "r = " << fmt(cfg.r) << "\n";
    out << "formulation = "
        << (cfg.formulation == models::Formulation::uv_nonlocal ? "uv" : "mn") << "\n\n";

    out << "[grid]\n";
    out << "L = " << fmt(cfg.grid_L) << "\n";
    out << "N = " << cfg.grid_N << "\n\n";

    out << "[policy]\n";
    out << "t_end = " << fmt(cfg.policy.t_end) << "\n";
    out << "dt_init = " << fmt(cfg.policy.dt_init) << "\n";
    out << "dt_min = " << fmt(cfg.policy.dt_min) << "\n";
    out << "cfl = " << fmt(cfg.policy.cfl) << "\n";
    out << "slope_cap = " << fmt(cfg.policy.slope_cap) << "\n";
    out << "output_stride = " << cfg.policy.output_stride << "\n";
    out << "oversample = " << cfg.policy.oversample << "\n\n";

    out << "[initial]\n";
    out << "kind = " << kind_name(cfg.initial.kind) << "\n";
    out << "u_amplitude = " << fmt(cfg.initial.u_amplitude) << "\n";
    out << "u_center = " << fmt(cfg.initial.u_center) << "\n";
    out << "u_width = " << fmt(cfg.initial.u_width) << "\n";
    out << "u_offset = " << fmt(cfg.initial.u_offset) << "\n";
    out << "v_amplitude = " << fmt(cfg.initial.v_amplitude) << "\n";
    out << "v_center = " << fmt(cfg.initial.v_center) << "\n";
    out << "v_width = " << fmt(cfg.initial.v_width) << "\n";
    out << "v_offset = " << fmt(cfg.initial.v_offset) << "\n";
    out << "mollify_scale = " << fmt(cfg.initial.mollify_scale) << "\n";
    out << "multiplier = " << fmt(cfg.initial.multiplier) << "\n";
    out << "x0 = " << fmt(cfg.initial.x0) << "\n";
    out << "v0_at_x0 = " << fmt(cfg.initial.v0_at_x0) << "\n";
    out << "slope_width = " << fmt(cfg.initial.slope_width) << "\n";
    out << "v_plateau_width = " << fmt(cfg.initial.v_plateau_width) << "\n";
    if (!cfg.initial.file.empty()) out << "file = " << cfg.initial.file << "\n";
    out << "\n[monitors]\n";
    out << "doubling = " << (cfg.monitors.doubling ? "true" : "false") << "\n";
    out << "v_lower = " << (cfg.monitors.v_lower ? "true" : "false") << "\n";
    out << "bfam = " << (cfg.monitors.bfam ? "true" : "false") << "\n";
    out << "gronwall = " << (cfg.monitors.gronwall ? "true" : "false") << "\n";
    out << "s_for_hs = " << fmt(cfg.s_for_hs) << "\n";
    if (!cfg.track_x0.empty()) {
        out << "track_x0 = ";
        for (std::size_t i = 0; i < cfg.track_x0.size(); ++i)
            out << (i ? ", " : "") << fmt(cfg.track_x0[i]);
        out << "\n";
    }
    out << "swap_roles = " << (cfg.swap_roles ? "true" : "false") << "\n\n";

    out << "[output]\n";
    out << "dir = " << cfg.output_dir << "\n";
    out << "seed = " << cfg.seed << "\n";
    return out.str();
}

} // namespace gx::io
