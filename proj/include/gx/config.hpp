#pragma once
//==============================================================================
// config.hpp
// Flat key-value experiment configuration: "[section]" headers, "key = value"
// lines, '#' comments, comma-separated lists. Unknown keys are hard errors
// (reported as section.key); omitted keys take the documented defaults.
//==============================================================================

#include <string>
#include <vector>

#include "gx/models.hpp"
#include "gx/timestep.hpp"

namespace gx::io {

enum class InitialKind { gaussian_pair, smoothed_peakon_pair, steep_certified, samples_file };

struct InitialSpec {
    InitialKind kind = InitialKind::gaussian_pair;
    // gaussian_pair / smoothed_peakon_pair
    double u_amplitude = 1.0, u_center = 0.0, u_width = 2.0, u_offset = 0.0;
    double v_amplitude = 1.0, v_center = 0.0, v_width = 2.0, v_offset = 0.0;
    double mollify_scale = 0.05;  // smoothed_peakon_pair
    // steep_certified
    double multiplier = 2.0;
    double x0 = 0.0;
    double v0_at_x0 = 1.0;
    double slope_width = 0.5;
    double v_plateau_width = 4.0;
    // samples_file
    std::string file;

    bool operator==(const InitialSpec&) const = default;
};

struct MonitorFlags {
    bool doubling = true;
    bool v_lower = true;
    bool bfam = false;
    bool gronwall = true;

    bool operator==(const MonitorFlags&) const = default;
};

struct ExperimentConfig {
    models::Family family = models::Family::geng_xue;
    double b = 3.0;
    double r = 1.0;
    models::Formulation formulation = models::Formulation::uv_nonlocal;

    double grid_L = 50.0;
    int grid_N = 256;

    timestep::StepPolicy policy;

    InitialSpec initial;

    MonitorFlags monitors;
    double s_for_hs = 3.0;
    std::vector<double> track_x0;
    bool swap_roles = false;

    std::string output_dir = "out";
    std::uint64_t seed = 0;

    bool operator==(const ExperimentConfig&) const = default;

    models::ModelParams model_params() const {
        return {family, b, r, formulation};
    }
};

// Throws std::runtime_error with the offending section.key on unknown keys,
// type mismatches, missing required keys, or invariant violations.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

} // namespace gx::io
