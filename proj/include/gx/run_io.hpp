#pragma once
//==============================================================================
// run_io.hpp
// Serialization of runs: norms.csv / traces.csv with fixed schemas,
// certificate.json and record.json (schema-versioned), and the run registry
// directory layout. All file writes are whole-file atomic (write + rename).
//==============================================================================

#include <optional>
#include <string>
#include <vector>

#include "gx/certificates.hpp"
#include "gx/config.hpp"
#include "gx/timestep.hpp"

namespace gx::io {

inline constexpr int kSchemaVersion = 1;

// norms.csv columns, in order:
//   t, dt, sup_u, sup_ux, sup_v, sup_vx, w11_u, w1r_u, w1inf_u, w1inf_v,
//   sup_n, hs_u, hs_v, besov221_u, besov221_v, int_m, int_um,
//   criterion_integral_cum, min_ux
std::string norms_csv(const std::vector<analysis::NormReport>& reports);

// traces.csv columns: t, x0, q, u_at_q, ux_at_q, v_at_q, n_at_q (long format).
std::string traces_csv(const std::vector<timestep::CharTrace>& traces);

std::string certificate_json(const certificates::BlowupCertificate& cert);

struct RunRecord {
    ExperimentConfig config;
    timestep::RunResult result;
    std::vector<certificates::BlowupCertificate> certificates;
    std::string provenance;
    std::string tool_version;
    double wall_seconds = 0.0;
};

std::string record_json(const RunRecord& rec);

// Atomic whole-file write (temp + rename). Creates parent directories.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// Writes norms.csv, traces.csv, certificate.json (if any) and record.json
// into dir.
void write_run_record(const std::string& dir, const RunRecord& rec);

} // namespace gx::io
