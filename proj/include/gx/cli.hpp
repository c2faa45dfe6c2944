#pragma once
//==============================================================================
// cli.hpp
// Command implementations behind the gxsim tool, callable from tests.
// Exit codes are stable contracts:
//   run:     0 completed (or blow-up that the certificate predicted),
//            2 blow-up without a certified prediction, 3 dt underflow
//            without a certified prediction.
//   selftest: number of failing checks.
//==============================================================================

#include <string>
#include <vector>

#include "gx/config.hpp"
#include "gx/run_io.hpp"

namespace gx::cli {

inline constexpr const char* kToolVersion = "gxsys 1.0.0";

// Parses norms.csv / traces.csv back into history objects (for report).
std::vector<analysis::NormReport> parse_norms_csv(const std::string& text, double r,
                                                  double s_hs);
std::vector<timestep::CharTrace> parse_traces_csv(const std::string& text);

// Executes a full experiment described by cfg and writes the record into
// cfg.output_dir (overridable). Returns the exit code and, via out, the record.
int run_experiment(const io::ExperimentConfig& cfg, io::RunRecord* out = nullptr);

int cmd_run(const std::string& config_path, const std::string& out_dir_override);
int cmd_certify(const std::string& config_path, const std::string& out_dir_override);
int cmd_riccati(double a, double b, double f0);
int cmd_selftest(bool quick);
int cmd_sweep(const std::string& config_path, const std::string& out_dir_override);
int cmd_report(const std::string& record_dir);

} // namespace gx::cli
