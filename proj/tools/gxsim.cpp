//==============================================================================
// gxsim — pseudospectral simulator and verification harness for the Geng-Xue
// two-component cubic system and its b-family generalization.
//==============================================================================

#include <CLI11.hpp>

#include <iostream>

#include "gx/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Geng-Xue / two-component b-family simulator and blow-up verifier"};
    app.require_subcommand(1);

    std::string config_path, out_dir;

    auto* run = app.add_subcommand("run", "integrate a configured experiment to t_end");
    run->add_option("config", config_path, "experiment config file")->required();
    run->add_option("-o,--out", out_dir, "override output.dir");

    auto* certify = app.add_subcommand("certify", "evaluate the blow-up certificate only");
    certify->add_option("config", config_path, "experiment config file")->required();
    certify->add_option("-o,--out", out_dir, "override output.dir");

    double a = 1.0, b = 1.0, f0 = -2.0;
    auto* riccati = app.add_subcommand("riccati", "closed-form vs numeric Riccati blow-up time");
    riccati->add_option("--a", a, "quadratic coefficient (a > 0)")->required();
    riccati->add_option("--b", b, "constant term (b > 0)")->required();
    riccati->add_option("--f0", f0, "initial value (f0 < -sqrt(b/a))")->required();

    bool quick = false;
    auto* selftest = app.add_subcommand("selftest", "run the property suites");
    selftest->add_flag("--quick", quick, "smaller ensembles / shorter runs");

    auto* sweep = app.add_subcommand("sweep", "run a parameter grid concurrently");
    sweep->add_option("config", config_path, "template config with a [sweep] section")
        ->required();
    sweep->add_option("-o,--out", out_dir, "override output.dir");

    std::string record_dir;
    auto* report = app.add_subcommand("report", "summarize a run record directory");
    report->add_option("dir", record_dir, "record directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return gx::cli::cmd_run(config_path, out_dir);
        if (certify->parsed()) return gx::cli::cmd_certify(config_path, out_dir);
        if (riccati->parsed()) return gx::cli::cmd_riccati(a, b, f0);
        if (selftest->parsed()) return gx::cli::cmd_selftest(quick);
        if (sweep->parsed()) return gx::cli::cmd_sweep(config_path, out_dir);
        if (report->parsed()) return gx::cli::cmd_report(record_dir);
    } catch (const std::exception& e) {
        std::cerr << "gxsim: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
