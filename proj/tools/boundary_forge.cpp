// boundary-forge: inverse-design roller-track boundaries that turn a linear
// spring into a target nonlinear stiffness system, enumerate the mechanical
// configurations of a design, simulate its conservative motion and verify
// the synthesized track against exact identities.

#include <string>

#include <CLI11.hpp>

#include "bforge/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"boundary-forge: nonlinear stiffness system synthesis toolkit"};
    app.require_subcommand(1);

    std::string config, out, branch, table;
    int samples = 0;  // 0 = spec file / built-in default
    double tol = bforge::cli::kDefaultTolerance;
    double rod_length = 0.05;

    auto* design = app.add_subcommand("design", "Sample the spec's track boundary to CSV");
    design->add_option("--config", config, "Design spec JSON file")->required();
    design->add_option("--out", out, "Output CSV path")->required();
    design->add_option("--samples", samples, "Number of samples (default 1001)");

    auto* enumerate =
        app.add_subcommand("enumerate", "Census of all eight candidate configurations");
    enumerate->add_option("--config", config, "Design spec JSON file")->required();
    enumerate->add_option("--out", out, "Output directory")->required();
    enumerate->add_option("--samples", samples, "Samples per branch CSV (default 1001)");

    auto* simulate = app.add_subcommand("simulate", "Integrate the conservative motion");
    simulate->add_option("--config", config, "Design spec JSON file (needs a sim block)")
        ->required();
    simulate->add_option("--branch", branch, "Branch name (Y11..Y24)")->required();
    simulate->add_option("--out", out, "Output CSV path")->required();

    auto* verify = app.add_subcommand("verify", "Check the synthesis identities");
    verify->add_option("--config", config, "Design spec JSON file")->required();
    verify->add_option("--tol", tol, "Tolerance (default 1e-8)");
    verify->add_option("--table", table, "Replay a design CSV instead of fresh sampling");
    verify->add_option("--out", out, "Write the verification JSON here (default stdout)");
    verify->add_option("--samples", samples, "Samples per branch (default 1001)");

    auto* demo = app.add_subcommand("duffing-demo", "Softening Duffing showcase");
    demo->add_option("--out", out, "Output directory")->required();
    demo->add_option("--rod-length", rod_length, "Rod length L in metres (default 0.05)");
    demo->add_option("--samples", samples, "Samples per branch CSV (default 1001)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : bforge::cli::kExitSchema;
    }

    if (design->parsed()) return bforge::cli::cmd_design(config, out, samples);
    if (enumerate->parsed()) return bforge::cli::cmd_enumerate(config, out, samples);
    if (simulate->parsed()) return bforge::cli::cmd_simulate(config, branch, out);
    if (verify->parsed()) return bforge::cli::cmd_verify(config, tol, table, out, samples);
    if (demo->parsed())
        return bforge::cli::cmd_duffing_demo(
            out, rod_length, samples > 0 ? samples : bforge::cli::kDefaultSamples);
    return bforge::cli::kExitSchema;
}
