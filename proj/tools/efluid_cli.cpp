#include "efluid/cli/commands.hpp"
#include "efluid/errors.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <iostream>

namespace fs = std::filesystem;
using namespace efluid;

int main(int argc, char** argv)
{
    CLI::App app{"Economic-space fluid simulator"};
    app.set_version_flag("--version", cli::version_string);
    app.require_subcommand(1);

    fs::path sim_cfg;
    std::optional<fs::path> sim_out;
    auto* simulate = app.add_subcommand("simulate", "Run a configured simulation");
    simulate->add_option("config", sim_cfg, "Configuration file")->required();
    simulate->add_option("-o,--output", sim_out, "Output directory (default: output.directory)");

    cli::DisperseArgs dargs;
    fs::path disp_out;
    auto* disperse = app.add_subcommand("disperse", "Tabulate dispersion roots over a wavenumber range");
    disperse->add_option("--alpha-i", dargs.alpha_i)->required();
    disperse->add_option("--alpha-c", dargs.alpha_c)->required();
    disperse->add_option("--beta-i", dargs.beta_i)->required();
    disperse->add_option("--beta-c", dargs.beta_c)->required();
    disperse->add_option("--ui0", dargs.u_i0, "Background density of I")->capture_default_str();
    disperse->add_option("--uc0", dargs.u_c0, "Background density of C")->capture_default_str();
    disperse->add_option("--k-min", dargs.k_min)->required();
    disperse->add_option("--k-max", dargs.k_max)->required();
    disperse->add_option("--k-steps", dargs.k_steps)->required();
    disperse->add_option("-o,--output", disp_out)->required();

    fs::path scan_cfg, scan_out;
    auto* scan = app.add_subcommand("scan", "Regime map over parameter points or operator pairings");
    scan->add_option("config", scan_cfg, "Scan configuration")->required();
    scan->add_option("-o,--output", scan_out)->required();

    fs::path agg_index, agg_out;
    auto* aggregate = app.add_subcommand("aggregate", "Macro series of a stored trajectory");
    aggregate->add_option("index", agg_index, "Trajectory index.csv")->required();
    aggregate->add_option("-o,--output", agg_out)->required();

    std::size_t count = 0;
    std::uint64_t seed = 0;
    fs::path agents_spec, agents_out;
    auto* agents = app.add_subcommand("agents", "Generate an agent ensemble and its aggregated fields");
    agents->add_option("--count", count)->required();
    agents->add_option("--seed", seed)->required();
    agents->add_option("--spec", agents_spec)->required();
    agents->add_option("-o,--output", agents_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*simulate) {
            const auto r = cli::cmd_simulate(sim_cfg, sim_out);
            for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
            std::cout << fmt::format("{} steps, dt = {}, output in {}\n", r.summary.steps, r.summary.dt, r.directory.string());
        } else if (*disperse) {
            cli::cmd_disperse(dargs, disp_out);
        } else if (*scan) {
            cli::cmd_scan(scan_cfg, scan_out);
        } else if (*aggregate) {
            cli::cmd_aggregate(agg_index, agg_out);
        } else if (*agents) {
            cli::cmd_agents(count, seed, agents_spec, agents_out);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
