#include <iostream>

#include <CLI11.hpp>

#include "agetime/cli/commands.hpp"

int main(int argc, char** argv)
{
    using agetime::cli::CommandOptions;

    CLI::App app{"agetime: internal time superoperator on a discretized energy continuum"};
    app.require_subcommand(1);

    CommandOptions opts;
    std::string out_dir, format;
    std::uint64_t seed = 0;
    double tolerance_scale = 1.0;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opts.config_path, "scenario JSON (defaults apply when omitted)");
        sub->add_option("--out-dir", out_dir, "output directory (overrides outputs.directory)");
        sub->add_option("--format", format, "table format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--plot", opts.plot, "also write SVG plots");
        sub->add_option("--seed", seed, "seed for randomized checks");
        sub->add_option("--tolerance-scale", tolerance_scale, "multiplies every check tolerance");
    };

    add_common(app.add_subcommand("verify", "run the property checks on the scenario and write a report"));
    add_common(app.add_subcommand("evolve", "tabulate mean values of the observable along the time grid"));
    add_common(app.add_subcommand("age-spectrum", "cumulative age distribution of the state's correlation part"));
    add_common(app.add_subcommand("lyapunov", "Lyapunov series for the configured age profile"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : agetime::cli::kExitConfig;
    }

    CLI::App* sub = app.get_subcommands().front();
    if (sub->count("--out-dir") > 0) opts.out_dir = out_dir;
    if (sub->count("--format") > 0) opts.format = format;
    if (sub->count("--seed") > 0) opts.seed = seed;
    if (sub->count("--tolerance-scale") > 0) opts.tolerance_scale = tolerance_scale;

    return agetime::cli::run_command(sub->get_name(), opts, std::cout, std::cerr);
}
