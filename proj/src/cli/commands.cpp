#include "agetime/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>

#include "agetime/ageop.hpp"
#include "agetime/cli/verify.hpp"
#include "agetime/evolution.hpp"

namespace agetime::cli {

using nlohmann::json;

std::string to_string(CheckStatus status)
{
    switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
    }
    return "unknown";
}

json report_to_json(const RunReport& report)
{
    json doc;
    doc["command"] = report.command;
    doc["scenario"] = config_to_json(report.scenario);
    doc["checks"] = json::array();
    for (const CheckResult& c : report.checks) {
        doc["checks"].push_back({{"name", c.name},
                                 {"defect", c.defect},
                                 {"tolerance", c.tolerance},
                                 {"passed", c.within_tolerance()},
                                 {"status", to_string(c.status)},
                                 {"note", c.note}});
    }
    doc["warnings"] = report.warnings;
    doc["manifest"] = json::array();
    for (const ManifestEntry& m : report.manifest) {
        doc["manifest"].push_back({{"file", m.file}, {"sha256", m.sha256}});
    }
    doc["exit_code"] = report.exit_code;
    return doc;
}

Scenario build_scenario(const ScenarioConfig& config)
{
    validate(config);
    try {
        LambdaNuChart chart = make_chart(config);
        StateFunctional state = make_state(chart, config.state);
        Observable observable = make_scenario_observable(chart, config.observable);
        return Scenario{config, chart, std::move(state), std::move(observable), make_times(config.times),
                        make_scenario_profile(config.profile)};
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("scenario: ") + e.what());
    }
}

Table trajectory_table(const Scenario& sc)
{
    const Trajectory traj = mean_trajectory(sc.state, sc.observable, sc.times);
    Table table{{"t", "re_mean", "im_mean", "offdiag_magnitude"}, {}};
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        table.add_row({format_double(traj.times[i]), format_double(traj.means[i].real()),
                       format_double(traj.means[i].imag()), format_double(traj.offdiag_magnitude[i])});
    }
    return table;
}

// Populated ages only: modes below 1e-28 of the total mass are noise from the
// transform and would otherwise list every grid age.
Table age_spectrum_table(const Scenario& sc)
{
    const AgeSpectrum spectrum = age_decompose(sc.state.corr());
    std::map<double, std::pair<double, bool>> by_age;  // age -> (mass, populated)
    const double total = spectrum.mass();
    for (std::size_t j = 0; j < sc.chart.n_lambda(); ++j) {
        for (int n = spectrum.min_mode(); n <= spectrum.max_mode(); ++n) {
            const double mass = spectrum.weight(j) * std::norm(spectrum.coefficient(j, n));
            auto& entry = by_age[spectrum.age(j, n)];
            entry.first += mass;
            entry.second = entry.second || (mass > 0.0 && mass > 1e-28 * total);
        }
    }
    Table table{{"s", "cumulative_mass"}, {}};
    double cumulative = 0.0;
    for (const auto& [age, entry] : by_age) {
        cumulative += entry.first;
        if (entry.second) {
            table.add_row({format_double(age), format_double(cumulative)});
        }
    }
    return table;
}

Table lyapunov_table(const Scenario& sc, bool* all_monotone)
{
    const LyapunovSeries series = lyapunov_series(sc.state, sc.profile, sc.times);
    Table table{{"t", "L_spectral", "L_direct", "monotone_ok"}, {}};
    for (const LyapunovPoint& p : series.points) {
        table.add_row({format_double(p.t), format_double(p.spectral), format_double(p.direct),
                       p.monotone_ok ? "true" : "false"});
    }
    if (all_monotone != nullptr) {
        *all_monotone = series.monotone();
    }
    return table;
}

namespace {

std::vector<double> column(const Table& table, std::size_t c)
{
    std::vector<double> out;
    out.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        out.push_back(std::stod(row[c]));
    }
    return out;
}

void plot_trajectory(OutputSet& out, const Table& table)
{
    out.write("trajectory.svg", render_svg("Off-diagonal contribution", "t", "|correlation term|", column(table, 0),
                                           {{"offdiag_magnitude", column(table, 3)}}, true));
}

void plot_age_spectrum(OutputSet& out, const Table& table)
{
    out.write("age_spectrum.svg", render_svg("Cumulative age mass", "s", "mass of E_s", column(table, 0),
                                             {{"cumulative_mass", column(table, 1)}}, false));
}

void plot_lyapunov(OutputSet& out, const Table& table)
{
    out.write("lyapunov.svg", render_svg("Lyapunov variable", "t", "L(t)", column(table, 0),
                                         {{"L_spectral", column(table, 1)}, {"L_direct", column(table, 2)}}, true));
}

void finish(RunReport& report, const OutputSet& out)
{
    report.manifest = out.manifest();
    write_file_atomic(out.directory() / "report.json", report_to_json(report).dump(2) + "\n");
}

RunReport start(const std::string& command, const Scenario& sc)
{
    RunReport report;
    report.command = command;
    report.scenario = sc.config;
    return report;
}

}  // namespace

RunReport cmd_evolve(const Scenario& sc)
{
    RunReport report = start("evolve", sc);
    OutputSet out(sc.config.outputs.directory);
    const Table table = trajectory_table(sc);
    out.write_table("trajectory", table, sc.config.outputs.format);
    if (sc.config.outputs.plot) {
        plot_trajectory(out, table);
    }
    finish(report, out);
    return report;
}

RunReport cmd_age_spectrum(const Scenario& sc)
{
    RunReport report = start("age-spectrum", sc);
    OutputSet out(sc.config.outputs.directory);
    const Table table = age_spectrum_table(sc);
    out.write_table("age_spectrum", table, sc.config.outputs.format);
    if (sc.config.outputs.plot) {
        plot_age_spectrum(out, table);
    }
    finish(report, out);
    return report;
}

RunReport cmd_lyapunov(const Scenario& sc)
{
    RunReport report = start("lyapunov", sc);
    OutputSet out(sc.config.outputs.directory);
    bool monotone = true;
    const Table table = lyapunov_table(sc, &monotone);
    out.write_table("lyapunov", table, sc.config.outputs.format);
    if (sc.config.outputs.plot) {
        plot_lyapunov(out, table);
    }
    CheckResult check{"lyapunov.monotone_table", monotone ? 0.0 : 1.0, 0.0,
                      monotone ? CheckStatus::Pass : CheckStatus::Fail, "L_spectral non-increasing over the table"};
    report.checks.push_back(check);
    report.exit_code = monotone ? kExitOk : kExitNumeric;
    finish(report, out);
    return report;
}

RunReport cmd_verify(const Scenario& sc)
{
    RunReport report = start("verify", sc);
    Coverage coverage;
    report.checks = run_verify_suite(sc, coverage, report.warnings);

    OutputSet out(sc.config.outputs.directory);
    const std::string& format = sc.config.outputs.format;
    const Table traj = trajectory_table(sc);
    const Table ages = age_spectrum_table(sc);
    const Table lyap = lyapunov_table(sc);
    coverage.use({"cmd_verify", "cmd_evolve", "cmd_age_spectrum", "cmd_lyapunov", "mean_trajectory",
                  "lyapunov_series"});
    out.write_table("trajectory", traj, format);
    out.write_table("age_spectrum", ages, format);
    out.write_table("lyapunov", lyap, format);
    if (sc.config.outputs.plot) {
        plot_trajectory(out, traj);
        plot_age_spectrum(out, ages);
        plot_lyapunov(out, lyap);
    }

    const std::vector<std::string> missing = coverage.missing();
    std::string note = "every operation exercised";
    if (!missing.empty()) {
        note = "not exercised:";
        for (const std::string& op : missing) {
            note += " " + op;
        }
    }
    const double gap = static_cast<double>(missing.size());
    report.checks.push_back({"coverage", gap, 0.0, missing.empty() ? CheckStatus::Pass : CheckStatus::Fail, note});

    const bool failed = std::any_of(report.checks.begin(), report.checks.end(),
                                    [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
    report.exit_code = failed ? kExitNumeric : kExitOk;
    finish(report, out);
    return report;
}

int run_command(const std::string& command, const CommandOptions& options, std::ostream& out, std::ostream& err)
{
    ScenarioConfig config;
    std::optional<Scenario> scenario;
    try {
        if (!options.config_path.empty()) {
            config = load_config(options.config_path);
        }
        if (options.out_dir) config.outputs.directory = *options.out_dir;
        if (options.format) config.outputs.format = *options.format;
        if (options.plot) config.outputs.plot = true;
        if (options.seed) config.seed = *options.seed;
        if (options.tolerance_scale) config.tolerance_scale = *options.tolerance_scale;
        scenario.emplace(build_scenario(config));
    } catch (const ConfigError& e) {
        err << "agetime: config error: " << e.what() << "\n";
        return kExitConfig;
    }

    RunReport report;
    try {
        if (command == "verify") {
            report = cmd_verify(*scenario);
        } else if (command == "evolve") {
            report = cmd_evolve(*scenario);
        } else if (command == "age-spectrum") {
            report = cmd_age_spectrum(*scenario);
        } else if (command == "lyapunov") {
            report = cmd_lyapunov(*scenario);
        } else {
            err << "agetime: unknown command '" << command << "'\n";
            return kExitConfig;
        }
    } catch (const std::filesystem::filesystem_error& e) {
        err << "agetime: cannot write outputs: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "agetime: " << command << " failed: " << e.what() << "\n";
        return kExitNumeric;
    }

    for (const std::string& w : report.warnings) {
        err << "warning: " << w << "\n";
    }
    for (const CheckResult& c : report.checks) {
        out << to_string(c.status) << "  " << c.name << "  defect=" << format_double(c.defect)
            << "  tolerance=" << format_double(c.tolerance) << "\n";
    }
    for (const ManifestEntry& m : report.manifest) {
        out << "wrote " << (std::filesystem::path(scenario->config.outputs.directory) / m.file).string() << "\n";
    }
    return report.exit_code;
}

}  // namespace agetime::cli
