// tsvx: TSV three-port macromodel extraction, what-if sweeps and spur estimates.

#include "tsv/commands.hpp"
#include "tsv/error.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct Global {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string seed_params;
    bool json = false;
};

tsv::cli::RunConfig build_config(const Global& g, const std::vector<std::pair<std::string, std::string>>& flags)
{
    tsv::cli::RunConfig config;
    if (!g.config_path.empty())
        config.load_file(g.config_path);
    for (const auto& kv : g.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw tsv::ValidationError("--set expects key=value, got '" + kv + "'");
        config.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    for (const auto& [k, v] : flags)
        config.set(k, v);
    if (!g.seed_params.empty()) {
        if (g.seed_params != "paper")
            throw tsv::ValidationError("--seed-params accepts only 'paper'");
        config.pin_reference = true;
    }
    return config;
}

std::vector<std::pair<std::string, std::string>> collect(CLI::App* app,
                                                         const std::vector<std::pair<std::string, std::string>>& map)
{
    // map: option name -> config key
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [opt, key] : map) {
        auto* o = app->get_option(opt);
        if (o->count() > 0)
            out.emplace_back(key, o->as<std::string>());
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"tsvx - three-port RLGC macromodel of a signal-ground TSV pair"};
    app.require_subcommand(1);

    Global g;
    app.add_option("-c,--config", g.config_path, "key = value parameter file (SI units)");
    app.add_option("--set", g.overrides, "override one configuration key, key=value (repeatable)");
    app.add_option("--seed-params", g.seed_params, "'paper' pins every physics constant to the built-in table");
    app.add_flag("--json", g.json, "print a machine-readable JSON summary instead of the report");

    std::string dummy;

    auto* extract = app.add_subcommand("extract", "write the .s3p file and |S21|/|S31| CSV");
    tsv::cli::ExtractOptions ex;
    std::string ex_format = "RI";
    extract->add_option("-o,--output", ex.touchstone_path, "Touchstone output path")->capture_default_str();
    extract->add_option("--csv", ex.csv_path, "S-parameter magnitude CSV path")->capture_default_str();
    extract->add_option("--z-csv", ex.z_csv_path, "optional impedance-matrix CSV path");
    extract->add_option("--format", ex_format, "Touchstone number format")
        ->check(CLI::IsMember({"RI", "MA", "DB"}))
        ->capture_default_str();
    extract->add_flag("--full", ex.full_s, "add Re/Im of all S entries to the CSV");
    extract->add_option("--points", dummy, "frequency grid points (default 201)");
    extract->add_option("--f-start", dummy, "first frequency, Hz (default 1e6)");
    extract->add_option("--f-stop", dummy, "last frequency, Hz (default 1e11)");
    extract->add_option("--spacing", dummy, "log or linear");
    extract->add_option("--z0", dummy, "reference impedance, ohm (default 50)");

    auto* sweep = app.add_subcommand("sweep", "sweep one geometry/material parameter");
    tsv::cli::SweepOptions sw;
    sweep->add_option("--param", sw.parameters, "parameter to sweep (exactly one)")->required();
    sweep->add_option("--from", sw.from, "start value, SI")->required();
    sweep->add_option("--to", sw.to, "stop value, SI")->required();
    sweep->add_option("--points", sw.points, "number of rows")->required();
    sweep->add_option("--metrics", sw.metrics, "columns to report")->delimiter(',')->capture_default_str();
    sweep->add_option("--probe", sw.probe_frequency, "frequency for frequency-dependent metrics, Hz")
        ->capture_default_str();
    sweep->add_option("--csv", sw.csv_path, "output CSV path (default: print)");

    auto* spur = app.add_subcommand("spur", "estimate the first oscillator sideband spur");
    tsv::cli::SpurOptions sp;
    std::string sp_mode = "amplitude";
    std::vector<std::string> references;
    bool bessel = false;
    spur->add_option("--mode", sp_mode, "amplitude or frequency sweep")
        ->check(CLI::IsMember({"amplitude", "frequency"}))
        ->capture_default_str();
    spur->add_option("--csv", sp.csv_path, "output CSV path");
    spur->add_option("--reference", references, "calibration point amplitude_vpp:frequency_hz:spur_dbc (repeatable)");
    spur->add_option("--k-sub", dummy, "substrate pushing gain, Hz/V (skips calibration)");
    spur->add_flag("--bessel", bessel, "use J1/J0 instead of the first-order sideband");
    spur->add_option("--f-osc", dummy, "oscillator frequency, Hz");

    auto* validate = app.add_subcommand("validate", "run the dual-route and round-trip self-checks");
    validate->add_option("--points", dummy, "frequency grid points (default 201)");

    CLI11_PARSE(app, argc, argv);

    try {
        tsv::cli::CommandResult result;
        if (extract->parsed()) {
            ex.format = ex_format == "RI" ? tsv::touchstone::Format::RI
                      : ex_format == "MA" ? tsv::touchstone::Format::MA
                                          : tsv::touchstone::Format::DB;
            const auto config = build_config(g, collect(extract, {{"--points", "points"},
                                                                  {"--f-start", "f_start"},
                                                                  {"--f-stop", "f_stop"},
                                                                  {"--spacing", "spacing"},
                                                                  {"--z0", "z0"}}));
            result = tsv::cli::cmd_extract(config, ex);
        } else if (sweep->parsed()) {
            result = tsv::cli::cmd_sweep(build_config(g, {}), sw);
        } else if (spur->parsed()) {
            auto flags = collect(spur, {{"--k-sub", "k_sub"}, {"--f-osc", "f_osc"}});
            if (!references.empty()) {
                std::string joined;
                for (const auto& r : references)
                    joined += (joined.empty() ? "" : ";") + r;
                flags.emplace_back("calibration", joined);
            }
            if (bessel)
                flags.emplace_back("sideband_model", "bessel");
            sp.mode = sp_mode == "amplitude" ? tsv::cli::SpurMode::amplitude : tsv::cli::SpurMode::frequency;
            result = tsv::cli::cmd_spur(build_config(g, flags), sp);
        } else if (validate->parsed()) {
            result = tsv::cli::cmd_validate(build_config(g, collect(validate, {{"--points", "points"}})));
        }
        if (g.json)
            std::cout << result.summary.dump(2) << '\n';
        else
            std::cout << result.report;
        return result.exit_code;
    } catch (const tsv::Error& e) {
        std::cerr << "tsvx: error: " << e.what() << '\n';
        return 2;
    }
}
