#include "tsv/commands.hpp"

#include "tsv/checks.hpp"
#include "tsv/csv.hpp"
#include "tsv/error.hpp"
#include "tsv/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace tsv::cli {

namespace {

std::size_t parse_count(const std::string& key, const std::string& value)
{
    const double v = parse_number(key, value);
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e7)
        throw ValidationError("'" + key + "' must be a positive integer, got '" + value + "'");
    return static_cast<std::size_t>(v);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        out.push_back(b == std::string::npos ? std::string{} : item.substr(b, e - b + 1));
    }
    return out;
}

std::vector<spur::ReferencePoint> parse_reference_points(const std::string& value)
{
    if (value == "paper" || value == "reference")
        return {spur::reference_calibration_point()};
    std::vector<spur::ReferencePoint> out;
    for (const auto& item : split(value, ';')) {
        if (item.empty())
            continue;
        const auto f = split(item, ':');
        if (f.size() != 3)
            throw ValidationError("calibration point must be amplitude_vpp:frequency_hz:spur_dbc, got '" + item + "'");
        out.push_back({parse_number("calibration", f[0]), parse_number("calibration", f[1]),
                       parse_number("calibration", f[2])});
    }
    if (out.empty())
        throw ValidationError("calibration needs at least one point");
    return out;
}

std::optional<complex> parse_load(const std::string& value)
{
    if (value == "open")
        return std::nullopt;
    const auto parts = split(value, ',');
    if (parts.size() == 1)
        return complex{parse_number("substrate_load", parts[0]), 0.0};
    if (parts.size() == 2)
        return complex{parse_number("substrate_load", parts[0]), parse_number("substrate_load", parts[1])};
    throw ValidationError("substrate_load must be 'open', 'R' or 'R,X'");
}

std::string fixed(double v, int digits)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

std::string general(double v) { return csv::format_number(v); }

std::vector<double> linspace(double a, double b, std::size_t n)
{
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    if (n > 1)
        out.back() = b;
    return out;
}

// Rendered output files; written only once every computation succeeded.
struct PendingFiles {
    std::vector<std::pair<std::string, std::string>> files;

    void add(const std::string& path, std::string content)
    {
        if (!path.empty())
            files.emplace_back(path, std::move(content));
    }
    void commit() const
    {
        for (const auto& [path, content] : files) {
            std::ofstream f(path, std::ios::binary);
            if (!f)
                throw Error("cannot open '" + path + "' for writing");
            f << content;
            if (!f)
                throw Error("write failure on '" + path + "'");
        }
    }
};

spur::OscillatorModel calibrated_oscillator(const RunConfig& config, const spur::SubstrateCoupling& coupling,
                                            nlohmann::json& summary, std::ostream& report)
{
    spur::OscillatorModel osc = config.oscillator;
    if (config.k_sub) {
        osc.k_sub = *config.k_sub;
        summary["calibration"] = {{"source", "k_sub"}, {"k_sub_hz_per_v", osc.k_sub}};
        report << "k_sub (given)        " << general(osc.k_sub) << " Hz/V\n";
        return osc;
    }
    const auto cal = spur::calibrate_k_sub(config.calibration, coupling);
    osc.k_sub = cal.k_sub;
    summary["calibration"] = {{"source", "reference_points"},
                              {"points", config.calibration.size()},
                              {"k_sub_hz_per_v", cal.k_sub},
                              {"residuals_db", cal.residuals},
                              {"residual_spread_db", cal.residual_spread},
                              {"inconsistent", cal.inconsistent}};
    report << "k_sub (calibrated)   " << general(cal.k_sub) << " Hz/V from " << config.calibration.size()
           << " point(s), residual spread " << fixed(cal.residual_spread, 3) << " dB\n";
    if (cal.inconsistent) {
        report << "warning: calibration residuals spread more than " << spur::inconsistency_spread_db
               << " dB:";
        for (double r : cal.residuals)
            report << ' ' << fixed(r, 2);
        report << '\n';
    }
    return osc;
}

} // namespace

void RunConfig::set(const std::string& key, const std::string& value)
{
    if (params.apply(key, value)) {
        physics_overrides.insert(key);
        return;
    }
    if (key == "f_start") f_start = parse_number(key, value);
    else if (key == "f_stop") f_stop = parse_number(key, value);
    else if (key == "points") points = parse_count(key, value);
    else if (key == "spacing") {
        if (value == "log" || value == "logarithmic") spacing = Spacing::logarithmic;
        else if (value == "linear") spacing = Spacing::linear;
        else throw ValidationError("spacing must be 'log' or 'linear', got '" + value + "'");
    }
    else if (key == "z0") z0 = parse_number(key, value);
    else if (key == "f_osc") oscillator.f_osc = parse_number(key, value);
    else if (key == "carrier_power_db") oscillator.carrier_power_db = parse_number(key, value);
    else if (key == "k_sub") k_sub = parse_number(key, value);
    else if (key == "termination") termination = parse_number(key, value);
    else if (key == "substrate_load") substrate_load = parse_load(value);
    else if (key == "sideband_model") {
        if (value == "first_order") sideband = spur::SidebandModel::first_order;
        else if (value == "bessel") sideband = spur::SidebandModel::bessel;
        else throw ValidationError("sideband_model must be 'first_order' or 'bessel'");
    }
    else if (key == "calibration") calibration = parse_reference_points(value);
    else if (key == "amplitude_start") amplitude_start = parse_number(key, value);
    else if (key == "amplitude_stop") amplitude_stop = parse_number(key, value);
    else if (key == "amplitude_points") amplitude_points = parse_count(key, value);
    else if (key == "amplitude_sweep_frequency") amplitude_sweep_frequency = parse_number(key, value);
    else if (key == "frequency_start") frequency_start = parse_number(key, value);
    else if (key == "frequency_stop") frequency_stop = parse_number(key, value);
    else if (key == "frequency_points") frequency_points = parse_count(key, value);
    else if (key == "frequency_sweep_amplitude") frequency_sweep_amplitude = parse_number(key, value);
    else throw ValidationError("unknown configuration key '" + key + "'");
}

void RunConfig::load(std::istream& in)
{
    for (const auto& kv : parse_key_values(in)) {
        try {
            set(kv.key, kv.value);
        } catch (const ValidationError& e) {
            throw ParseError(e.what(), kv.line);
        }
    }
}

void RunConfig::load_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw Error("cannot open configuration file '" + path + "'");
    load(f);
}

ParameterSet RunConfig::resolved_params() const
{
    if (pin_reference && !physics_overrides.empty()) {
        std::string keys;
        for (const auto& k : physics_overrides)
            keys += (keys.empty() ? "" : ", ") + k;
        throw ValidationError("--seed-params paper pins the reference parameter set, but these were overridden: "
                              + keys);
    }
    ParameterSet p = pin_reference ? ParameterSet{} : params;
    p.resolve();
    return p;
}

FrequencyGrid RunConfig::grid() const
{
    if (!(z0 > 0.0))
        throw ValidationError("z0 must be > 0");
    if (!(f_stop > f_start))
        throw ValidationError("f_stop must exceed f_start");
    return spacing == Spacing::logarithmic ? FrequencyGrid::logarithmic(f_start, f_stop, points)
                                           : FrequencyGrid::linear(f_start, f_stop, points);
}

std::vector<std::string> describe(const ParameterSet& p, double z0)
{
    const auto& g = p.geometry;
    const auto& m = p.material;
    return {
        "height = " + general(g.height),
        "radius = " + general(g.radius),
        "pitch = " + general(g.pitch),
        "liner_thickness = " + general(g.liner_thickness),
        "rho_cu = " + general(m.rho_cu),
        "mu_r = " + general(m.mu_r),
        "eps_ox = " + general(m.eps_ox),
        "eps_si = " + general(m.eps_si),
        "n_a = " + general(m.n_a),
        "n_i = " + general(m.n_i),
        "sigma_si = " + general(m.sigma_si),
        "temperature = " + general(m.temperature),
        "z0 = " + general(z0),
    };
}

CommandResult cmd_extract(const RunConfig& config, const ExtractOptions& options)
{
    const ParameterSet p = config.resolved_params();
    const FrequencyGrid grid = config.grid();
    const auto zs = z_sweep(grid, p.geometry, p.material, p.guards);
    const auto ss = s_sweep(zs, config.z0);

    std::vector<std::string> header{"tsvx extract: signal-ground TSV three-port RLGC macromodel",
                                    "ports: 1 = signal bottom, 2 = substrate, 3 = signal top"};
    for (auto& line : describe(p, config.z0))
        header.push_back(std::move(line));

    PendingFiles out;
    out.add(options.touchstone_path, touchstone::to_string(ss, {options.format, header}));
    out.add(options.csv_path, csv::s_table(ss, options.full_s).str());
    if (!options.z_csv_path.empty())
        out.add(options.z_csv_path, csv::z_table(zs).str());
    out.commit();

    const auto& g = p.geometry;
    const auto& m = p.material;
    const double rdc = r_dc(g, m);
    const double ltsv = l_tsv(g, m);
    const double cox = c_ox(g, m, p.guards);
    const double wd = depletion_width(m);
    const double cd = c_d(g, m, wd, p.guards);
    const auto shunt = c_si_g_si(g, m, p.guards);

    CommandResult r;
    r.summary = {
        {"command", "extract"},
        {"points", grid.size()},
        {"touchstone", options.touchstone_path},
        {"csv", options.csv_path},
        {"option_line", "# Hz S " + touchstone::format_name(options.format) + " R " + general(config.z0)},
        {"elements", {{"r_dc_ohm", rdc}, {"l_tsv_h", ltsv}, {"c_ox_f", cox}, {"depletion_width_m", wd},
                      {"c_d_f", cd}, {"c_si_f", shunt.capacitance}, {"g_si_s", shunt.conductance}}},
    };

    std::ostringstream rep;
    rep << "element    value\n"
        << "R_DC       " << fixed(rdc * 1e3, 4) << " mOhm\n"
        << "L_TSV      " << fixed(ltsv * 1e12, 4) << " pH\n"
        << "C_ox       " << fixed(cox * 1e15, 4) << " fF\n"
        << "W_d        " << fixed(wd * 1e6, 4) << " um\n"
        << "C_d        " << fixed(cd * 1e15, 4) << " fF\n"
        << "C_si       " << fixed(shunt.capacitance * 1e15, 4) << " fF\n"
        << "G_si       " << fixed(shunt.conductance * 1e6, 4) << " uS\n"
        << "wrote " << grid.size() << " records to " << options.touchstone_path << '\n';
    r.report = rep.str();
    return r;
}

const std::vector<std::string>& sweep_metrics()
{
    static const std::vector<std::string> m = {"r_dc",  "r_total", "l_tsv",  "c_ox",   "depletion_width",
                                               "c_d",   "c_si",    "g_si",   "s21_db", "s31_db",
                                               "transfer_db"};
    return m;
}

CommandResult cmd_sweep(const RunConfig& config, const SweepOptions& options)
{
    if (options.parameters.size() != 1)
        throw ValidationError("sweep takes exactly one parameter, got " + std::to_string(options.parameters.size()));
    const std::string& name = options.parameters.front();
    const auto& keys = ParameterSet::keys();
    if (name == "sigma_mode" || std::find(keys.begin(), keys.end(), name) == keys.end())
        throw ValidationError("'" + name + "' is not a sweepable parameter");
    if (config.pin_reference)
        throw ValidationError("--seed-params paper pins every parameter; nothing to sweep");
    if (options.points < 1)
        throw ValidationError("sweep needs at least one point");
    if (!(options.probe_frequency > 0.0))
        throw ValidationError("probe frequency must be > 0");
    for (const auto& m : options.metrics)
        if (std::find(sweep_metrics().begin(), sweep_metrics().end(), m) == sweep_metrics().end())
            throw ValidationError("unknown sweep metric '" + m + "'");

    csv::Table table;
    table.header.push_back(name);
    for (const auto& m : options.metrics)
        table.header.push_back(m);

    const double f = options.probe_frequency;
    for (double value : linspace(options.from, options.to, options.points)) {
        RunConfig c = config;
        c.set(name, general(value));
        const ParameterSet p = c.resolved_params();
        const auto& g = p.geometry;
        const auto& mat = p.material;
        const RlgcElements e = rlgc_at(f, g, mat, p.guards);
        std::optional<ThreePortS> s;
        auto sp = [&]() -> const ThreePortS& {
            if (!s)
                s = z_to_s(z_matrix_at(f, e), c.z0);
            return *s;
        };
        std::vector<double> row{value};
        for (const auto& m : options.metrics) {
            if (m == "r_dc") row.push_back(r_dc(g, mat));
            else if (m == "r_total") row.push_back(e.r_total);
            else if (m == "l_tsv") row.push_back(e.l_total);
            else if (m == "c_ox") row.push_back(e.c_ox);
            else if (m == "depletion_width") row.push_back(depletion_width(mat));
            else if (m == "c_d") row.push_back(e.c_d);
            else if (m == "c_si") row.push_back(e.c_si);
            else if (m == "g_si") row.push_back(e.g_si);
            else if (m == "s21_db") row.push_back(magnitude_db(sp().s(substrate, signal_bottom)));
            else if (m == "s31_db") row.push_back(magnitude_db(sp().s(signal_top, signal_bottom)));
            else if (m == "transfer_db")
                row.push_back(magnitude_db(spur::SubstrateCoupling(g, mat, c.termination, c.substrate_load,
                                                                   p.guards)(f)));
        }
        table.rows.push_back(std::move(row));
    }

    PendingFiles out;
    const std::string text = table.str();
    out.add(options.csv_path, text);
    out.commit();

    CommandResult r;
    r.summary = {{"command", "sweep"},
                 {"parameter", name},
                 {"rows", table.rows.size()},
                 {"metrics", options.metrics},
                 {"probe_frequency_hz", f}};
    r.report = options.csv_path.empty() ? text : "wrote " + std::to_string(table.rows.size()) + " rows to "
                                                     + options.csv_path + '\n';
    return r;
}

CommandResult cmd_spur(const RunConfig& config, const SpurOptions& options)
{
    const ParameterSet p = config.resolved_params();
    const spur::SubstrateCoupling coupling(p.geometry, p.material, config.termination, config.substrate_load,
                                           p.guards);
    CommandResult r;
    std::ostringstream rep;
    r.summary = {{"command", "spur"}};
    const spur::OscillatorModel osc = calibrated_oscillator(config, coupling, r.summary, rep);

    csv::Table table;
    std::vector<double> xs;
    std::vector<spur::SpurEstimate> est;
    if (options.mode == SpurMode::amplitude) {
        if (!(config.amplitude_start >= 0.0) || !(config.amplitude_stop > config.amplitude_start))
            throw ValidationError("amplitude sweep needs 0 <= amplitude_start < amplitude_stop");
        xs = linspace(config.amplitude_start, config.amplitude_stop, config.amplitude_points);
        est = spur::amplitude_sweep(osc, coupling, config.amplitude_sweep_frequency, xs, config.sideband);
        table.header = {"amplitude_v", "spur_dbc"};
        r.summary["mode"] = "amplitude";
        r.summary["aggressor_frequency_hz"] = config.amplitude_sweep_frequency;
    } else {
        if (!(config.frequency_start > 0.0) || !(config.frequency_stop > config.frequency_start))
            throw ValidationError("frequency sweep needs 0 < frequency_start < frequency_stop");
        xs = FrequencyGrid::logarithmic(config.frequency_start, config.frequency_stop, config.frequency_points).points;
        est = spur::frequency_sweep(osc, coupling, config.frequency_sweep_amplitude, xs, config.sideband);
        table.header = {"frequency_hz", "spur_dbc"};
        r.summary["mode"] = "frequency";
        r.summary["aggressor_amplitude_vpp"] = config.frequency_sweep_amplitude;
    }

    std::vector<double> levels;
    double max_beta = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        table.rows.push_back({xs[i], est[i].dbc});
        levels.push_back(est[i].dbc);
        max_beta = std::max(max_beta, est[i].beta);
    }

    // end points with a finite level
    std::optional<std::size_t> first, last;
    for (std::size_t i = 0; i < levels.size(); ++i)
        if (std::isfinite(levels[i])) {
            if (!first)
                first = i;
            last = i;
        }
    const double change = first && last ? levels[*last] - levels[*first] : 0.0;
    const std::size_t finite_points = first ? *last - *first + 1 : 0;
    const double slope = finite_points >= 2 ? spur::slope_per_octave(xs, levels) : 0.0;

    PendingFiles out;
    const std::string text = table.str();
    out.add(options.csv_path, text);
    out.commit();

    r.summary["points"] = xs.size();
    r.summary["spur_dbc"] = levels;
    r.summary["slope_db_per_octave"] = slope;
    r.summary["total_change_db"] = change;
    r.summary["max_beta"] = max_beta;
    r.summary["f_osc_hz"] = osc.f_osc;

    rep << "spur at f_osc + f_agg, f_osc = " << fixed(osc.f_osc / 1e9, 3) << " GHz\n";
    if (options.mode == SpurMode::amplitude) {
        for (std::size_t i = 0; i < xs.size(); ++i)
            rep << "  " << fixed(xs[i] * 1e3, 1) << " mVpp  " << fixed(levels[i], 3) << " dBc\n";
        rep << "slope per octave     " << fixed(slope, 3) << " dB\n"
            << "total rise           " << fixed(change, 3) << " dB\n";
    } else {
        for (std::size_t i = 0; i < xs.size(); ++i)
            rep << "  " << fixed(xs[i] / 1e9, 4) << " GHz  " << fixed(levels[i], 3) << " dBc\n";
        rep << "slope per octave     " << fixed(slope, 3) << " dB\n"
            << "total roll-off       " << fixed(-change, 3) << " dB\n";
    }
    if (max_beta > spur::narrowband_beta)
        rep << "warning: modulation index reaches " << fixed(max_beta, 3)
            << ", above the narrowband regime (0.5)\n";
    if (!options.csv_path.empty())
        rep << "wrote " << xs.size() << " rows to " << options.csv_path << '\n';
    r.report = rep.str();
    return r;
}

CommandResult cmd_validate(const RunConfig& config)
{
    const ParameterSet p = config.resolved_params();
    const FrequencyGrid grid = config.grid();

    struct Check {
        std::string name;
        double value;
        double limit;
        bool pass;
    };
    std::vector<Check> checks;
    auto record = [&](std::string name, double value, double limit) {
        checks.push_back({std::move(name), value, limit, value <= limit});
    };

    const auto zs = z_sweep(grid, p.geometry, p.material, p.guards);
    const auto zs_serial = z_sweep_serial(grid, p.geometry, p.material, p.guards);
    const auto zs_mna = z_sweep_mna(grid, p.geometry, p.material, p.guards);
    const auto ss = s_sweep(zs, config.z0);

    double dual = 0.0, z_recip = 0.0, s_recip = 0.0, passivity = 0.0, roundtrip = 0.0, herm = 0.0;
    double serial_mismatch = 0.0;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        dual = std::max(dual, checks::entrywise_relative_error(zs_mna[i].z, zs[i].z));
        z_recip = std::max(z_recip, checks::asymmetry(zs[i].z));
        s_recip = std::max(s_recip, checks::asymmetry(ss[i].s));
        passivity = std::max(passivity, max_singular_value(ss[i].s) - 1.0);
        roundtrip = std::max(roundtrip, checks::entrywise_relative_error(s_to_z(ss[i]).z, zs[i].z));
        herm = std::max(herm, -checks::min_hermitian_eigenvalue(zs[i].z) / zs[i].z.norm());
        if (zs[i].z != zs_serial[i].z)
            serial_mismatch = 1.0;
    }
    record("dual-route Z (branch algebra vs nodal analysis), max rel error", dual, 1e-9);
    record("Z reciprocity ||Z - Z^T||/||Z||", z_recip, 1e-12);
    record("S reciprocity ||S - S^T||/||S||", s_recip, 1e-9);
    record("S passivity max singular value - 1", passivity, 1e-9);
    record("Z -> S -> Z round trip, max rel error", roundtrip, 1e-9);
    record("Re-part of Z, -min eigenvalue/||Z||", herm, 1e-9);
    record("parallel vs serial sweep mismatch", serial_mismatch, 0.0);

    std::istringstream in(touchstone::to_string(ss));
    const auto doc = touchstone::read_s3p(in);
    double ts = doc.records.size() == ss.size() ? 0.0 : 1.0;
    for (std::size_t i = 0; i < std::min(doc.records.size(), ss.size()); ++i)
        ts = std::max(ts, checks::entrywise_relative_error(doc.records[i].s, ss[i].s));
    record("Touchstone write -> read round trip, max rel error", ts, 1e-8);

    const spur::SubstrateCoupling coupling(p.geometry, p.material, config.termination, config.substrate_load,
                                           p.guards);
    double transfer = 0.0;
    for (double f : {0.5e9, 1e9, 2e9, 10e9}) {
        const complex a = coupling(f);
        transfer = std::max(transfer, std::abs(a - coupling.via_mna(f)) / std::abs(a));
    }
    record("substrate transfer, Z route vs nodal source drive", transfer, 1e-9);

    CommandResult r;
    std::ostringstream rep;
    nlohmann::json list = nlohmann::json::array();
    bool all = true;
    for (const auto& c : checks) {
        all = all && c.pass;
        rep << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << general(c.value) << " (limit " << general(c.limit)
            << ")\n";
        list.push_back({{"check", c.name}, {"value", c.value}, {"limit", c.limit}, {"pass", c.pass}});
    }
    rep << (all ? "all checks passed" : "validation FAILED") << " over " << grid.size() << " frequency points\n";
    r.report = rep.str();
    r.summary = {{"command", "validate"}, {"points", grid.size()}, {"checks", list}, {"pass", all}};
    r.exit_code = all ? 0 : 1;
    return r;
}

} // namespace tsv::cli
