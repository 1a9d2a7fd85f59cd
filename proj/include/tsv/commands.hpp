#pragma once

// Subcommand implementations behind the tsvx front end. Each command
// resolves and validates the whole configuration, computes everything in
// memory and only then writes its output files.

#include "tsv/params_file.hpp"
#include "tsv/spur.hpp"
#include "tsv/touchstone.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tsv::cli {

struct RunConfig {
    ParameterSet params;
    std::set<std::string> physics_overrides;
    bool pin_reference = false;

    double f_start = 1e6;
    double f_stop = 100e9;
    std::size_t points = 201;
    Spacing spacing = Spacing::logarithmic;
    double z0 = 50.0;

    spur::OscillatorModel oscillator;
    std::optional<double> k_sub;
    double termination = 50.0;
    std::optional<complex> substrate_load;
    spur::SidebandModel sideband = spur::SidebandModel::first_order;
    std::vector<spur::ReferencePoint> calibration{spur::reference_calibration_point()};
    double amplitude_start = 0.1;
    double amplitude_stop = 0.7;
    std::size_t amplitude_points = 7;
    double amplitude_sweep_frequency = 1e9;
    double frequency_start = 0.5e9;
    double frequency_stop = 2e9;
    std::size_t frequency_points = 9;
    double frequency_sweep_amplitude = 0.3;

    /// Throws ValidationError for unknown keys or malformed values.
    void set(const std::string& key, const std::string& value);
    void load(std::istream& in);
    void load_file(const std::string& path);

    /// Validated physics inputs; honours pin_reference.
    ParameterSet resolved_params() const;
    FrequencyGrid grid() const;
};

struct CommandResult {
    int exit_code = 0;
    std::string report;     // human-readable
    nlohmann::json summary; // machine-readable
};

struct ExtractOptions {
    std::string touchstone_path = "tsv.s3p";
    std::string csv_path = "tsv_sparams.csv";
    std::string z_csv_path;  // empty = skip
    touchstone::Format format = touchstone::Format::RI;
    bool full_s = false;
};

struct SweepOptions {
    std::vector<std::string> parameters;  // must hold exactly one name
    double from = 0.0;
    double to = 0.0;
    std::size_t points = 0;
    std::vector<std::string> metrics{"c_ox", "l_tsv", "s21_db"};
    double probe_frequency = 10e9;
    std::string csv_path;                 // empty = report only
};

enum class SpurMode { amplitude, frequency };

struct SpurOptions {
    SpurMode mode = SpurMode::amplitude;
    std::string csv_path;
};

CommandResult cmd_extract(const RunConfig& config, const ExtractOptions& options);
CommandResult cmd_sweep(const RunConfig& config, const SweepOptions& options);
CommandResult cmd_spur(const RunConfig& config, const SpurOptions& options);
CommandResult cmd_validate(const RunConfig& config);

/// Header comment lines recording the parameter set (for .s3p files).
std::vector<std::string> describe(const ParameterSet& params, double z0);

/// Metric names accepted by cmd_sweep.
const std::vector<std::string>& sweep_metrics();

} // namespace tsv::cli
