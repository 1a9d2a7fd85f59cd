#pragma once

// Touchstone v1 three-port (.s3p) reader and writer.

#include "tsv/sparams.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace tsv::touchstone {

enum class Format { RI, MA, DB };
enum class FrequencyUnit { Hz, kHz, MHz, GHz };

struct OptionLine {
    FrequencyUnit frequency_unit = FrequencyUnit::GHz;
    Format format = Format::MA;
    double reference_resistance = 50.0;
};

struct Record {
    double frequency; // Hz
    Matrix3c s;
};

struct Document {
    OptionLine options;
    std::vector<Record> records;
    std::vector<std::string> comments;

    std::vector<ThreePortS> to_sweep() const;
};

struct WriteOptions {
    Format format = Format::RI;
    std::vector<std::string> header; // emitted as "! " comment lines
};

/// Throws ValidationError for empty or mixed-z0 sweeps, Error on stream failure.
void write_s3p(const std::vector<ThreePortS>& sweep, std::ostream& out, const WriteOptions& options = {});
void write_s3p(const std::vector<ThreePortS>& sweep, const std::string& path, const WriteOptions& options = {});

/// Emits the whole file into a string.
std::string to_string(const std::vector<ThreePortS>& sweep, const WriteOptions& options = {});

/// Throws ParseError naming the offending line.
Document read_s3p(std::istream& in);
Document read_s3p_file(const std::string& path);

std::string format_name(Format f);
double unit_scale(FrequencyUnit u);

} // namespace tsv::touchstone
