#pragma once

// Plain-text parameter files: one `name = value` per line, SI units,
// `#` starts a comment.

#include "tsv/physics.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace tsv {

struct KeyValue {
    std::string key;
    std::string value;
    std::size_t line;
};

/// Throws ParseError on lines without '=' , empty keys or values, and repeated keys.
std::vector<KeyValue> parse_key_values(std::istream& in);
std::vector<KeyValue> parse_key_values_file(const std::string& path);

/// Strict number parse; throws ValidationError naming `key`.
double parse_number(const std::string& key, const std::string& text);

enum class ConductivityMode { resistivity, mobility };

/// Physics inputs plus the bookkeeping needed to derive sigma_si.
struct ParameterSet {
    TsvGeometry geometry;
    MaterialParams material;
    SingularityGuards guards;
    ConductivityMode conductivity_mode = ConductivityMode::resistivity;
    double hole_mobility = default_hole_mobility;

    /// Applies one physics key; returns false if the key is not a physics key.
    bool apply(const std::string& key, const std::string& value);
    /// sigma_si from mobility when requested; validates everything.
    void resolve();

    static const std::vector<std::string>& keys();
};

} // namespace tsv
