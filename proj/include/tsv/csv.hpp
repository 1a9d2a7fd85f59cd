#pragma once

// Comma-separated output with a header row and locale-independent numbers.

#include "tsv/sparams.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace tsv::csv {

/// Shortest round-trip representation; "-inf"/"inf"/"nan" for non-finite values.
std::string format_number(double v);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    void write(std::ostream& out) const;
    std::string str() const;
};

/// frequency_hz then re/im of z11 z12 z13 z22 z23 z33.
Table z_table(const std::vector<ThreePortZ>& zs);

/// frequency_hz, s21_db, s31_db and, when `full`, re/im of all nine entries.
Table s_table(const std::vector<ThreePortS>& ss, bool full = false);

} // namespace tsv::csv
