#include "tsv/csv.hpp"

#include "tsv/error.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

namespace tsv::csv {

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v < 0 ? "-inf" : "inf";
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{})
        throw Error("number formatting failed");
    return {buf.data(), end};
}

void Table::write(std::ostream& out) const
{
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_number(row[i]);
        out << '\n';
    }
}

std::string Table::str() const
{
    std::ostringstream os;
    write(os);
    return os.str();
}

Table z_table(const std::vector<ThreePortZ>& zs)
{
    static constexpr int pairs[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
    Table t;
    t.header.push_back("frequency_hz");
    for (const auto& p : pairs) {
        const std::string name = "z" + std::to_string(p[0] + 1) + std::to_string(p[1] + 1);
        t.header.push_back(name + "_re");
        t.header.push_back(name + "_im");
    }
    for (const auto& z : zs) {
        std::vector<double> row{z.frequency};
        for (const auto& p : pairs) {
            row.push_back(z.z(p[0], p[1]).real());
            row.push_back(z.z(p[0], p[1]).imag());
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table s_table(const std::vector<ThreePortS>& ss, bool full)
{
    Table t;
    t.header = {"frequency_hz", "s21_db", "s31_db"};
    if (full)
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) {
                const std::string name = "s" + std::to_string(i) + std::to_string(j);
                t.header.push_back(name + "_re");
                t.header.push_back(name + "_im");
            }
    for (const auto& s : ss) {
        std::vector<double> row{s.frequency, magnitude_db(s.s(1, 0)), magnitude_db(s.s(2, 0))};
        if (full)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    row.push_back(s.s(i, j).real());
                    row.push_back(s.s(i, j).imag());
                }
        t.rows.push_back(std::move(row));
    }
    return t;
}

} // namespace tsv::csv
