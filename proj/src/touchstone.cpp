#include "tsv/touchstone.hpp"

#include "tsv/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace tsv::touchstone {

namespace {

constexpr double deg_per_rad = 180.0 / constants::pi;

// 9 significant digits, locale independent.
std::string number(double v)
{
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::scientific, 8);
    if (ec != std::errc{})
        throw Error("number formatting failed");
    return {buf.data(), end};
}

std::pair<double, double> encode(complex c, Format f)
{
    switch (f) {
    case Format::RI:
        return {c.real(), c.imag()};
    case Format::MA:
        return {std::abs(c), std::arg(c) * deg_per_rad};
    case Format::DB:
        return {20.0 * std::log10(std::abs(c)), std::arg(c) * deg_per_rad};
    }
    return {};
}

complex decode(double a, double b, Format f)
{
    switch (f) {
    case Format::RI:
        return {a, b};
    case Format::MA:
        return std::polar(a, b / deg_per_rad);
    case Format::DB:
        return std::polar(std::pow(10.0, a / 20.0), b / deg_per_rad);
    }
    return {};
}

std::string upper(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

std::vector<std::string> split(const std::string& line)
{
    std::istringstream is(line);
    std::vector<std::string> out;
    for (std::string tok; is >> tok;)
        out.push_back(tok);
    return out;
}

bool parse_double(const std::string& tok, double& out)
{
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (first != last && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && std::isfinite(out);
}

OptionLine parse_option_line(const std::string& body, std::size_t line_no)
{
    OptionLine opt;
    const auto toks = split(body);
    bool have_unit = false, have_param = false, have_format = false, have_r = false;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        const std::string t = upper(toks[i]);
        auto once = [&](bool& seen) {
            if (seen)
                throw ParseError("malformed option line: duplicate '" + toks[i] + "'", line_no);
            seen = true;
        };
        if (t == "HZ" || t == "KHZ" || t == "MHZ" || t == "GHZ") {
            once(have_unit);
            opt.frequency_unit = t == "HZ" ? FrequencyUnit::Hz
                               : t == "KHZ" ? FrequencyUnit::kHz
                               : t == "MHZ" ? FrequencyUnit::MHz
                                            : FrequencyUnit::GHz;
        } else if (t == "S") {
            once(have_param);
        } else if (t == "Y" || t == "Z" || t == "H" || t == "G") {
            throw ParseError("malformed option line: only S parameters are supported, got '" + toks[i] + "'",
                             line_no);
        } else if (t == "RI" || t == "MA" || t == "DB") {
            once(have_format);
            opt.format = t == "RI" ? Format::RI : t == "MA" ? Format::MA : Format::DB;
        } else if (t == "R") {
            once(have_r);
            double r = 0.0;
            if (i + 1 >= toks.size() || !parse_double(toks[i + 1], r) || !(r > 0.0))
                throw ParseError("malformed option line: R must be followed by a positive resistance", line_no);
            opt.reference_resistance = r;
            ++i;
        } else {
            throw ParseError("malformed option line: unexpected token '" + toks[i] + "'", line_no);
        }
    }
    return opt;
}

} // namespace

std::string format_name(Format f)
{
    switch (f) {
    case Format::RI:
        return "RI";
    case Format::MA:
        return "MA";
    case Format::DB:
        return "DB";
    }
    return {};
}

double unit_scale(FrequencyUnit u)
{
    switch (u) {
    case FrequencyUnit::Hz:
        return 1.0;
    case FrequencyUnit::kHz:
        return 1e3;
    case FrequencyUnit::MHz:
        return 1e6;
    case FrequencyUnit::GHz:
        return 1e9;
    }
    return 1.0;
}

std::vector<ThreePortS> Document::to_sweep() const
{
    std::vector<ThreePortS> out;
    out.reserve(records.size());
    for (const auto& r : records)
        out.push_back({r.frequency, r.s, options.reference_resistance});
    return out;
}

void write_s3p(const std::vector<ThreePortS>& sweep, std::ostream& out, const WriteOptions& options)
{
    if (sweep.empty())
        throw ValidationError("cannot write an empty sweep");
    const double z0 = sweep.front().z0;
    for (const auto& p : sweep) {
        if (p.z0 != z0)
            throw ValidationError("non-uniform reference impedance across sweep");
        if (!p.s.allFinite())
            throw ValidationError("non-finite S entry at f = " + number(p.frequency));
    }
    for (std::size_t i = 1; i < sweep.size(); ++i)
        if (!(sweep[i].frequency > sweep[i - 1].frequency))
            throw ValidationError("sweep frequencies must be strictly increasing");

    for (const auto& line : options.header)
        out << "! " << line << '\n';

    std::array<char, 32> zbuf{};
    auto [zend, zec] = std::to_chars(zbuf.data(), zbuf.data() + zbuf.size(), z0);
    (void)zec;
    out << "# Hz S " << format_name(options.format) << " R " << std::string_view(zbuf.data(), zend) << '\n';

    for (const auto& p : sweep) {
        for (int row = 0; row < 3; ++row) {
            out << (row == 0 ? number(p.frequency) : std::string(14, ' '));
            for (int col = 0; col < 3; ++col) {
                const auto [a, b] = encode(p.s(row, col), options.format);
                out << ' ' << number(a) << ' ' << number(b);
            }
            out << '\n';
        }
    }
    if (!out)
        throw Error("write failure while emitting Touchstone data");
}

void write_s3p(const std::vector<ThreePortS>& sweep, const std::string& path, const WriteOptions& options)
{
    // Render first so a validation failure leaves no partial file behind.
    const std::string text = to_string(sweep, options);
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot open '" + path + "' for writing");
    f << text;
    if (!f)
        throw Error("write failure on '" + path + "'");
}

std::string to_string(const std::vector<ThreePortS>& sweep, const WriteOptions& options)
{
    std::ostringstream os;
    write_s3p(sweep, os, options);
    return os.str();
}

Document read_s3p(std::istream& in)
{
    Document doc;
    bool have_options = false;

    struct Pending {
        std::size_t line;
        double frequency;
        std::vector<double> values;
    };
    std::optional<Pending> pending;

    auto flush = [&]() {
        if (!pending)
            return;
        if (pending->values.size() != 18)
            throw ParseError("record has " + std::to_string(pending->values.size() / 2)
                                 + " values, expected 9 for a 3-port matrix",
                             pending->line);
        Record rec{pending->frequency * unit_scale(doc.options.frequency_unit), Matrix3c{}};
        for (int k = 0; k < 9; ++k)
            rec.s(k / 3, k % 3) = decode(pending->values[2 * k], pending->values[2 * k + 1], doc.options.format);
        if (!doc.records.empty() && !(rec.frequency > doc.records.back().frequency))
            throw ParseError("frequencies are not strictly increasing", pending->line);
        doc.records.push_back(rec);
        pending.reset();
    };

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r')
            raw.pop_back();
        std::string body = raw;
        if (const auto bang = body.find('!'); bang != std::string::npos) {
            std::string text = body.substr(bang + 1);
            if (!text.empty() && text.front() == ' ')
                text.erase(0, 1);
            doc.comments.push_back(text);
            body.erase(bang);
        }
        const auto first = body.find_first_not_of(" \t");
        if (first == std::string::npos)
            continue;
        if (body[first] == '#') {
            // Later option lines are ignored, as in the v1 convention.
            if (!have_options) {
                if (pending || !doc.records.empty())
                    throw ParseError("malformed option line: appears after data", line_no);
                doc.options = parse_option_line(body.substr(first + 1), line_no);
                have_options = true;
            }
            continue;
        }
        if (!have_options)
            throw ParseError("data before the option line", line_no);

        const auto toks = split(body);
        std::vector<double> vals(toks.size());
        for (std::size_t i = 0; i < toks.size(); ++i)
            if (!parse_double(toks[i], vals[i]))
                throw ParseError("not a number: '" + toks[i] + "'", line_no);

        if (vals.size() % 2 == 1) {
            flush();
            pending = Pending{line_no, vals.front(), std::vector<double>(vals.begin() + 1, vals.end())};
        } else {
            if (!pending)
                throw ParseError("continuation line without a frequency record", line_no);
            pending->values.insert(pending->values.end(), vals.begin(), vals.end());
            if (pending->values.size() > 18)
                throw ParseError("record has more than 9 values", pending->line);
        }
    }
    flush();
    if (!have_options)
        throw ParseError("missing option line", line_no);
    if (doc.records.empty())
        throw ParseError("no data records", line_no);
    return doc;
}

Document read_s3p_file(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot open '" + path + "'");
    return read_s3p(f);
}

} // namespace tsv::touchstone
