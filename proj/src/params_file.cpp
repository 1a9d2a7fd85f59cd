#include "tsv/params_file.hpp"

#include "tsv/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>

namespace tsv {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

std::vector<KeyValue> parse_key_values(std::istream& in)
{
    std::vector<KeyValue> out;
    std::set<std::string> seen;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (const auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        const std::string body = trim(raw);
        if (body.empty())
            continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected `name = value`, got '" + body + "'", line);
        KeyValue kv{trim(body.substr(0, eq)), trim(body.substr(eq + 1)), line};
        if (kv.key.empty() || kv.value.empty())
            throw ParseError("empty name or value", line);
        if (!seen.insert(kv.key).second)
            throw ParseError("duplicate key '" + kv.key + "'", line);
        out.push_back(std::move(kv));
    }
    return out;
}

std::vector<KeyValue> parse_key_values_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw Error("cannot open parameter file '" + path + "'");
    return parse_key_values(f);
}

double parse_number(const std::string& key, const std::string& text)
{
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v))
        throw ValidationError("'" + key + "': not a number: '" + text + "'");
    return v;
}

const std::vector<std::string>& ParameterSet::keys()
{
    static const std::vector<std::string> k = {
        "height", "radius", "pitch", "liner_thickness",
        "rho_cu", "mu_r", "eps_ox", "eps_si", "n_a", "n_i", "sigma_si", "rho_si", "sigma_mode", "mu_p",
        "temperature",
        "min_liner_thickness", "min_depletion_width", "min_acosh_margin",
    };
    return k;
}

bool ParameterSet::apply(const std::string& key, const std::string& value)
{
    if (key == "sigma_mode") {
        if (value == "resistivity")
            conductivity_mode = ConductivityMode::resistivity;
        else if (value == "mobility")
            conductivity_mode = ConductivityMode::mobility;
        else
            throw ValidationError("sigma_mode must be 'resistivity' or 'mobility', got '" + value + "'");
        return true;
    }

    double* target = nullptr;
    if (key == "height") target = &geometry.height;
    else if (key == "radius") target = &geometry.radius;
    else if (key == "pitch") target = &geometry.pitch;
    else if (key == "liner_thickness") target = &geometry.liner_thickness;
    else if (key == "rho_cu") target = &material.rho_cu;
    else if (key == "mu_r") target = &material.mu_r;
    else if (key == "eps_ox") target = &material.eps_ox;
    else if (key == "eps_si") target = &material.eps_si;
    else if (key == "n_a") target = &material.n_a;
    else if (key == "n_i") target = &material.n_i;
    else if (key == "sigma_si") target = &material.sigma_si;
    else if (key == "temperature") target = &material.temperature;
    else if (key == "mu_p") target = &hole_mobility;
    else if (key == "min_liner_thickness") target = &guards.min_liner_thickness;
    else if (key == "min_depletion_width") target = &guards.min_depletion_width;
    else if (key == "min_acosh_margin") target = &guards.min_acosh_margin;

    if (key == "rho_si") {
        const double rho = parse_number(key, value);
        if (!(rho > 0.0))
            throw ValidationError("rho_si must be > 0");
        material.sigma_si = 1.0 / rho;
        return true;
    }
    if (!target)
        return false;
    *target = parse_number(key, value);
    return true;
}

void ParameterSet::resolve()
{
    if (conductivity_mode == ConductivityMode::mobility)
        material.sigma_si = sigma_from_mobility(material.n_a, hole_mobility);
    for (double g : {guards.min_liner_thickness, guards.min_depletion_width, guards.min_acosh_margin})
        if (!(g > 0.0) || !std::isfinite(g))
            throw ValidationError("singularity floors must be > 0");
    validate(geometry);
    validate(material);
}

} // namespace tsv
