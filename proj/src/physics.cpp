#include "tsv/physics.hpp"

#include "tsv/error.hpp"

#include <cmath>
#include <string>

namespace tsv {

using constants::eps_0;
using constants::mu_0;
using constants::pi;

namespace {

void require_positive(double v, const char* name)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw ValidationError(std::string(name) + " must be finite and > 0, got " + std::to_string(v));
}

void require_frequency(double f)
{
    if (!(f > 0.0) || !std::isfinite(f))
        throw DomainError("frequency must be > 0, got " + std::to_string(f));
}

} // namespace

double sigma_from_mobility(double n_a, double mu_p)
{
    require_positive(n_a, "n_a");
    require_positive(mu_p, "mu_p");
    return constants::q * n_a * mu_p;
}

void validate(const TsvGeometry& geom)
{
    require_positive(geom.height, "height");
    require_positive(geom.radius, "radius");
    require_positive(geom.pitch, "pitch");
    require_positive(geom.liner_thickness, "liner_thickness");
    if (!(geom.liner_thickness < geom.radius))
        throw ValidationError("liner_thickness must be smaller than radius");
    if (!(geom.pitch > 2.0 * (geom.radius + geom.liner_thickness)))
        throw ValidationError("pitch must exceed 2*(radius + liner_thickness); the TSVs overlap");
}

void validate(const MaterialParams& mat)
{
    require_positive(mat.rho_cu, "rho_cu");
    require_positive(mat.mu_r, "mu_r");
    require_positive(mat.eps_ox, "eps_ox");
    require_positive(mat.eps_si, "eps_si");
    require_positive(mat.n_a, "n_a");
    require_positive(mat.n_i, "n_i");
    require_positive(mat.sigma_si, "sigma_si");
    require_positive(mat.temperature, "temperature");
    if (!(mat.n_a > mat.n_i))
        throw ValidationError("n_a must exceed n_i for a depletion region to form");
}

double r_dc(const TsvGeometry& geom, const MaterialParams& mat)
{
    require_positive(geom.height, "height");
    require_positive(geom.radius, "radius");
    require_positive(mat.rho_cu, "rho_cu");
    return mat.rho_cu * geom.height / (pi * geom.radius * geom.radius);
}

double skin_depth(double frequency, const MaterialParams& mat)
{
    require_frequency(frequency);
    require_positive(mat.rho_cu, "rho_cu");
    require_positive(mat.mu_r, "mu_r");
    return std::sqrt(mat.rho_cu / (pi * frequency * mat.mu_r * mu_0));
}

double r_ac(double frequency, const TsvGeometry& geom, const MaterialParams& mat)
{
    require_positive(geom.height, "height");
    require_positive(geom.radius, "radius");
    const double delta = skin_depth(frequency, mat);
    return mat.rho_cu * geom.height / (2.0 * pi * geom.radius * delta);
}

double r_total(double frequency, const TsvGeometry& geom, const MaterialParams& mat)
{
    return std::hypot(r_dc(geom, mat), r_ac(frequency, geom, mat));
}

double c_ox(const TsvGeometry& geom, const MaterialParams& mat, const SingularityGuards& guards)
{
    require_positive(geom.height, "height");
    require_positive(geom.radius, "radius");
    require_positive(mat.eps_ox, "eps_ox");
    if (!(geom.liner_thickness > guards.min_liner_thickness))
        throw DomainError("liner_thickness " + std::to_string(geom.liner_thickness) + " is below the floor "
                          + std::to_string(guards.min_liner_thickness));
    // log1p keeps precision for liners much thinner than the radius
    const double log_ratio = std::log1p(geom.liner_thickness / geom.radius);
    return 2.0 * pi * mat.eps_ox * eps_0 * geom.height / log_ratio;
}

double depletion_width(const MaterialParams& mat)
{
    require_positive(mat.eps_si, "eps_si");
    require_positive(mat.n_a, "n_a");
    require_positive(mat.n_i, "n_i");
    require_positive(mat.temperature, "temperature");
    if (!(mat.n_a > mat.n_i))
        throw DomainError("depletion width undefined for n_a <= n_i");
    const double vt = mat.thermal_voltage();
    return std::sqrt(4.0 * mat.eps_si * eps_0 * vt * std::log(mat.n_a / mat.n_i) / (constants::q * mat.n_a));
}

double c_d(const TsvGeometry& geom, const MaterialParams& mat, double w_d, const SingularityGuards& guards)
{
    require_positive(geom.height, "height");
    require_positive(geom.radius, "radius");
    require_positive(mat.eps_si, "eps_si");
    if (!(w_d > guards.min_depletion_width) || !std::isfinite(w_d))
        throw DomainError("depletion width " + std::to_string(w_d) + " is below the floor "
                          + std::to_string(guards.min_depletion_width));
    const double inner = geom.radius + geom.liner_thickness;
    return 2.0 * pi * mat.eps_si * eps_0 * geom.height / std::log1p(w_d / inner);
}

SubstrateShunt c_si_g_si(const TsvGeometry& geom, const MaterialParams& mat, const SingularityGuards& guards)
{
    require_positive(geom.height, "height");
    require_positive(geom.radius, "radius");
    require_positive(geom.pitch, "pitch");
    require_positive(mat.eps_si, "eps_si");
    require_positive(mat.sigma_si, "sigma_si");
    const double ratio = geom.pitch / (2.0 * geom.radius);
    if (!(ratio - 1.0 > guards.min_acosh_margin))
        throw ValidationError("pitch/(2*radius) must exceed 1; the TSVs overlap");
    const double geometric = pi * geom.height / std::acosh(ratio);
    return {mat.eps_si * eps_0 * geometric, mat.sigma_si * geometric};
}

double l_tsv(const TsvGeometry& geom, const MaterialParams& mat)
{
    require_positive(geom.height, "height");
    require_positive(geom.radius, "radius");
    require_positive(mat.mu_r, "mu_r");
    const double x = geom.height / geom.radius;
    const double inv = geom.radius / geom.height;
    const double bracket = std::asinh(x) + inv - std::sqrt(1.0 + inv * inv);
    return mu_0 * mat.mu_r * geom.height / (2.0 * pi) * bracket;
}

RlgcElements rlgc_at(double frequency, const TsvGeometry& geom, const MaterialParams& mat,
                     const SingularityGuards& guards)
{
    require_frequency(frequency);
    validate(geom);
    validate(mat);

    const double r = r_total(frequency, geom, mat);
    const double l = l_tsv(geom, mat);
    const auto shunt = c_si_g_si(geom, mat, guards);
    return RlgcElements{
        .frequency = frequency,
        .r_total = r,
        .r_half = r / 2.0,
        .l_total = l,
        .l_half = l / 2.0,
        .c_ox = c_ox(geom, mat, guards),
        .c_d = c_d(geom, mat, depletion_width(mat), guards),
        .c_si = shunt.capacitance,
        .g_si = shunt.conductance,
    };
}

} // namespace tsv
