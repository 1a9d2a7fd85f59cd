#pragma once

// Closed-form RLGC elements of a signal-ground TSV pair. All quantities SI.

namespace tsv {

namespace constants {
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double eps_0 = 8.8541878128e-12;     // F/m
inline constexpr double mu_0 = 1.25663706212e-6;      // H/m
inline constexpr double q = 1.602176634e-19;          // C
inline constexpr double k_boltzmann = 1.380649e-23;   // J/K
} // namespace constants

struct TsvGeometry {
    double height = 50e-6;
    double radius = 2.5e-6;
    double pitch = 40e-6;
    double liner_thickness = 0.5e-6;

    static TsvGeometry reference() { return {}; }
};

struct MaterialParams {
    double rho_cu = 1.68e-8;            // ohm*m
    double mu_r = 1.0;
    double eps_ox = 3.9;
    double eps_si = 11.9;
    double n_a = 1.2e21;                // m^-3
    double n_i = 1.45e16;               // m^-3
    double sigma_si = 1.0 / 0.12;       // S/m
    double temperature = 300.0;         // K

    static MaterialParams reference() { return {}; }

    double thermal_voltage() const { return constants::k_boltzmann * temperature / constants::q; }
};

/// Substrate conductivity from doping and hole mobility (m^2/(V*s)).
double sigma_from_mobility(double n_a, double mu_p);

inline constexpr double default_hole_mobility = 450e-4; // 450 cm^2/(V*s)

/// Lower bounds below which the log/acosh singularities are rejected.
struct SingularityGuards {
    double min_liner_thickness = 1e-12;
    double min_depletion_width = 1e-12;
    double min_acosh_margin = 1e-12; // on p/(2r) - 1
};

void validate(const TsvGeometry& geom);
void validate(const MaterialParams& mat);

double r_dc(const TsvGeometry& geom, const MaterialParams& mat);
double skin_depth(double frequency, const MaterialParams& mat);
double r_ac(double frequency, const TsvGeometry& geom, const MaterialParams& mat);
double r_total(double frequency, const TsvGeometry& geom, const MaterialParams& mat);

double c_ox(const TsvGeometry& geom, const MaterialParams& mat, const SingularityGuards& guards = {});
double depletion_width(const MaterialParams& mat);
double c_d(const TsvGeometry& geom, const MaterialParams& mat, double depletion_width,
           const SingularityGuards& guards = {});

struct SubstrateShunt {
    double capacitance;
    double conductance;
};
SubstrateShunt c_si_g_si(const TsvGeometry& geom, const MaterialParams& mat, const SingularityGuards& guards = {});

double l_tsv(const TsvGeometry& geom, const MaterialParams& mat);

struct RlgcElements {
    double frequency;
    double r_total;
    double r_half;
    double l_total;
    double l_half;
    double c_ox;
    double c_d;
    double c_si;
    double g_si;

    /// Same elements with the series resistance re-evaluated at another frequency.
    RlgcElements at_frequency(double f, double r_total_at_f) const
    {
        RlgcElements out = *this;
        out.frequency = f;
        out.r_total = r_total_at_f;
        out.r_half = r_total_at_f / 2.0;
        return out;
    }
};

RlgcElements rlgc_at(double frequency, const TsvGeometry& geom, const MaterialParams& mat,
                     const SingularityGuards& guards = {});

} // namespace tsv
