#pragma once

// Behavioral estimate of the first oscillator sideband (f_osc + f_agg) caused
// by an aggressor tone on the signal TSV reaching the substrate port, modelled
// as narrowband FM through a substrate pushing gain k_sub.

#include "tsv/network.hpp"

#include <optional>
#include <vector>

namespace tsv::spur {

struct OscillatorModel {
    double f_osc = 10.917e9;          // Hz
    double k_sub = 0.0;               // Hz/V, obtained by calibration
    double carrier_power_db = -11.02;
};

void validate(const OscillatorModel& osc);

struct SpurScenario {
    double aggressor_amplitude;       // V peak-to-peak
    double aggressor_frequency;       // Hz
    complex tsv_transfer;             // V(port 2) / V(port 1)
};

enum class SidebandModel {
    first_order, // J1(beta) ~ beta/2
    bessel,      // J1(beta)/J0(beta)
};

struct SpurEstimate {
    double dbc;             // -inf for a zero-amplitude aggressor
    double beta;            // modulation index
    double spur_frequency;  // f_osc + f_agg
    bool beyond_narrowband; // beta > narrowband_beta
};

inline constexpr double narrowband_beta = 0.5;
inline constexpr double max_beta = 2.0;

/// Throws ModelValidityError when beta >= max_beta.
SpurEstimate spur_dbc(const OscillatorModel& osc, const SpurScenario& scen,
                      SidebandModel model = SidebandModel::first_order);

/// Port-1 drive to port-2 voltage transfer of the TSV network, with port 3
/// terminated and port 2 loaded (nullopt = open). Element values other than
/// the series resistance are computed once.
class SubstrateCoupling {
public:
    SubstrateCoupling(const TsvGeometry& geom, const MaterialParams& mat, double termination = 50.0,
                      std::optional<complex> substrate_load = std::nullopt, const SingularityGuards& guards = {});

    complex operator()(double frequency) const;
    /// Same quantity through the nodal-analysis route.
    complex via_mna(double frequency) const;

private:
    TsvGeometry geom_;
    MaterialParams mat_;
    double termination_;
    std::optional<complex> load_;
    SingularityGuards guards_;
    RlgcElements base_;
};

complex substrate_transfer(double frequency, const TsvGeometry& geom, const MaterialParams& mat,
                           double termination = 50.0, std::optional<complex> substrate_load = std::nullopt);

struct ReferencePoint {
    double amplitude;   // V peak-to-peak
    double frequency;   // Hz
    double spur_dbc;
};

struct Calibration {
    double k_sub;
    std::vector<double> residuals; // measured - predicted, dB
    double residual_spread;        // max - min residual, dB
    bool inconsistent;             // spread > inconsistency_spread_db
};

inline constexpr double inconsistency_spread_db = 3.0;

/// Least-squares fit of 20*log10(k_sub) against the first-order model.
Calibration calibrate_k_sub(const std::vector<ReferencePoint>& points, const SubstrateCoupling& coupling);

/// Single point (100 mVpp, 1 GHz, -36.1 dBc) used as the built-in calibration.
ReferencePoint reference_calibration_point();
/// End points of the amplitude (1 GHz) and frequency (300 mVpp) sweeps.
std::vector<ReferencePoint> reference_sweep_endpoints();

std::vector<SpurEstimate> amplitude_sweep(const OscillatorModel& osc, const SubstrateCoupling& coupling,
                                          double frequency, const std::vector<double>& amplitudes,
                                          SidebandModel model = SidebandModel::first_order);
std::vector<SpurEstimate> frequency_sweep(const OscillatorModel& osc, const SubstrateCoupling& coupling,
                                          double amplitude, const std::vector<double>& frequencies,
                                          SidebandModel model = SidebandModel::first_order);
std::vector<SpurEstimate> frequency_sweep_serial(const OscillatorModel& osc, const SubstrateCoupling& coupling,
                                                 double amplitude, const std::vector<double>& frequencies,
                                                 SidebandModel model = SidebandModel::first_order);

/// Least-squares slope of dbc against log2(x), in dB per octave.
double slope_per_octave(const std::vector<double>& x, const std::vector<double>& dbc);

} // namespace tsv::spur
