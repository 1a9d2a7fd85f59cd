#include "tsv/spur.hpp"

#include "tsv/error.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

namespace tsv::spur {

void validate(const OscillatorModel& osc)
{
    if (!(osc.f_osc > 0.0) || !std::isfinite(osc.f_osc))
        throw ValidationError("f_osc must be > 0");
    if (!(osc.k_sub > 0.0) || !std::isfinite(osc.k_sub))
        throw ValidationError("k_sub must be > 0 (calibrate first)");
}

SpurEstimate spur_dbc(const OscillatorModel& osc, const SpurScenario& scen, SidebandModel model)
{
    validate(osc);
    if (!(scen.aggressor_amplitude >= 0.0) || !std::isfinite(scen.aggressor_amplitude))
        throw ValidationError("aggressor amplitude must be >= 0");
    if (!(scen.aggressor_frequency > 0.0) || !std::isfinite(scen.aggressor_frequency))
        throw ValidationError("aggressor frequency must be > 0");
    const double h = std::abs(scen.tsv_transfer);
    if (!(h <= 1.0 + 1e-9))
        throw ValidationError("|tsv_transfer| exceeds 1 for a passive network: " + std::to_string(h));

    const double v_sub_peak = h * scen.aggressor_amplitude / 2.0;
    const double beta = osc.k_sub * v_sub_peak / scen.aggressor_frequency;
    if (beta >= max_beta)
        throw ModelValidityError("modulation index beta = " + std::to_string(beta)
                                 + " is outside the narrowband FM model (beta < 2)");

    SpurEstimate est{-std::numeric_limits<double>::infinity(), beta, osc.f_osc + scen.aggressor_frequency,
                     beta > narrowband_beta};
    if (beta == 0.0)
        return est;
    if (model == SidebandModel::first_order)
        est.dbc = 20.0 * std::log10(beta / 2.0);
    else
        est.dbc = 20.0 * std::log10(std::cyl_bessel_j(1.0, beta) / std::cyl_bessel_j(0.0, beta));
    return est;
}

SubstrateCoupling::SubstrateCoupling(const TsvGeometry& geom, const MaterialParams& mat, double termination,
                                     std::optional<complex> substrate_load, const SingularityGuards& guards)
    : geom_(geom), mat_(mat), termination_(termination), load_(substrate_load), guards_(guards),
      base_(rlgc_at(1e9, geom, mat, guards))
{
    if (!(termination > 0.0) || !std::isfinite(termination))
        throw ValidationError("termination must be > 0");
    if (load_ && (std::abs(*load_) == 0.0 || !std::isfinite(std::abs(*load_))))
        throw ValidationError("substrate load must be finite and non-zero");
    assemble_topology(base_);
}

complex SubstrateCoupling::operator()(double frequency) const
{
    const auto z = z_matrix_at(frequency, base_.at_frequency(frequency, r_total(frequency, geom_, mat_)));
    return drive_transfer(z, termination_, load_);
}

complex SubstrateCoupling::via_mna(double frequency) const
{
    const auto net = assemble_topology(rlgc_at(frequency, geom_, mat_, guards_));
    return drive_transfer_mna(frequency, net, termination_, load_);
}

complex substrate_transfer(double frequency, const TsvGeometry& geom, const MaterialParams& mat,
                           double termination, std::optional<complex> substrate_load)
{
    return SubstrateCoupling(geom, mat, termination, substrate_load)(frequency);
}

namespace {

// 20*log10(beta/2) - 20*log10(k_sub) for one reference point.
double model_offset_db(const ReferencePoint& p, const SubstrateCoupling& coupling)
{
    const double h = std::abs(coupling(p.frequency));
    return 20.0 * std::log10(h * p.amplitude / 4.0 / p.frequency);
}

} // namespace

Calibration calibrate_k_sub(const std::vector<ReferencePoint>& points, const SubstrateCoupling& coupling)
{
    if (points.empty())
        throw ValidationError("calibration needs at least one reference point");
    std::vector<double> offsets;
    double mean = 0.0;
    for (const auto& p : points) {
        if (!(p.amplitude > 0.0) || !(p.frequency > 0.0) || !std::isfinite(p.spur_dbc))
            throw ValidationError("calibration point needs amplitude > 0, frequency > 0 and a finite level");
        offsets.push_back(model_offset_db(p, coupling));
        mean += p.spur_dbc - offsets.back();
    }
    mean /= static_cast<double>(points.size());

    Calibration cal{std::pow(10.0, mean / 20.0), {}, 0.0, false};
    for (std::size_t i = 0; i < points.size(); ++i)
        cal.residuals.push_back(points[i].spur_dbc - (mean + offsets[i]));
    const auto [lo, hi] = std::minmax_element(cal.residuals.begin(), cal.residuals.end());
    cal.residual_spread = *hi - *lo;
    cal.inconsistent = cal.residual_spread > inconsistency_spread_db;
    return cal;
}

ReferencePoint reference_calibration_point() { return {0.1, 1e9, -36.1}; }

std::vector<ReferencePoint> reference_sweep_endpoints()
{
    return {{0.1, 1e9, -36.1}, {0.7, 1e9, -19.1}, {0.3, 0.5e9, -20.2}, {0.3, 2e9, -33.1}};
}

namespace {

template <typename Fn>
std::vector<SpurEstimate> map_points(std::size_t count, Fn&& fn, bool parallel)
{
    std::vector<SpurEstimate> out(count);
    std::vector<std::exception_ptr> errors(count);
    const auto n = static_cast<long>(count);
#pragma omp parallel for schedule(static) if (parallel)
    for (long i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

std::vector<SpurEstimate> frequency_sweep_impl(const OscillatorModel& osc, const SubstrateCoupling& coupling,
                                               double amplitude, const std::vector<double>& frequencies,
                                               SidebandModel model, bool parallel)
{
    return map_points(
        frequencies.size(),
        [&](std::size_t i) {
            const double f = frequencies[i];
            return spur_dbc(osc, {amplitude, f, coupling(f)}, model);
        },
        parallel);
}

} // namespace

std::vector<SpurEstimate> amplitude_sweep(const OscillatorModel& osc, const SubstrateCoupling& coupling,
                                          double frequency, const std::vector<double>& amplitudes,
                                          SidebandModel model)
{
    const complex h = coupling(frequency);
    return map_points(
        amplitudes.size(), [&](std::size_t i) { return spur_dbc(osc, {amplitudes[i], frequency, h}, model); },
        true);
}

std::vector<SpurEstimate> frequency_sweep(const OscillatorModel& osc, const SubstrateCoupling& coupling,
                                          double amplitude, const std::vector<double>& frequencies,
                                          SidebandModel model)
{
    return frequency_sweep_impl(osc, coupling, amplitude, frequencies, model, true);
}

std::vector<SpurEstimate> frequency_sweep_serial(const OscillatorModel& osc, const SubstrateCoupling& coupling,
                                                 double amplitude, const std::vector<double>& frequencies,
                                                 SidebandModel model)
{
    return frequency_sweep_impl(osc, coupling, amplitude, frequencies, model, false);
}

double slope_per_octave(const std::vector<double>& x, const std::vector<double>& dbc)
{
    if (x.size() != dbc.size() || x.size() < 2)
        throw ValidationError("slope needs at least two matching points");
    double mx = 0.0, my = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(dbc[i]) || !(x[i] > 0.0))
            continue;
        mx += std::log2(x[i]);
        my += dbc[i];
        ++n;
    }
    if (n < 2)
        throw ValidationError("slope needs at least two finite points");
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(dbc[i]) || !(x[i] > 0.0))
            continue;
        const double dx = std::log2(x[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (dbc[i] - my);
    }
    return sxy / sxx;
}

} // namespace tsv::spur
