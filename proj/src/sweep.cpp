#include "tsv/sweep.hpp"

#include "tsv/error.hpp"

#include <exception>
#include <string>

namespace tsv {

namespace {

// Per-point failures are captured and the lowest-index one rethrown, so the
// parallel and serial kernels report the same error.
template <typename Out, typename Fn>
std::vector<Out> map_points(std::size_t count, Fn&& fn, bool parallel)
{
    std::vector<Out> out(count);
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

std::vector<ThreePortZ> z_sweep_impl(const FrequencyGrid& grid, const TsvGeometry& geom, const MaterialParams& mat,
                                     const SingularityGuards& guards, bool parallel)
{
    validate(grid);
    // Everything except the series resistance is frequency independent.
    const RlgcElements base = rlgc_at(grid.points.front(), geom, mat, guards);
    assemble_topology(base);
    return map_points<ThreePortZ>(
        grid.size(),
        [&](std::size_t i) {
            const double f = grid.points[i];
            return z_matrix_at(f, base.at_frequency(f, r_total(f, geom, mat)));
        },
        parallel);
}

std::vector<ThreePortS> s_sweep_impl(const std::vector<ThreePortZ>& zs, double z0, bool parallel)
{
    if (zs.empty())
        throw ValidationError("empty impedance sweep");
    return map_points<ThreePortS>(
        zs.size(), [&](std::size_t i) { return z_to_s(zs[i], z0); }, parallel);
}

} // namespace

std::vector<ThreePortZ> z_sweep(const FrequencyGrid& grid, const TsvGeometry& geom, const MaterialParams& mat,
                                const SingularityGuards& guards)
{
    return z_sweep_impl(grid, geom, mat, guards, true);
}

std::vector<ThreePortZ> z_sweep_serial(const FrequencyGrid& grid, const TsvGeometry& geom,
                                       const MaterialParams& mat, const SingularityGuards& guards)
{
    return z_sweep_impl(grid, geom, mat, guards, false);
}

std::vector<ThreePortZ> z_sweep_mna(const FrequencyGrid& grid, const TsvGeometry& geom, const MaterialParams& mat,
                                    const SingularityGuards& guards)
{
    validate(grid);
    return map_points<ThreePortZ>(
        grid.size(),
        [&](std::size_t i) {
            const double f = grid.points[i];
            return z_matrix_mna(f, assemble_topology(rlgc_at(f, geom, mat, guards)));
        },
        true);
}

std::vector<ThreePortS> s_sweep(const std::vector<ThreePortZ>& zs, double z0) { return s_sweep_impl(zs, z0, true); }

std::vector<ThreePortS> s_sweep_serial(const std::vector<ThreePortZ>& zs, double z0)
{
    return s_sweep_impl(zs, z0, false);
}

} // namespace tsv
