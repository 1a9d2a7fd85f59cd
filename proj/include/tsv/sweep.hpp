#pragma once

// Frequency sweeps. Each kernel has an OpenMP version and a serial reference
// with identical per-point arithmetic; outputs are bit-identical.

#include "tsv/network.hpp"
#include "tsv/sparams.hpp"

#include <vector>

namespace tsv {

std::vector<ThreePortZ> z_sweep(const FrequencyGrid& grid, const TsvGeometry& geom, const MaterialParams& mat,
                                const SingularityGuards& guards = {});
std::vector<ThreePortZ> z_sweep_serial(const FrequencyGrid& grid, const TsvGeometry& geom,
                                       const MaterialParams& mat, const SingularityGuards& guards = {});

/// Nodal-analysis route over the same grid (used by the dual-route check).
std::vector<ThreePortZ> z_sweep_mna(const FrequencyGrid& grid, const TsvGeometry& geom, const MaterialParams& mat,
                                    const SingularityGuards& guards = {});

std::vector<ThreePortS> s_sweep(const std::vector<ThreePortZ>& zs, double z0 = 50.0);
std::vector<ThreePortS> s_sweep_serial(const std::vector<ThreePortZ>& zs, double z0 = 50.0);

} // namespace tsv
