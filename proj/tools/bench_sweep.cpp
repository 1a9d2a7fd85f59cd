// Serial reference vs OpenMP sweep kernels over dense frequency grids.

#include "tsv/spur.hpp"
#include "tsv/sweep.hpp"

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>

using h_clock = std::chrono::high_resolution_clock;

template <typename Fn>
double best_of(int reps, Fn&& fn)
{
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t1 = h_clock::now();
        fn();
        const auto t2 = h_clock::now();
        best = std::min(best, std::chrono::duration<double>(t2 - t1).count());
    }
    return best;
}

int main(int argc, char** argv)
{
    const std::size_t points = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 200001;
    const auto grid = tsv::FrequencyGrid::logarithmic(1e6, 100e9, points);
    const tsv::TsvGeometry geom;
    const tsv::MaterialParams mat;

    std::cout << "threads: " << omp_get_max_threads() << "  points: " << points << '\n';

    std::vector<tsv::ThreePortZ> zs;
    const double z_serial = best_of(3, [&] { zs = tsv::z_sweep_serial(grid, geom, mat); });
    const double z_par = best_of(3, [&] { zs = tsv::z_sweep(grid, geom, mat); });
    std::vector<tsv::ThreePortS> ss;
    const double s_serial = best_of(3, [&] { ss = tsv::s_sweep_serial(zs); });
    const double s_par = best_of(3, [&] { ss = tsv::s_sweep(zs); });

    tsv::spur::OscillatorModel osc;
    osc.k_sub = 1.3e9;
    const tsv::spur::SubstrateCoupling coupling(geom, mat);
    const auto fgrid = tsv::FrequencyGrid::logarithmic(0.5e9, 2e9, points / 10 + 2).points;
    const double spur_serial = best_of(3, [&] { tsv::spur::frequency_sweep_serial(osc, coupling, 0.3, fgrid); });
    const double spur_par = best_of(3, [&] { tsv::spur::frequency_sweep(osc, coupling, 0.3, fgrid); });

    auto line = [](const char* name, double serial, double par) {
        std::cout << name << "  serial " << serial * 1e3 << " ms  openmp " << par * 1e3 << " ms  speedup "
                  << serial / par << "x\n";
    };
    line("z_sweep ", z_serial, z_par);
    line("s_sweep ", s_serial, s_par);
    line("spur    ", spur_serial, spur_par);
    return 0;
}
