#include "test_util.hpp"

#include "tsv/error.hpp"
#include "tsv/sweep.hpp"

using namespace tsv;

namespace {
const TsvGeometry geom = TsvGeometry::reference();
const MaterialParams mat = MaterialParams::reference();
} // namespace

TEST_CASE("z sweep shape and order")
{
    const auto grid = FrequencyGrid::standard();
    const auto zs = z_sweep(grid, geom, mat);
    REQUIRE(zs.size() == 201);
    for (std::size_t i = 0; i < zs.size(); ++i)
        CHECK(zs[i].frequency == grid.points[i]);
}

TEST_CASE("parallel and serial kernels are bit-identical")
{
    const auto grid = FrequencyGrid::logarithmic(1e6, 100e9, 2001);
    const auto par = z_sweep(grid, geom, mat);
    const auto ser = z_sweep_serial(grid, geom, mat);
    REQUIRE(par.size() == ser.size());
    bool same = true;
    for (std::size_t i = 0; i < par.size(); ++i)
        same = same && par[i].frequency == ser[i].frequency && par[i].z == ser[i].z;
    CHECK(same);

    const auto sp = s_sweep(par);
    const auto ss = s_sweep_serial(ser);
    same = true;
    for (std::size_t i = 0; i < sp.size(); ++i)
        same = same && sp[i].s == ss[i].s;
    CHECK(same);
}

TEST_CASE("sweep points equal standalone evaluation")
{
    const auto grid = FrequencyGrid::logarithmic(1e6, 100e9, 37);
    const auto zs = z_sweep(grid, geom, mat);
    for (std::size_t i = 0; i < zs.size(); ++i) {
        const double f = grid.points[i];
        CHECK(zs[i].z == z_matrix_at(f, rlgc_at(f, geom, mat)).z);
    }
}

TEST_CASE("sweep validation errors")
{
    TsvGeometry bad = geom;
    bad.pitch = 1e-6;
    CHECK_THROWS_AS(z_sweep(FrequencyGrid::standard(), bad, mat), ValidationError);
    CHECK_THROWS_AS(z_sweep(FrequencyGrid{{1e9, 5e8}, Spacing::linear}, geom, mat), ValidationError);
    CHECK_THROWS_AS(s_sweep({}), ValidationError);
}

TEST_CASE("per-point failures surface with frequency context")
{
    // a zero matrix plus a negative reference impedance is singular at every point
    std::vector<ThreePortZ> zs{{1e9, Matrix3c::Zero()}, {2e9, -50.0 * Matrix3c::Identity()}};
    CHECK_THROWS_AS(s_sweep(zs, -50.0), ValidationError);
    try {
        s_sweep(zs, 50.0);
        FAIL("expected ConversionError");
    } catch (const ConversionError& e) {
        CHECK(std::string(e.what()).find("condition number") != std::string::npos);
    }
}
