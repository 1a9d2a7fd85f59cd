#include "golden.hpp"
#include "test_util.hpp"

#include "tsv/checks.hpp"
#include "tsv/error.hpp"
#include "tsv/sparams.hpp"
#include "tsv/sweep.hpp"

using namespace tsv;

namespace {
const TsvGeometry geom = TsvGeometry::reference();
const MaterialParams mat = MaterialParams::reference();

ThreePortS s_at(double f) { return z_to_s(z_matrix_at(f, rlgc_at(f, geom, mat))); }
} // namespace

TEST_CASE("matched and shorted terminations")
{
    const auto s = z_to_s({1e9, 50.0 * Matrix3c::Identity()});
    CHECK(s.s.cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.frequency == 1e9);
    const auto sh = z_to_s({1e9, Matrix3c::Zero()});
    CHECK((sh.s + Matrix3c::Identity()).cwiseAbs().maxCoeff() < 1e-15);

    const auto z = s_to_z({1e9, Matrix3c::Zero(), 50.0});
    CHECK((z.z - 50.0 * Matrix3c::Identity()).cwiseAbs().maxCoeff() < 1e-13);
    const auto z0 = s_to_z({1e9, -Matrix3c::Identity(), 50.0});
    CHECK(z0.z.cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("conversion refuses singular systems")
{
    CHECK_THROWS_AS(s_to_z({1e9, Matrix3c::Identity(), 50.0}), ConversionError);
    Matrix3c s = Matrix3c::Zero();
    s(1, 1) = 1.0;
    CHECK_THROWS_AS(s_to_z({1e9, s, 50.0}), ConversionError);
    CHECK_THROWS_AS(z_to_s({1e9, -50.0 * Matrix3c::Identity()}), ConversionError);
    CHECK_THROWS_AS(z_to_s({1e9, Matrix3c::Zero()}, 0.0), ValidationError);
}

TEST_CASE("round trip on random passive reciprocal matrices")
{
    std::mt19937_64 rng(42);
    for (int i = 0; i < 50; ++i) {
        const Matrix3c z = test::random_passive_z(rng, test::log_uniform(rng, 1.0, 1e4));
        const auto s = z_to_s({1e9, z});
        CHECK(max_singular_value(s.s) <= 1.0 + 1e-9);
        CHECK(checks::asymmetry(s.s) < 1e-12);
        CHECK(checks::entrywise_relative_error(s_to_z(s).z, z) < 1e-9);
    }
}

TEST_CASE("reference model against the oracle at 1 GHz")
{
    const auto s = s_at(1e9);
    Matrix3c ref;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            ref(i, j) = golden::s_1ghz[i][j];
    CHECK((s.s - ref).cwiseAbs().maxCoeff() < 1e-9);
    // dB spot values by hand from the oracle's complex entries
    CHECK(magnitude_db(s.s(1, 0)) == doctest::Approx(golden::s21_db_1ghz).epsilon(1e-9));
    CHECK(magnitude_db(s.s(2, 0)) == doctest::Approx(golden::s31_db_1ghz).epsilon(1e-9));
    const double hand = 20.0 * std::log10(std::hypot(ref(1, 0).real(), ref(1, 0).imag()));
    CHECK(magnitude_db(s.s(1, 0)) == doctest::Approx(hand).epsilon(1e-9));
}

TEST_CASE("substrate coupling near -30 dB at 10 GHz")
{
    const double db = magnitude_db(s_at(10e9).s(1, 0));
    CHECK(db == doctest::Approx(golden::s21_db_10ghz).epsilon(1e-9));
    CHECK(std::abs(db - (-30.0)) <= 3.0);
}

TEST_CASE("coupling and insertion-loss shape")
{
    const auto grid = FrequencyGrid::standard();
    const auto ss = s_sweep(z_sweep(grid, geom, mat));
    double prev = -1e9;
    for (const auto& s : ss) {
        const double s21 = magnitude_db(s.s(1, 0));
        const double s31 = magnitude_db(s.s(2, 0));
        if (s.frequency >= 10e6 && s.frequency <= 10e9) {
            CHECK(s21 > prev);
            prev = s21;
        }
        if (s.frequency <= 10e9)
            CHECK(s31 > -3.0);
        CHECK(max_singular_value(s.s) <= 1.0 + 1e-9);
        CHECK(checks::asymmetry(s.s) <= 1e-9);
    }
}

TEST_CASE("full-sweep round trip")
{
    const auto zs = z_sweep(FrequencyGrid::standard(), geom, mat);
    const auto ss = s_sweep(zs);
    REQUIRE(ss.size() == zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) {
        CHECK(ss[i].frequency == zs[i].frequency);
        CHECK(checks::entrywise_relative_error(s_to_z(ss[i]).z, zs[i].z) < 1e-9);
    }
}

TEST_CASE("helpers")
{
    CHECK(magnitude_db({0.1, 0.0}) == doctest::Approx(-20.0));
    CHECK(std::isinf(magnitude_db({0.0, 0.0})));
    CHECK(max_singular_value(2.0 * Matrix3c::Identity()) == doctest::Approx(2.0));
    CHECK(condition_number(Matrix3c::Identity()) == doctest::Approx(1.0));
}
