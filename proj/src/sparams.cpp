#include "tsv/sparams.hpp"

#include "tsv/error.hpp"

#include <cmath>
#include <limits>

namespace tsv {

namespace {

// Solves X * a = b for X via the transposed system; never forms a^-1.
Matrix3c right_divide(const Matrix3c& b, const Matrix3c& a, const char* what)
{
    const Eigen::PartialPivLU<Matrix3c> lu(a.transpose());
    const double rcond = lu.rcond();
    const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
    if (!std::isfinite(cond) || cond > max_condition_number)
        throw ConversionError(what, cond);
    return lu.solve(b.transpose()).transpose();
}

} // namespace

double condition_number(const Matrix3c& m)
{
    const double rcond = Eigen::PartialPivLU<Matrix3c>(m).rcond();
    return rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
}

ThreePortS z_to_s(const ThreePortZ& z, double z0)
{
    if (!(z0 > 0.0) || !std::isfinite(z0))
        throw ValidationError("reference impedance must be > 0");
    const Matrix3c id = Matrix3c::Identity();
    const Matrix3c s = right_divide(z.z - z0 * id, z.z + z0 * id, "Z + z0*I is singular");
    return {z.frequency, s, z0};
}

ThreePortZ s_to_z(const ThreePortS& s)
{
    const Matrix3c id = Matrix3c::Identity();
    const Matrix3c z = s.z0 * right_divide(id + s.s, id - s.s, "I - S is singular (unit eigenvalue)");
    return {s.frequency, z};
}

double magnitude_db(complex x)
{
    const double mag = std::abs(x);
    if (mag == 0.0)
        return -std::numeric_limits<double>::infinity();
    return 20.0 * std::log10(mag);
}

double max_singular_value(const Matrix3c& m)
{
    return Eigen::JacobiSVD<Matrix3c>(m).singularValues()(0);
}

} // namespace tsv
