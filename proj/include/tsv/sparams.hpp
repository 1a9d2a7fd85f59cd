#pragma once

#include "tsv/network.hpp"

namespace tsv {

struct ThreePortS {
    double frequency;
    Matrix3c s;
    double z0 = 50.0;
};

/// Condition number of (Z + z0*I) or (I - S) above which conversion is refused.
inline constexpr double max_condition_number = 1e12;

ThreePortS z_to_s(const ThreePortZ& z, double z0 = 50.0);
ThreePortZ s_to_z(const ThreePortS& s);

/// 20*log10|x|; -inf for x == 0.
double magnitude_db(complex x);

/// Largest singular value of S (passivity requires <= 1).
double max_singular_value(const Matrix3c& m);

/// 1-norm condition number estimate from an LU factorization.
double condition_number(const Matrix3c& m);

} // namespace tsv
