#include "tsv/checks.hpp"

#include <algorithm>
#include <cmath>

namespace tsv::checks {

double entrywise_relative_error(const Matrix3c& got, const Matrix3c& ref)
{
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double diff = std::abs(got(i, j) - ref(i, j));
            const double scale = std::abs(ref(i, j));
            worst = std::max(worst, scale > 0.0 ? diff / scale : diff);
        }
    return worst;
}

double asymmetry(const Matrix3c& m)
{
    const double norm = m.norm();
    return norm > 0.0 ? (m - m.transpose()).norm() / norm : 0.0;
}

double min_hermitian_eigenvalue(const Matrix3c& m)
{
    const Matrix3c h = (m + m.adjoint()) / 2.0;
    return Eigen::SelfAdjointEigenSolver<Matrix3c>(h, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

} // namespace tsv::checks
