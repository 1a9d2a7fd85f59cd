#pragma once

// Matrix comparisons shared by the validate command and the test suites.

#include "tsv/network.hpp"

namespace tsv::checks {

/// max_ij |got_ij - ref_ij| / |ref_ij| (absolute where ref_ij == 0).
double entrywise_relative_error(const Matrix3c& got, const Matrix3c& ref);

/// ||m - m^T||_F / ||m||_F.
double asymmetry(const Matrix3c& m);

/// Smallest eigenvalue of (m + m^H)/2.
double min_hermitian_eigenvalue(const Matrix3c& m);

} // namespace tsv::checks
