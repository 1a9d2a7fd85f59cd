#pragma once

// Three-port lumped network of the signal-ground TSV pair.
//
//   port 1 --[R1 + sL1]-- M --[R1 + sL1]-- port 3
//                         |
//                 signal liner: C_ox ser C_d
//                         |
//                         X  (silicon surface at the signal via)
//                         |
//               lateral silicon: G_si || C_si
//                         |
//                      port 2  (substrate)
//                         |
//                 ground liner: C_d ser C_ox
//                         |
//                  reference (ground TSV)

#include "tsv/physics.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace tsv {

using complex = std::complex<double>;
using Matrix3c = Eigen::Matrix3cd;

/// Port indices into 3x3 matrices.
enum Port : int { signal_bottom = 0, substrate = 1, signal_top = 2 };

enum class Spacing { linear, logarithmic };

struct FrequencyGrid {
    std::vector<double> points;
    Spacing spacing = Spacing::logarithmic;

    static FrequencyGrid linear(double start, double stop, std::size_t count);
    static FrequencyGrid logarithmic(double start, double stop, std::size_t count);
    /// 1 MHz .. 100 GHz, 201 log-spaced points.
    static FrequencyGrid standard();

    std::size_t size() const { return points.size(); }
};

void validate(const FrequencyGrid& grid);

struct ThreePortZ {
    double frequency;
    Matrix3c z;
};

enum class BranchKind {
    series_rl,       // value_a = R, value_b = L
    series_cc,       // value_a, value_b = the two series capacitances
    parallel_gc,     // value_a = G, value_b = C
};

struct Branch {
    std::string name;
    int from;        // node index, -1 is the reference
    int to;
    BranchKind kind;
    double value_a;
    double value_b;

    complex admittance(complex s) const;
    complex impedance(complex s) const;
};

struct NetworkDescription {
    std::vector<std::string> nodes;  // reference node excluded
    std::vector<Branch> branches;
    int port_nodes[3];               // node index per Port
};

inline constexpr double min_element_value = 1e-30;

/// Builds the fixed topology; rejects element values below min_element_value.
NetworkDescription assemble_topology(const RlgcElements& elements);

/// Open-circuit impedance matrix by closed-form branch algebra.
ThreePortZ z_matrix_at(double frequency, const RlgcElements& elements);

/// Nodal admittance matrix of the description at s = j*2*pi*f. Assembled in
/// extended precision.
using wide_complex = std::complex<long double>;
using NodalMatrix = Eigen::Matrix<wide_complex, Eigen::Dynamic, Eigen::Dynamic>;
NodalMatrix nodal_admittance(const NetworkDescription& net, double frequency);

/// Open-circuit impedance matrix by nodal analysis with 1 A port injections.
ThreePortZ z_matrix_mna(double frequency, const NetworkDescription& net);

/// Port-2 voltage per volt at port 1 with an ideal source on port 1, port 3
/// terminated in `termination` and port 2 loaded by `substrate_load`
/// (nullopt = open). Solved as a modified nodal system with a source row.
complex drive_transfer_mna(double frequency, const NetworkDescription& net, complex termination,
                           std::optional<complex> substrate_load);

/// Same drive scenario solved from an existing Z matrix.
complex drive_transfer(const ThreePortZ& z, complex termination, std::optional<complex> substrate_load);

} // namespace tsv
