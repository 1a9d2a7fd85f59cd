#include "tsv/network.hpp"

#include "tsv/error.hpp"

#include <cmath>
#include <string>

namespace tsv {

namespace {

constexpr int reference_node = -1;

complex laplace(double frequency) { return {0.0, 2.0 * constants::pi * frequency}; }

void require_frequency(double f)
{
    if (!(f > 0.0) || !std::isfinite(f))
        throw DomainError("frequency must be > 0, got " + std::to_string(f));
}

void require_element(double v, const char* name)
{
    if (!(v >= min_element_value) || !std::isfinite(v))
        throw ValidationError(std::string("degenerate element ") + name + " = " + std::to_string(v));
}

} // namespace

FrequencyGrid FrequencyGrid::linear(double start, double stop, std::size_t count)
{
    FrequencyGrid grid{{}, Spacing::linear};
    if (count == 1) {
        grid.points.push_back(start);
    } else {
        grid.points.reserve(count);
        const double step = (stop - start) / static_cast<double>(count - 1);
        for (std::size_t i = 0; i < count; ++i)
            grid.points.push_back(start + step * static_cast<double>(i));
        grid.points.back() = stop;
    }
    validate(grid);
    return grid;
}

FrequencyGrid FrequencyGrid::logarithmic(double start, double stop, std::size_t count)
{
    if (!(start > 0.0) || !(stop > 0.0))
        throw ValidationError("logarithmic grid bounds must be > 0");
    FrequencyGrid grid{{}, Spacing::logarithmic};
    if (count == 1) {
        grid.points.push_back(start);
    } else {
        grid.points.reserve(count);
        const double lo = std::log10(start);
        const double span = std::log10(stop) - lo;
        for (std::size_t i = 0; i < count; ++i)
            grid.points.push_back(std::pow(10.0, lo + span * static_cast<double>(i) / static_cast<double>(count - 1)));
        grid.points.front() = start;
        grid.points.back() = stop;
    }
    validate(grid);
    return grid;
}

FrequencyGrid FrequencyGrid::standard() { return logarithmic(1e6, 100e9, 201); }

void validate(const FrequencyGrid& grid)
{
    if (grid.points.empty())
        throw ValidationError("frequency grid is empty");
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
        const double f = grid.points[i];
        if (!(f > 0.0) || !std::isfinite(f))
            throw ValidationError("frequency grid point " + std::to_string(i) + " is not > 0");
        if (i > 0 && !(f > grid.points[i - 1]))
            throw ValidationError("frequency grid is not strictly increasing at point " + std::to_string(i));
    }
}

complex Branch::impedance(complex s) const
{
    switch (kind) {
    case BranchKind::series_rl:
        return value_a + s * value_b;
    case BranchKind::series_cc:
        return 1.0 / (s * value_a) + 1.0 / (s * value_b);
    case BranchKind::parallel_gc:
        return 1.0 / (value_a + s * value_b);
    }
    return {};
}

complex Branch::admittance(complex s) const
{
    switch (kind) {
    case BranchKind::series_rl:
        return 1.0 / (value_a + s * value_b);
    case BranchKind::series_cc:
        // C_a*C_b/(C_a + C_b) without forming 1/C terms
        return s * (value_a * value_b / (value_a + value_b));
    case BranchKind::parallel_gc:
        return value_a + s * value_b;
    }
    return {};
}

NetworkDescription assemble_topology(const RlgcElements& e)
{
    require_element(e.r_half, "r_half");
    require_element(e.l_half, "l_half");
    require_element(e.c_ox, "c_ox");
    require_element(e.c_d, "c_d");
    // The substrate branch may be all-capacitive or all-conductive, not absent.
    if (!(e.g_si >= min_element_value) && !(e.c_si >= min_element_value))
        throw ValidationError("degenerate substrate branch: G_si and C_si both vanish, port 2 floats");
    if (e.g_si < 0.0 || e.c_si < 0.0)
        throw ValidationError("negative substrate element");

    enum : int { p1, mid, p3, surface, p2 };
    NetworkDescription net;
    net.nodes = {"port1", "mid", "port3", "surface", "port2"};
    net.branches = {
        {"segment_bottom", p1, mid, BranchKind::series_rl, e.r_half, e.l_half},
        {"segment_top", mid, p3, BranchKind::series_rl, e.r_half, e.l_half},
        {"signal_liner", mid, surface, BranchKind::series_cc, e.c_ox, e.c_d},
        {"lateral_silicon", surface, p2, BranchKind::parallel_gc, e.g_si, e.c_si},
        {"ground_liner", p2, reference_node, BranchKind::series_cc, e.c_d, e.c_ox},
    };
    net.port_nodes[signal_bottom] = p1;
    net.port_nodes[substrate] = p2;
    net.port_nodes[signal_top] = p3;
    return net;
}

ThreePortZ z_matrix_at(double frequency, const RlgcElements& e)
{
    require_frequency(frequency);
    const complex s = laplace(frequency);

    const complex segment = e.r_half + s * e.l_half;
    const complex liner = 1.0 / (s * e.c_ox) + 1.0 / (s * e.c_d);
    const complex silicon = 1.0 / (e.g_si + s * e.c_si);

    // Port-2 current returns only through the ground liner; port-1/3 current
    // additionally crosses the signal liner and the lateral silicon.
    const complex shared = liner;
    const complex through = liner + silicon + shared;
    const complex self = segment + through;

    ThreePortZ out{frequency, Matrix3c{}};
    auto& z = out.z;
    z(signal_bottom, signal_bottom) = self;
    z(signal_top, signal_top) = self;
    z(signal_bottom, signal_top) = z(signal_top, signal_bottom) = through;
    z(substrate, substrate) = shared;
    z(signal_bottom, substrate) = z(substrate, signal_bottom) = shared;
    z(signal_top, substrate) = z(substrate, signal_top) = shared;
    if (!z.allFinite())
        throw NetworkError("non-finite impedance", frequency);
    return out;
}

NodalMatrix nodal_admittance(const NetworkDescription& net, double frequency)
{
    require_frequency(frequency);
    const complex s = laplace(frequency);
    const auto n = static_cast<Eigen::Index>(net.nodes.size());
    NodalMatrix y = NodalMatrix::Zero(n, n);
    for (const auto& b : net.branches) {
        const wide_complex yb(b.admittance(s));
        if (b.from != reference_node)
            y(b.from, b.from) += yb;
        if (b.to != reference_node)
            y(b.to, b.to) += yb;
        if (b.from != reference_node && b.to != reference_node) {
            y(b.from, b.to) -= yb;
            y(b.to, b.from) -= yb;
        }
    }
    return y;
}

namespace {

using WideVector = Eigen::Matrix<wide_complex, Eigen::Dynamic, 1>;

Eigen::PartialPivLU<NodalMatrix> factor(const NodalMatrix& m, double frequency)
{
    Eigen::PartialPivLU<NodalMatrix> lu(m);
    const double rcond = static_cast<double>(lu.rcond());
    if (!(rcond > 1e-30) || !std::isfinite(rcond))
        throw NetworkError("singular nodal matrix (rcond " + std::to_string(rcond) + ")", frequency);
    return lu;
}

complex narrow(wide_complex v) { return {static_cast<double>(v.real()), static_cast<double>(v.imag())}; }

} // namespace

ThreePortZ z_matrix_mna(double frequency, const NetworkDescription& net)
{
    const NodalMatrix y = nodal_admittance(net, frequency);
    const auto lu = factor(y, frequency);

    ThreePortZ out{frequency, Matrix3c{}};
    for (int col = 0; col < 3; ++col) {
        WideVector rhs = WideVector::Zero(y.rows());
        rhs(net.port_nodes[col]) = 1.0L;
        const WideVector v = lu.solve(rhs);
        for (int row = 0; row < 3; ++row)
            out.z(row, col) = narrow(v(net.port_nodes[row]));
    }
    if (!out.z.allFinite())
        throw NetworkError("non-finite nodal solution", frequency);
    return out;
}

complex drive_transfer_mna(double frequency, const NetworkDescription& net, complex termination,
                           std::optional<complex> substrate_load)
{
    NodalMatrix y = nodal_admittance(net, frequency);
    const auto n = y.rows();
    y(net.port_nodes[signal_top], net.port_nodes[signal_top]) += 1.0L / wide_complex(termination);
    if (substrate_load)
        y(net.port_nodes[substrate], net.port_nodes[substrate]) += 1.0L / wide_complex(*substrate_load);

    // Augment with the source branch current.
    NodalMatrix m = NodalMatrix::Zero(n + 1, n + 1);
    m.topLeftCorner(n, n) = y;
    const int drive = net.port_nodes[signal_bottom];
    m(drive, n) = 1.0L;
    m(n, drive) = 1.0L;
    WideVector rhs = WideVector::Zero(n + 1);
    rhs(n) = 1.0L;
    const WideVector x = factor(m, frequency).solve(rhs);
    return narrow(x(net.port_nodes[substrate]));
}

complex drive_transfer(const ThreePortZ& zp, complex termination, std::optional<complex> substrate_load)
{
    const Matrix3c& z = zp.z;
    if (!substrate_load) {
        // I2 = 0; unknowns I1, I3.
        Eigen::Matrix2cd a;
        a << z(0, 0), z(0, 2),
             z(2, 0), z(2, 2) + termination;
        const Eigen::Vector2cd i = a.partialPivLu().solve(Eigen::Vector2cd(1.0, 0.0));
        return z(1, 0) * i(0) + z(1, 2) * i(1);
    }
    Matrix3c a = z;
    a(1, 1) += *substrate_load;
    a(2, 2) += termination;
    const Eigen::Vector3cd i = a.partialPivLu().solve(Eigen::Vector3cd(1.0, 0.0, 0.0));
    return -(*substrate_load) * i(1);
}

} // namespace tsv
