#include "ofldg/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "ofldg/error.hpp"

namespace ofldg {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_degree(int k)
{
    if (k < 0) {
        throw Error(ErrorCode::DegreeOutOfRange, "negative polynomial degree " + std::to_string(k));
    }
}

} // namespace

DGField1D::DGField1D(const Mesh1D& mesh, int k)
    : mesh_(mesh), k_(k)
{
    check_degree(k);
    coeffs_.assign(static_cast<std::size_t>(mesh.n_cells) * n_modes(), 0.0);
}

double DGField1D::eval(int j, double xi, int deriv_order) const
{
    return eval_poly(cell(j), xi, deriv_order, mesh_.h);
}

double DGField1D::operator()(double x) const
{
    const int j = mesh_.locate(x);
    const double xi = 2.0 * (x - mesh_.center(j)) / mesh_.h;
    return eval(j, std::clamp(xi, -1.0, 1.0));
}

ModeSet::ModeSet(int k, Space space)
    : k_(k), space_(space)
{
    check_degree(k);
    const int max_total = space == Space::TotalDegree ? k : 2 * k;
    for (int d = 0; d <= max_total; ++d) {
        for (int px = std::min(d, k); px >= 0; --px) {
            const int py = d - px;
            if (py <= k) {
                modes_.push_back({px, py});
            }
        }
    }
}

int ModeSet::truncation_degree(int m) const
{
    const auto& [px, py] = modes_[m];
    return space_ == Space::TotalDegree ? px + py : std::max(px, py);
}

DGField2D::DGField2D(const Mesh2D& mesh, int k, Space space)
    : mesh_(mesh), modes_(k, space)
{
    coeffs_.assign(static_cast<std::size_t>(mesh.n_cells()) * n_modes(), 0.0);
}

double DGField2D::eval(int i, int j, double xi, double eta, int ax, int ay) const
{
    const auto c = cell(i, j);
    double sum = 0.0;
    for (int m = 0; m < n_modes(); ++m) {
        const auto& [px, py] = modes_[m];
        sum += c[m] * legendre_orthonormal_derivative(px, ax, xi) * legendre_orthonormal_derivative(py, ay, eta);
    }
    return sum * std::pow(2.0 / mesh_.hx, ax) * std::pow(2.0 / mesh_.hy, ay);
}

double DGField2D::operator()(double x, double y) const
{
    const int i = mesh_.axis_x().locate(x);
    const int j = mesh_.axis_y().locate(y);
    const double xi = std::clamp(2.0 * (x - mesh_.center_x(i)) / mesh_.hx, -1.0, 1.0);
    const double eta = std::clamp(2.0 * (y - mesh_.center_y(j)) / mesh_.hy, -1.0, 1.0);
    return eval(i, j, xi, eta);
}

DGField1D l2_project(const Function1D& func, const Mesh1D& mesh, int k, int n_quad)
{
    DGField1D u(mesh, k);
    const BasisSet basis(k, n_quad > 0 ? n_quad : k + 2);
    const auto& quad = basis.quad();
    for (int j = 0; j < mesh.n_cells; ++j) {
        auto c = u.cell(j);
        for (int q = 0; q < quad.size(); ++q) {
            const double fx = func(mesh.center(j) + 0.5 * mesh.h * quad.nodes[q]);
            for (int m = 0; m < u.n_modes(); ++m) {
                c[m] += quad.weights[q] * fx * basis.value(q, m);
            }
        }
    }
    return u;
}

DGField2D l2_project(const Function2D& func, const Mesh2D& mesh, int k, Space space, int n_quad)
{
    DGField2D u(mesh, k, space);
    const int nq = n_quad > 0 ? n_quad : k + 2;
    const BasisSet basis(k, nq);
    const auto& quad = basis.quad();
    const auto& modes = u.modes();
    for (int j = 0; j < mesh.ny; ++j) {
        for (int i = 0; i < mesh.nx; ++i) {
            auto c = u.cell(i, j);
            for (int qy = 0; qy < nq; ++qy) {
                const double y = mesh.center_y(j) + 0.5 * mesh.hy * quad.nodes[qy];
                for (int qx = 0; qx < nq; ++qx) {
                    const double x = mesh.center_x(i) + 0.5 * mesh.hx * quad.nodes[qx];
                    const double w = quad.weights[qx] * quad.weights[qy] * func(x, y);
                    for (int m = 0; m < modes.size(); ++m) {
                        c[m] += w * basis.value(qx, modes[m][0]) * basis.value(qy, modes[m][1]);
                    }
                }
            }
        }
    }
    return u;
}

std::vector<double> modal_truncate(std::span<const double> cell_coeffs, int target_degree)
{
    const int k = static_cast<int>(cell_coeffs.size()) - 1;
    if (target_degree < -1 || target_degree > k) {
        throw Error(ErrorCode::DegreeOutOfRange,
                    "truncation degree " + std::to_string(target_degree) + " outside [-1, " + std::to_string(k) + "]");
    }
    const int keep = std::max(target_degree, 0);
    std::vector<double> out(cell_coeffs.begin(), cell_coeffs.end());
    for (int m = keep + 1; m <= k; ++m) {
        out[m] = 0.0;
    }
    return out;
}

std::vector<double> modal_truncate(std::span<const double> cell_coeffs, int target_degree, const ModeSet& modes)
{
    if (target_degree < -1 || target_degree > modes.degree()) {
        throw Error(ErrorCode::DegreeOutOfRange, "truncation degree " + std::to_string(target_degree) +
                                                     " outside [-1, " + std::to_string(modes.degree()) + "]");
    }
    const int keep = std::max(target_degree, 0);
    std::vector<double> out(cell_coeffs.begin(), cell_coeffs.end());
    for (int m = 0; m < modes.size(); ++m) {
        if (modes.truncation_degree(m) > keep) {
            out[m] = 0.0;
        }
    }
    return out;
}

double trace(const DGField1D& u, int face, Side side, const BoundaryKind& bc, int deriv_order)
{
    const int n = u.n_cells();
    // cell on the requested side of the face, before boundary handling
    int cell = side == Side::Left ? face - 1 : face;
    if (cell >= 0 && cell < n) {
        return u.eval(cell, side == Side::Left ? 1.0 : -1.0, deriv_order);
    }
    if (bc.is_periodic()) {
        cell = (cell + n) % n;
        return u.eval(cell, side == Side::Left ? 1.0 : -1.0, deriv_order);
    }
    if (deriv_order == 0) {
        return bc.value(side == Side::Left ? Side::Left : Side::Right);
    }
    // ghost derivatives copy the interior trace across the face
    const int interior = side == Side::Left ? face : face - 1;
    return u.eval(interior, side == Side::Left ? -1.0 : 1.0, deriv_order);
}

double jump(const DGField1D& u, int face, int deriv_order, const BoundaryKind& bc)
{
    return trace(u, face, Side::Right, bc, deriv_order) - trace(u, face, Side::Left, bc, deriv_order);
}

double average(const DGField1D& u, int face, const BoundaryKind& bc)
{
    return 0.5 * (trace(u, face, Side::Right, bc) + trace(u, face, Side::Left, bc));
}

Norms norms(const DGField1D& u, const Function1D& exact)
{
    const Mesh1D& mesh = u.mesh();
    const BasisSet basis(u.degree(), u.degree() + 3);
    const auto& quad = basis.quad();
    Norms out;
    double l2sq = 0.0;
    for (int j = 0; j < mesh.n_cells; ++j) {
        const auto c = u.cell(j);
        for (int q = 0; q < quad.size(); ++q) {
            double v = 0.0;
            for (int m = 0; m < u.n_modes(); ++m) {
                v += c[m] * basis.value(q, m);
            }
            if (exact) {
                v -= exact(mesh.center(j) + 0.5 * mesh.h * quad.nodes[q]);
            }
            const double w = 0.5 * mesh.h * quad.weights[q];
            out.l1 += w * std::abs(v);
            l2sq += w * v * v;
            out.linf = std::max(out.linf, std::abs(v));
        }
    }
    out.l2 = std::sqrt(l2sq);
    return out;
}

Norms norms(const DGField1D& u, const Function1D& exact, double lo, double hi)
{
    if (!(hi > lo)) {
        throw Error(ErrorCode::InvalidDomain, "empty norm window");
    }
    const Mesh1D& mesh = u.mesh();
    const QuadRule quad = gauss_rule(u.degree() + 3);
    Norms out;
    double l2sq = 0.0;
    for (int j = 0; j < mesh.n_cells; ++j) {
        const double a = std::max(lo, mesh.face(j));
        const double b = std::min(hi, mesh.face(j + 1));
        if (!(b > a)) {
            continue;
        }
        for (int q = 0; q < quad.size(); ++q) {
            const double x = 0.5 * (a + b) + 0.5 * (b - a) * quad.nodes[q];
            double v = u.eval(j, 2.0 * (x - mesh.center(j)) / mesh.h);
            if (exact) {
                v -= exact(x);
            }
            const double w = 0.5 * (b - a) * quad.weights[q];
            out.l1 += w * std::abs(v);
            l2sq += w * v * v;
            out.linf = std::max(out.linf, std::abs(v));
        }
    }
    out.l2 = std::sqrt(l2sq);
    return out;
}

Norms scale_norms(Norms n, NormScaling scaling, double measure)
{
    if (scaling == NormScaling::Integral) {
        return n;
    }
    if (!(measure > 0.0)) {
        throw Error(ErrorCode::InvalidDomain, "norm region must have positive measure");
    }
    n.l1 /= measure;
    n.l2 /= std::sqrt(measure);
    return n;
}

Norms norms(const DGField2D& u, const Function2D& exact)
{
    const Mesh2D& mesh = u.mesh();
    const int nq = u.degree() + 3;
    const BasisSet basis(u.degree(), nq);
    const auto& quad = basis.quad();
    const auto& modes = u.modes();
    Norms out;
    double l2sq = 0.0;
    for (int j = 0; j < mesh.ny; ++j) {
        for (int i = 0; i < mesh.nx; ++i) {
            const auto c = u.cell(i, j);
            for (int qy = 0; qy < nq; ++qy) {
                for (int qx = 0; qx < nq; ++qx) {
                    double v = 0.0;
                    for (int m = 0; m < modes.size(); ++m) {
                        v += c[m] * basis.value(qx, modes[m][0]) * basis.value(qy, modes[m][1]);
                    }
                    if (exact) {
                        v -= exact(mesh.center_x(i) + 0.5 * mesh.hx * quad.nodes[qx],
                                   mesh.center_y(j) + 0.5 * mesh.hy * quad.nodes[qy]);
                    }
                    const double w = 0.25 * mesh.hx * mesh.hy * quad.weights[qx] * quad.weights[qy];
                    out.l1 += w * std::abs(v);
                    l2sq += w * v * v;
                    out.linf = std::max(out.linf, std::abs(v));
                }
            }
        }
    }
    out.l2 = std::sqrt(l2sq);
    return out;
}

double mass(const DGField1D& u)
{
    double sum = 0.0;
    for (int j = 0; j < u.n_cells(); ++j) {
        sum += u.cell(j)[0];
    }
    return sum * u.mesh().h * kInvSqrt2;
}

double mass(const DGField2D& u)
{
    double sum = 0.0;
    for (int c = 0; c < u.mesh().n_cells(); ++c) {
        sum += u.cell(c)[0];
    }
    return sum * 0.5 * u.mesh().hx * u.mesh().hy;
}

double l2_norm(const DGField1D& u)
{
    double sum = 0.0;
    for (double c : u.coeffs()) {
        sum += c * c;
    }
    return std::sqrt(0.5 * u.mesh().h * sum);
}

double l2_norm(const DGField2D& u)
{
    double sum = 0.0;
    for (double c : u.coeffs()) {
        sum += c * c;
    }
    return std::sqrt(0.25 * u.mesh().hx * u.mesh().hy * sum);
}

std::vector<CellAverage> cell_averages(const DGField1D& u)
{
    std::vector<CellAverage> out;
    out.reserve(u.n_cells());
    for (int j = 0; j < u.n_cells(); ++j) {
        out.push_back({u.mesh().center(j), 0.0, u.cell(j)[0] * kInvSqrt2});
    }
    return out;
}

std::vector<CellAverage> cell_averages(const DGField2D& u)
{
    const Mesh2D& mesh = u.mesh();
    std::vector<CellAverage> out;
    out.reserve(mesh.n_cells());
    for (int j = 0; j < mesh.ny; ++j) {
        for (int i = 0; i < mesh.nx; ++i) {
            out.push_back({mesh.center_x(i), mesh.center_y(j), 0.5 * u.cell(i, j)[0]});
        }
    }
    return out;
}

void write_cell_averages_csv(std::ostream& out, const std::vector<CellAverage>& averages, int dim)
{
    out << (dim == 1 ? "x,u_mean\n" : "x,y,u_mean\n");
    char buf[96];
    for (const auto& a : averages) {
        if (dim == 1) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", a.x, a.mean);
        } else {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", a.x, a.y, a.mean);
        }
        out << buf;
    }
}

} // namespace ofldg
