#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "ofldg/basis.hpp"
#include "ofldg/geometry.hpp"

namespace ofldg {

/// Modal coefficients of a piecewise P^k function on a uniform 1D mesh. On
/// cell j, u_h(x) = sum_m c_{j,m} phi_m(xi) with xi the affine map to [-1, 1]
/// and phi_m the orthonormal Legendre polynomials.
class DGField1D {
public:
    DGField1D() = default;
    DGField1D(const Mesh1D& mesh, int k);

    const Mesh1D& mesh() const { return mesh_; }
    int degree() const { return k_; }
    int n_modes() const { return k_ + 1; }
    int n_cells() const { return mesh_.n_cells; }

    std::span<double> cell(int j) { return {coeffs_.data() + j * n_modes(), static_cast<std::size_t>(n_modes())}; }
    std::span<const double> cell(int j) const
    {
        return {coeffs_.data() + j * n_modes(), static_cast<std::size_t>(n_modes())};
    }
    std::vector<double>& coeffs() { return coeffs_; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    /// Value (or physical derivative) inside cell j at reference point xi.
    double eval(int j, double xi, int deriv_order = 0) const;
    /// Point evaluation; points on a face take the right-hand cell.
    double operator()(double x) const;

private:
    Mesh1D mesh_{};
    int k_ = 0;
    std::vector<double> coeffs_;
};

enum class Space { TotalDegree, TensorProduct };

/// Modes (px, py) of a 2D space ordered by increasing total degree; mode 0 is
/// always the constant.
class ModeSet {
public:
    ModeSet() = default;
    ModeSet(int k, Space space);

    int degree() const { return k_; }
    Space space() const { return space_; }
    int size() const { return static_cast<int>(modes_.size()); }
    const std::array<int, 2>& operator[](int m) const { return modes_[m]; }
    /// Degree that decides membership in the truncated space: px+py for P^k,
    /// max(px, py) for Q^k.
    int truncation_degree(int m) const;

private:
    int k_ = 0;
    Space space_ = Space::TotalDegree;
    std::vector<std::array<int, 2>> modes_;
};

class DGField2D {
public:
    DGField2D() = default;
    DGField2D(const Mesh2D& mesh, int k, Space space = Space::TotalDegree);

    const Mesh2D& mesh() const { return mesh_; }
    const ModeSet& modes() const { return modes_; }
    int degree() const { return modes_.degree(); }
    Space space() const { return modes_.space(); }
    int n_modes() const { return modes_.size(); }

    std::span<double> cell(int i, int j) { return cell(mesh_.index(i, j)); }
    std::span<const double> cell(int i, int j) const { return cell(mesh_.index(i, j)); }
    std::span<double> cell(int c) { return {coeffs_.data() + c * n_modes(), static_cast<std::size_t>(n_modes())}; }
    std::span<const double> cell(int c) const
    {
        return {coeffs_.data() + c * n_modes(), static_cast<std::size_t>(n_modes())};
    }
    std::vector<double>& coeffs() { return coeffs_; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    /// d^ax/dx^ax d^ay/dy^ay u_h inside cell (i, j) at reference point (xi, eta).
    double eval(int i, int j, double xi, double eta, int ax = 0, int ay = 0) const;
    double operator()(double x, double y) const;

private:
    Mesh2D mesh_{};
    ModeSet modes_{};
    std::vector<double> coeffs_;
};

using Function1D = std::function<double(double)>;
using Function2D = std::function<double(double, double)>;

/// Local L2 projection with n_quad Gauss points per direction (default k+2).
DGField1D l2_project(const Function1D& func, const Mesh1D& mesh, int k, int n_quad = 0);
DGField2D l2_project(const Function2D& func, const Mesh2D& mesh, int k, Space space = Space::TotalDegree,
                     int n_quad = 0);

/// Coefficients of the local L2 projection onto degree <= target_degree. A
/// target of -1 is treated as 0.
std::vector<double> modal_truncate(std::span<const double> cell_coeffs, int target_degree);
std::vector<double> modal_truncate(std::span<const double> cell_coeffs, int target_degree, const ModeSet& modes);

/// One-sided value at face f of the mesh (0..n_cells). Side::Left is the
/// limit from the left (u^-), Side::Right from the right (u^+). Outside a
/// Dirichlet boundary the ghost state is the prescribed constant, whose
/// derivatives copy the interior trace.
double trace(const DGField1D& u, int face, Side side, const BoundaryKind& bc, int deriv_order = 0);
/// [[d^m u]] = u^+ - u^- at face f.
double jump(const DGField1D& u, int face, int deriv_order, const BoundaryKind& bc);
double average(const DGField1D& u, int face, const BoundaryKind& bc);

struct Norms {
    double l1 = 0.0;
    double l2 = 0.0;
    double linf = 0.0;
};

/// Unnormalized L1/L2 integrals and the max over quadrature points of
/// u_h - exact (or u_h itself when exact is empty), with k+3 points per
/// direction.
Norms norms(const DGField1D& u, const Function1D& exact = {});
Norms norms(const DGField2D& u, const Function2D& exact = {});
/// Restricted to [lo, hi]; partially covered cells are integrated over the overlap only.
Norms norms(const DGField1D& u, const Function1D& exact, double lo, double hi);

/// Integral keeps the raw integrals; DomainMean divides L1 by the measure of the
/// region and L2 by its square root. Linf is unaffected.
enum class NormScaling { Integral, DomainMean };
Norms scale_norms(Norms n, NormScaling scaling, double measure);

/// Domain integral of u_h.
double mass(const DGField1D& u);
double mass(const DGField2D& u);
/// ||u_h||_{L2} computed from the modal coefficients.
double l2_norm(const DGField1D& u);
double l2_norm(const DGField2D& u);

struct CellAverage {
    double x = 0.0;
    double y = 0.0;
    double mean = 0.0;
};

std::vector<CellAverage> cell_averages(const DGField1D& u);
std::vector<CellAverage> cell_averages(const DGField2D& u);

/// CSV with header `x,u_mean` (dim 1) or `x,y,u_mean` (dim 2), 17 significant digits.
void write_cell_averages_csv(std::ostream& out, const std::vector<CellAverage>& averages, int dim);

} // namespace ofldg
